"""Brute-force ground truth: cycle enumeration, tour weights, exhaustive TSP.

Enumeration walks vertex permutations and never touches the tree
construction, so comparing it with a built superposition is a real check.
"""
from __future__ import annotations

import csv
import io
import json
import math
from itertools import permutations
from pathlib import Path

import numpy as np

from . import _kernels
from .encoding import decode_cycle, edge_count, to_bits
from .errors import CapacityExceeded

__all__ = [
    "MAX_ENUMERATION",
    "WeightMatrix",
    "WeightFormatError",
    "enumerate_cycles",
    "tour_weight",
    "sequence_weight",
    "min_tour",
]

MAX_ENUMERATION = 10


def _bit(a: int, b: int) -> int:
    hi, lo = (a, b) if a > b else (b, a)
    return 1 << ((hi - 1) * (hi - 2) // 2 + lo - 1)


def enumerate_cycles(m: int) -> frozenset[int]:
    """All (m-1)!/2 Hamiltonian cycles on 1..m as edge masks."""
    if m < 3:
        raise ValueError("need at least 3 vertices")
    if m > MAX_ENUMERATION:
        raise CapacityExceeded(f"enumeration capped at m={MAX_ENUMERATION}")
    out = set()
    for rest in permutations(range(2, m + 1)):
        # each undirected cycle appears twice with vertex 1 fixed; keep one
        if rest[0] > rest[-1]:
            continue
        tour = (1,) + rest
        mask = 0
        for a, b in zip(tour, tour[1:] + tour[:1]):
            mask |= _bit(a, b)
        out.add(mask)
    return frozenset(out)


class WeightFormatError(ValueError):
    pass


class WeightMatrix:
    """Symmetric integer weights with zero diagonal, vertices 1..n."""

    def __init__(self, w):
        rows = [list(r) for r in w]
        n = len(rows)
        if n < 3:
            raise WeightFormatError("need at least 3 vertices")
        for r, row in enumerate(rows, start=1):
            if len(row) != n:
                raise WeightFormatError(f"line {r}: expected {n} entries, got {len(row)}")
            for c, x in enumerate(row, start=1):
                if isinstance(x, bool) or int(x) != x:
                    raise WeightFormatError(f"line {r}, column {c}: {x!r} is not an integer")
        for r in range(n):
            if rows[r][r] != 0:
                raise WeightFormatError(
                    f"line {r + 1}, column {r + 1}: diagonal entry {rows[r][r]} is not 0")
            for c in range(r):
                if rows[r][c] != rows[c][r]:
                    raise WeightFormatError(
                        f"line {r + 1}, column {c + 1}: {rows[r][c]} differs from "
                        f"{rows[c][r]} at line {c + 1}, column {r + 1}")
        self.n = n
        self.w = np.array(rows, dtype=np.int64)
        self.w.setflags(write=False)

    def __call__(self, i: int, k: int) -> int:
        return int(self.w[i - 1, k - 1])

    def position_weights(self) -> np.ndarray:
        """Weight of the edge at each bit position, 0-based."""
        out = np.empty(edge_count(self.n), dtype=np.int64)
        for hi in range(2, self.n + 1):
            for lo in range(1, hi):
                out[(hi - 1) * (hi - 2) // 2 + lo - 1] = self.w[hi - 1, lo - 1]
        return out

    @classmethod
    def random(cls, n: int, rng, low: int = 1, high: int = 100) -> "WeightMatrix":
        upper = np.triu(rng.integers(low, high, size=(n, n)), 1)
        return cls((upper + upper.T).tolist())

    @classmethod
    def from_csv(cls, text: str) -> "WeightMatrix":
        rows = []
        for r, row in enumerate(csv.reader(io.StringIO(text)), start=1):
            if not row or all(not x.strip() for x in row):
                continue
            parsed = []
            for c, x in enumerate(row, start=1):
                try:
                    parsed.append(int(x.strip()))
                except ValueError:
                    raise WeightFormatError(f"line {r}, column {c}: {x.strip()!r} is not an integer")
            rows.append(parsed)
        return cls(rows)

    @classmethod
    def from_json(cls, text: str) -> "WeightMatrix":
        obj = json.loads(text)
        wm = cls(obj["weights"])
        if "n" in obj and int(obj["n"]) != wm.n:
            raise WeightFormatError(f"header n={obj['n']} but matrix has {wm.n} rows")
        return wm

    @classmethod
    def load(cls, path) -> "WeightMatrix":
        path = Path(path)
        text = path.read_text()
        if path.suffix.lower() == ".json":
            return cls.from_json(text)
        return cls.from_csv(text)


def tour_weight(mask: int, w: WeightMatrix) -> int:
    """Sum of edge weights over the set bits of a valid cycle mask."""
    tour = decode_cycle(mask, bin(mask).count("1"))
    if max(tour) > w.n:
        raise ValueError("tour uses vertices outside the weight matrix")
    pw = w.position_weights()
    return int(sum(pw[b] for b in _set_bits(mask)))


def _set_bits(mask: int) -> list[int]:
    return [b for b in range(mask.bit_length()) if (mask >> b) & 1]


def sequence_weight(tour, w: WeightMatrix) -> int:
    """Closed-tour weight from a vertex sequence: last->first plus consecutive pairs."""
    tour = list(tour)
    total = w(tour[-1], tour[0])
    for a, b in zip(tour, tour[1:]):
        total += w(a, b)
    return total


def _lex_key(mask: int, E: int) -> str:
    return to_bits(mask, E)


def min_tour(w: WeightMatrix, source: str = "exhaustive", state=None) -> tuple[int, int]:
    """Minimum-weight cycle mask and its weight.

    Ties go to the lexicographically smallest mask in position-1-first bit
    order.  ``source="state"`` scores the path masks of a full-level state.
    """
    E = edge_count(w.n)
    if source == "exhaustive":
        if w.n > MAX_ENUMERATION:
            raise CapacityExceeded(f"exhaustive search capped at n={MAX_ENUMERATION}")
        masks = sorted(enumerate_cycles(w.n))
        pw = w.position_weights()
        weights = [sum(int(pw[b]) for b in _set_bits(mk)) for mk in masks]
    elif source == "state":
        if state is None:
            raise ValueError("source='state' needs a state")
        if state.n != w.n or state.level != w.n:
            raise ValueError(f"state is not a full level-{w.n} superposition")
        masks = [int(p) for p in state.paths]
        weights = _kernels.mask_weights(state.paths, w.position_weights()).tolist()
    else:
        raise ValueError(f"unknown source {source!r}")
    best = min(zip(weights, masks), key=lambda t: (t[0], _lex_key(t[1], E)))
    return best[1], int(best[0])


def cycle_count(m: int) -> int:
    return math.factorial(m - 1) // 2
