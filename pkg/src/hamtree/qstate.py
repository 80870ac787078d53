"""Sparse, exact state vectors over (path, ancilla, aux) basis labels.

A state stores signed integer coefficients ``c``; the physical amplitude of a
term is ``c / sqrt(sum(c**2))``.  Permutation gates, uniform tensoring and
projection are all closed over this representation, so no floating point
enters the computation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .encoding import edge_count, from_bits, to_bits
from .errors import CapacityExceeded, ZeroProbability

__all__ = [
    "BasisLabel",
    "SparseState",
    "MAX_VERTICES",
    "initial_state",
    "attach_ancilla_uniform",
    "attach_ancilla_zero",
    "with_aux",
    "detach_zero_ancilla",
    "project_ancilla_zero",
    "project_aux_one",
    "inner_product",
]

# path labels are packed into uint64
MAX_VERTICES = 11


class BasisLabel(NamedTuple):
    path: int
    ancilla: int = 0
    aux: int | None = None


def _exact_sum_sq(c: np.ndarray) -> int:
    if c.size == 0:
        return 0
    peak = int(np.max(np.abs(c)))
    if peak * peak * c.size < 2**62:
        return int(np.dot(c, c))
    return sum(int(x) * int(x) for x in c)


def _ro(a):
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SparseState:
    """Immutable sparse state.

    ``level`` is the cycle level of the all-zero-ancilla sector; after
    ``U_m`` it reads ``m + 1`` while ``ancilla_width`` is still ``m(m-1)/2``.
    """

    n: int
    level: int
    ancilla_width: int
    paths: np.ndarray
    ancillas: np.ndarray
    coeffs: np.ndarray
    aux: np.ndarray | None = None

    def __post_init__(self):
        paths = np.asarray(self.paths, dtype=np.uint64)
        ancs = np.asarray(self.ancillas, dtype=np.uint64)
        coeffs = np.asarray(self.coeffs, dtype=np.int64)
        if not (paths.shape == ancs.shape == coeffs.shape) or paths.ndim != 1:
            raise ValueError("label and coefficient arrays must be 1-d and equally long")
        if self.aux is not None:
            aux = np.asarray(self.aux, dtype=np.uint8)
            if aux.shape != paths.shape:
                raise ValueError("aux array length mismatch")
            object.__setattr__(self, "aux", _ro(aux))
        if edge_count(self.n) > 64 or self.ancilla_width > 64:
            raise CapacityExceeded(f"n={self.n} does not fit 64-bit labels")
        object.__setattr__(self, "paths", _ro(paths))
        object.__setattr__(self, "ancillas", _ro(ancs))
        object.__setattr__(self, "coeffs", _ro(coeffs))

    # construction -------------------------------------------------------------

    @classmethod
    def from_terms(cls, n, level, ancilla_width, terms, *, aux=False):
        """Build from ``{BasisLabel | (path, ancilla[, aux]): c}``; duplicates add."""
        acc: dict[tuple, int] = {}
        for label, c in dict(terms).items():
            label = BasisLabel(*label) if isinstance(label, tuple) else BasisLabel(label)
            key = (label.path, label.ancilla, (label.aux or 0) if aux else None)
            acc[key] = acc.get(key, 0) + int(c)
        items = sorted((k, c) for k, c in acc.items() if c != 0)
        return cls(
            n, level, ancilla_width,
            np.array([k[0] for k, _ in items], dtype=np.uint64),
            np.array([k[1] for k, _ in items], dtype=np.uint64),
            np.array([c for _, c in items], dtype=np.int64),
            np.array([k[2] for k, _ in items], dtype=np.uint8) if aux else None,
        )

    def replace(self, **changes) -> "SparseState":
        fields = dict(n=self.n, level=self.level, ancilla_width=self.ancilla_width,
                      paths=self.paths, ancillas=self.ancillas, coeffs=self.coeffs,
                      aux=self.aux)
        fields.update(changes)
        return SparseState(**fields)

    def select(self, keep: np.ndarray, **changes) -> "SparseState":
        return self.replace(
            paths=self.paths[keep], ancillas=self.ancillas[keep], coeffs=self.coeffs[keep],
            aux=None if self.aux is None else self.aux[keep], **changes)

    # inspection -----------------------------------------------------------------

    def __len__(self):
        return self.paths.shape[0]

    @property
    def E(self) -> int:
        return edge_count(self.n)

    @property
    def norm_sq(self) -> int:
        return _exact_sum_sq(self.coeffs)

    def labels(self) -> list[BasisLabel]:
        aux = [None] * len(self) if self.aux is None else [int(a) for a in self.aux]
        return [BasisLabel(int(p), int(a), x)
                for p, a, x in zip(self.paths, self.ancillas, aux)]

    def as_dict(self) -> dict[BasisLabel, int]:
        return dict(zip(self.labels(), (int(c) for c in self.coeffs)))

    def path_set(self) -> frozenset[int]:
        return frozenset(int(p) for p in self.paths)

    def amplitudes(self) -> np.ndarray:
        """Floating-point amplitudes, for export only."""
        return self.coeffs / np.sqrt(float(self.norm_sq))

    def same_register(self, other: "SparseState") -> bool:
        return (self.n == other.n and self.ancilla_width == other.ancilla_width
                and (self.aux is None) == (other.aux is None))

    def __eq__(self, other):
        if not isinstance(other, SparseState):
            return NotImplemented
        return (self.same_register(other) and self.level == other.level
                and self.as_dict() == other.as_dict())

    __hash__ = None

    # serialization ----------------------------------------------------------------

    def to_json_obj(self) -> dict:
        rows = []
        aux = self.aux
        for t in range(len(self)):
            row = {
                "path": to_bits(int(self.paths[t]), self.E),
                "ancilla": to_bits(int(self.ancillas[t]), self.ancilla_width),
            }
            if aux is not None:
                row["aux"] = int(aux[t])
            row["c"] = int(self.coeffs[t])
            rows.append(row)
        rows.sort(key=lambda r: (r["ancilla"], r["path"]))
        return {
            "n": self.n,
            "level": self.level,
            "ancilla_width": self.ancilla_width,
            "terms": rows,
            "norm_sq": self.norm_sq,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_obj(), **kw)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SparseState":
        n = int(obj["n"])
        width = int(obj["ancilla_width"])
        rows = obj["terms"]
        has_aux = any("aux" in r for r in rows)
        terms = {}
        for r in rows:
            if len(r["path"]) != edge_count(n) or len(r["ancilla"]) != width:
                raise ValueError("term width does not match header")
            terms[BasisLabel(from_bits(r["path"]), from_bits(r["ancilla"]),
                             int(r.get("aux", 0)))] = int(r["c"])
        state = cls.from_terms(n, int(obj["level"]), width, terms, aux=has_aux)
        if "norm_sq" in obj and int(obj["norm_sq"]) != state.norm_sq:
            raise ValueError("norm_sq does not match terms")
        return state

    @classmethod
    def from_json(cls, text: str) -> "SparseState":
        return cls.from_json_obj(json.loads(text))


def initial_state(n: int) -> SparseState:
    """The only 3-cycle, edges (2,1), (3,1), (3,2), in an n-vertex register."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    if n > MAX_VERTICES:
        raise CapacityExceeded(f"n={n} exceeds the {MAX_VERTICES}-vertex label width")
    return SparseState(n, 3, 0, np.array([0b111], dtype=np.uint64),
                       np.zeros(1, dtype=np.uint64), np.ones(1, dtype=np.int64))


def _require_detached(s: SparseState):
    if s.ancilla_width != 0:
        raise ValueError("state already carries an ancilla register")


def attach_ancilla_uniform(s: SparseState, m: int) -> SparseState:
    """Tensor with the equal superposition of the unit ancilla states u_1..u_L."""
    _require_detached(s)
    L = edge_count(m)
    if L > s.E:
        raise ValueError(f"level {m} ancilla is wider than the path register")
    units = np.uint64(1) << np.arange(L, dtype=np.uint64)
    return s.replace(
        ancilla_width=L,
        paths=np.repeat(s.paths, L),
        ancillas=np.tile(units, len(s)),
        coeffs=np.repeat(s.coeffs, L),
        aux=None if s.aux is None else np.repeat(s.aux, L),
    )


def attach_ancilla_zero(s: SparseState, m: int) -> SparseState:
    """Tensor with a fresh all-zero ancilla of width m(m-1)/2."""
    _require_detached(s)
    return s.replace(ancilla_width=edge_count(m),
                     ancillas=np.zeros(len(s), dtype=np.uint64))


def with_aux(s: SparseState) -> SparseState:
    """Add an aux bit, initialised to 0, to every term."""
    if s.aux is not None:
        raise ValueError("state already carries an aux bit")
    return s.replace(aux=np.zeros(len(s), dtype=np.uint8))


def detach_zero_ancilla(s: SparseState) -> SparseState:
    if np.any(s.ancillas != 0):
        raise ValueError("ancilla is not all-zero on every term")
    return s.replace(ancilla_width=0)


def _project(s: SparseState, keep: np.ndarray, what: str, **changes):
    total = s.norm_sq
    kept = _exact_sum_sq(s.coeffs[keep])
    if kept == 0:
        raise ZeroProbability(f"no term has {what}")
    return Fraction(kept, total), s.select(keep, **changes)


def project_ancilla_zero(s: SparseState) -> tuple[Fraction, SparseState]:
    """Post-select the all-zero ancilla outcome and detach the register."""
    if s.ancilla_width == 0:
        raise ValueError("no ancilla attached")
    return _project(s, s.ancillas == 0, "an all-zero ancilla", ancilla_width=0)


def project_aux_one(s: SparseState) -> tuple[Fraction, SparseState]:
    """Post-select aux = 1 and drop the aux bit; the ancilla stays attached."""
    if s.aux is None:
        raise ValueError("state carries no aux bit")
    p, post = _project(s, s.aux == 1, "aux = 1")
    return p, post.replace(aux=None)


def inner_product(a: SparseState, b: SparseState) -> Fraction:
    """Signed square of the normalised overlap: sign(x) * x**2 for x = <a|b>."""
    if not a.same_register(b):
        raise ValueError("register widths differ")
    da = a.as_dict()
    overlap = sum(c * da[lab] for lab, c in b.as_dict().items() if lab in da)
    sign = (overlap > 0) - (overlap < 0)
    return sign * Fraction(overlap * overlap, a.norm_sq * b.norm_sq)
