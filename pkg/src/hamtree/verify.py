"""Self-checks run by ``hamtree verify``; each returns a Check."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .builder import build_superposition, expand_level, reverse_level
from .encoding import decode_cycle, edge_count, to_ket
from .errors import NotACycle
from .mapping import apply_um, permute_labels
from .oracle import enumerate_cycles
from .qstate import SparseState, attach_ancilla_uniform, detach_zero_ancilla, initial_state

# tours 1-3-2-4, 1-2-3-4, 1-2-4-3 from breaking edges (2,1), (3,1), (3,2)
EXAMPLE_ONE_KETS = ("0 11 110", "1 01 101", "1 10 011")


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str

    def to_json_obj(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def example_one_kets() -> tuple[str, list[str], list[int]]:
    """U_3 on the uniform-ancilla 3-cycle: (ancilla strings, kets, coeffs)."""
    out = apply_um(attach_ancilla_uniform(initial_state(4), 3), 3)
    ancs = sorted({format(int(a), "03b") for a in out.ancillas})
    kets = sorted(to_ket(int(p), 4) for p in out.paths)
    return ancs, kets, sorted(int(c) for c in out.coeffs)


def check_example_one() -> Check:
    ancs, kets, coeffs = example_one_kets()
    ok = ancs == ["000"] and kets == sorted(EXAMPLE_ONE_KETS) and len(set(coeffs)) == 1
    return Check("example1_bit_exact", ok, f"kets={kets} ancilla={ancs}")


def register_labels(m: int):
    """Every label of the level-m register truncated to groups <= m+1."""
    E1, L = edge_count(m + 1), edge_count(m)
    keys = np.arange(1 << (E1 + L), dtype=np.uint64)
    return keys & np.uint64((1 << E1) - 1), keys >> np.uint64(E1), E1


def check_permutation_exhaustive(m: int) -> Check:
    paths, ancs, E1 = register_labels(m)
    p2, a2, _, _ = permute_labels(paths, ancs, m)
    key = p2 | (a2 << np.uint64(E1))
    bijective = np.unique(key).size == key.size and int(key.max()) < key.size
    p3, a3, _, _ = permute_labels(p2, a2, m, inverse=True)
    inverse_ok = bool(np.array_equal(p3, paths) and np.array_equal(a3, ancs))
    return Check(f"permutation_m{m}", bool(bijective and inverse_ok),
                 f"{key.size} labels, bijective={bijective}, inverse={inverse_ok}")


def random_labels(m: int, count: int, rng):
    E1, L = edge_count(m + 1), edge_count(m)
    paths = rng.integers(0, 1 << E1, size=count, dtype=np.uint64)
    ancs = rng.integers(0, 1 << L, size=count, dtype=np.uint64)
    return paths, ancs


def check_inverse_random(m: int, count: int, seed: int = 0) -> Check:
    paths, ancs = random_labels(m, count, np.random.default_rng(seed))
    p2, a2, _, _ = permute_labels(paths, ancs, m)
    p3, a3, _, _ = permute_labels(p2, a2, m, inverse=True)
    bad = int(np.count_nonzero((p3 != paths) | (a3 != ancs)))
    return Check(f"inverse_m{m}", bad == 0, f"{count} random labels, {bad} violations")


def check_aux_equivalence(s: SparseState, m: int) -> Check:
    a, pa = expand_level(s, m, "projector")
    b, pb = expand_level(s, m, "aux")
    ok = a == b and pa == pb
    return Check(f"aux_equivalence_m{m}", ok, f"p={pa} vs {pb}, {len(a)} vs {len(b)} terms")


def check_reverse(s: SparseState, m: int) -> Check:
    """U_m^dagger on a level-(m+1) state, then U_m again, restores it."""
    back = reverse_level(s, m)
    units = np.all((back.ancillas != 0) & ((back.ancillas & (back.ancillas - np.uint64(1))) == 0))
    again = detach_zero_ancilla(apply_um(back, m))
    ok = bool(units) and again == s
    return Check(f"reverse_m{m}", ok, f"{len(back)} terms, unit ancillae={bool(units)}")


def run_all(n: int, variant: str = "projector") -> list[Check]:
    if not 3 <= n <= 8:
        raise ValueError("verify supports 3 <= n <= 8")
    checks = [check_example_one()]
    state, ledger = build_superposition(n, variant)
    expected = enumerate_cycles(n)
    got = state.path_set()
    checks.append(Check("oracle_set_equality", got == expected and len(state) == len(expected),
                        f"{len(state)} terms, oracle {len(expected)}, "
                        f"(n-1)!/2={math.factorial(n - 1) // 2}"))
    coeffs = set(int(c) for c in state.coeffs)
    checks.append(Check("uniformity", len(coeffs) == 1 and min(coeffs) > 0,
                        f"coefficients {sorted(coeffs)}"))
    probs = ", ".join(f"m={e.m}: {e.p}" for e in ledger.entries) or "no levels"
    checks.append(Check("probability_law", ledger.levels_ok(), probs))
    bad = 0
    for p in state.paths:
        try:
            decode_cycle(int(p), n)
        except NotACycle:
            bad += 1
    checks.append(Check("decodes_to_cycles", bad == 0, f"{bad} invalid masks"))
    for m in range(3, n):
        if m <= 4:
            checks.append(check_permutation_exhaustive(m))
        else:
            checks.append(check_inverse_random(m, 10_000, seed=m))
    level = initial_state(n)
    for m in range(3, n):
        if m >= 4:
            checks.append(check_aux_equivalence(level, m))
        nxt, _ = expand_level(level, m)
        checks.append(check_reverse(nxt, m))
        level = nxt
    return checks
