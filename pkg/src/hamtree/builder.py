"""Level-by-level construction of the uniform superposition of n-vertex cycles."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .encoding import edge_count
from .errors import CapacityExceeded
from .mapping import apply_um, apply_um_aux, apply_um_dagger
from .qstate import (
    MAX_VERTICES,
    SparseState,
    attach_ancilla_uniform,
    attach_ancilla_zero,
    detach_zero_ancilla,
    initial_state,
    project_ancilla_zero,
    project_aux_one,
    with_aux,
)

__all__ = [
    "DEFAULT_BUDGET",
    "LevelRecord",
    "ProbabilityLedger",
    "expand_level",
    "build_superposition",
    "peak_live_terms",
    "expected_measurement_cost",
    "sample_repetitions",
    "reverse_level",
    "phase_scramble_then_expand",
]

DEFAULT_BUDGET = 10**7
VARIANTS = ("projector", "aux")
ANCILLA_MODES = ("reuse", "retain")


@dataclass(frozen=True)
class LevelRecord:
    m: int
    p: Fraction
    terms_before: int
    terms_after: int

    @property
    def expected_repetitions(self) -> Fraction:
        return 1 / self.p

    def to_json_obj(self):
        return {
            "m": self.m,
            "p": str(self.p),
            "expected_repetitions": str(self.expected_repetitions),
            "terms_before": self.terms_before,
            "terms_after": self.terms_after,
        }


@dataclass
class ProbabilityLedger:
    """Per-level post-selection record, plus ancilla and gate accounting.

    ``retained`` lists the ancilla widths kept in retain mode.  Each of those
    registers was post-selected onto all-zeros, so its width is all there is
    to store.
    """

    n: int
    ancilla_mode: str = "reuse"
    entries: list[LevelRecord] = field(default_factory=list)
    retained: list[int] = field(default_factory=list)
    sub_op_applications: int = 0

    def record(self, rec: LevelRecord):
        self.entries.append(rec)
        width = edge_count(rec.m)
        self.sub_op_applications += width
        if self.ancilla_mode == "retain":
            self.retained.append(width)

    @property
    def probabilities(self) -> list[Fraction]:
        return [e.p for e in self.entries]

    def levels_ok(self) -> bool:
        return all(e.p == Fraction(2, e.m - 1) for e in self.entries)

    @property
    def ancilla_bits_consumed(self) -> int:
        return sum(edge_count(e.m) for e in self.entries)

    @property
    def live_label_bits(self) -> int:
        """Widest simultaneous label: the path register plus live ancillae."""
        widths = [edge_count(e.m) for e in self.entries] or [0]
        if self.ancilla_mode == "retain":
            return edge_count(self.n) + sum(widths)
        return edge_count(self.n) + max(widths)

    def to_json_obj(self):
        return [e.to_json_obj() for e in self.entries]


def expand_level(s: SparseState, m: int, variant: str = "projector", trace=None):
    """Attach a uniform ancilla, apply U_m, post-select.  Returns (state, p)."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if s.level != m:
        raise ValueError(f"state is at level {s.level}, not {m}")
    wide = attach_ancilla_uniform(s, m)
    if variant == "projector":
        return _swap(project_ancilla_zero(apply_um(wide, m, trace)))
    p, post = project_aux_one(apply_um_aux(with_aux(wide), m, trace))
    return detach_zero_ancilla(post), p


def _swap(pair):
    p, s = pair
    return s, p


def peak_live_terms(n: int) -> int:
    """Largest term count held during a build from the 3-cycle to n vertices."""
    peak = 1
    for m in range(3, n):
        peak = max(peak, math.factorial(m - 1) // 2 * edge_count(m))
    return max(peak, math.factorial(n - 1) // 2)


def build_superposition(n: int, variant: str = "projector", *, ancilla_mode: str = "reuse",
                        budget: int = DEFAULT_BUDGET, upto: int | None = None, trace=None):
    """Uniform superposition of all (n-1)!/2 cycles on n vertices.

    With ``upto`` the build stops at that level, still in an n-vertex
    register.  Returns ``(state, ledger)``.
    """
    if n < 3:
        raise ValueError("need at least 3 vertices")
    top = n if upto is None else upto
    if not 3 <= top <= n:
        raise ValueError(f"level {top} outside 3..{n}")
    if ancilla_mode not in ANCILLA_MODES:
        raise ValueError(f"unknown ancilla mode {ancilla_mode!r}")
    peak = peak_live_terms(top)
    if peak > budget:
        raise CapacityExceeded(f"level {top} needs {peak} live terms, budget is {budget}")
    if n > MAX_VERTICES:
        raise CapacityExceeded(f"n={n} exceeds the {MAX_VERTICES}-vertex label width")
    ledger = ProbabilityLedger(n, ancilla_mode)
    s = initial_state(n)
    for m in range(3, top):
        before = len(s)
        s, p = expand_level(s, m, variant, trace)
        ledger.record(LevelRecord(m, p, before, len(s)))
    return s, ledger


def expected_measurement_cost(n: int) -> Fraction:
    """Sum of (m-1)/2 over m = 4..n, in units of one ancilla measurement."""
    if n < 4:
        raise ValueError("cost is defined for n >= 4")
    return sum((Fraction(m - 1, 2) for m in range(4, n + 1)), Fraction(0))


def sample_repetitions(p: Fraction, trials: int, seed) -> np.ndarray:
    """Repetitions until first success, each attempt succeeding with exact p.

    Attempts are integer draws ``u < numerator`` with ``u`` uniform on
    ``[0, denominator)``.  ``seed`` is an unsigned 64-bit int or a Generator.
    """
    p = Fraction(p)
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    if isinstance(seed, int) and not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    rng = np.random.default_rng(seed)
    counts = np.zeros(trials, dtype=np.int64)
    pending = np.arange(trials)
    while pending.size:
        counts[pending] += 1
        hit = rng.integers(0, p.denominator, size=pending.size) < p.numerator
        pending = pending[~hit]
    return counts


def reverse_level(s: SparseState, m: int, trace=None) -> SparseState:
    """Attach a zero ancilla to a level-(m+1) state and apply U_m^dagger."""
    if s.level != m + 1:
        raise ValueError(f"state is at level {s.level}, not {m + 1}")
    return apply_um_dagger(attach_ancilla_zero(s, m), m, trace)


def phase_scramble_then_expand(s: SparseState, m: int, signs, variant: str = "projector"):
    signs = np.asarray(signs, dtype=np.int64)
    if signs.shape != s.coeffs.shape or not np.all(np.abs(signs) == 1):
        raise ValueError("need one +1/-1 sign per term")
    return expand_level(s.replace(coeffs=s.coeffs * signs), m, variant)
