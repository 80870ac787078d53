"""The level map U_m as an ordered product of 4-bit involutions U_m^l.

Sub-op ``l`` looks at ancilla bit ``l``, path bit ``l`` (edge ``(a, b)``) and
the two path bits of the edges ``(m+1, b)`` and ``(m+1, a)``.  When the
ancilla points at a present edge and both new edges are absent, all four bits
flip: the edge is broken and vertex m+1 is spliced in.  The mirror pattern
flips back.  Everything else is left alone, so each sub-op is a permutation
of basis labels and its own inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels
from .encoding import edge_count, edge_to_index, index_to_edge
from .qstate import BasisLabel, SparseState

__all__ = [
    "SubOpSpec",
    "sub_ops",
    "permute_labels",
    "apply_sub_op",
    "apply_um",
    "apply_um_dagger",
    "apply_um_aux",
    "matrix_element_check",
    "format_trace_line",
]


@dataclass(frozen=True)
class SubOpSpec:
    m: int
    l: int
    broken_edge: tuple[int, int]
    new_bits: tuple[int, int]

    @classmethod
    def at(cls, m: int, l: int) -> "SubOpSpec":
        if m < 3 or not 1 <= l <= edge_count(m):
            raise ValueError(f"no sub-op U[{m},{l}]")
        a, b = index_to_edge(l)
        return cls(m, l, (a, b), (edge_to_index(m + 1, b), edge_to_index(m + 1, a)))

    @property
    def edge_mask(self) -> int:
        return 1 << (self.l - 1)

    @property
    def pair_mask(self) -> int:
        i, j = self.new_bits
        return (1 << (i - 1)) | (1 << (j - 1))


def sub_ops(m: int) -> list[SubOpSpec]:
    return [SubOpSpec.at(m, l) for l in range(1, edge_count(m) + 1)]


def _masks(specs):
    return (np.array([s.edge_mask for s in specs], dtype=np.uint64),
            np.array([s.pair_mask for s in specs], dtype=np.uint64))


def permute_labels(paths, ancs, m: int, *, inverse: bool = False, specs=None):
    """Apply U_m (or its inverse) to raw label arrays.

    Returns ``(paths, ancs, fired, reversed)`` where the last two are per-sub-op
    counts in application order.
    """
    if specs is None:
        specs = sub_ops(m)
        if inverse:
            specs = specs[::-1]
    em, pm = _masks(specs)
    return _kernels.apply_subops(paths, ancs, em, pm)


def format_trace_line(spec: SubOpSpec, fired: int) -> str:
    a, b = spec.broken_edge
    i, j = spec.new_bits
    return f"U[{spec.m},{spec.l}]: break=({a},{b}) new=({i},{j}) fired={fired}"


def _check_width(s: SparseState, m: int):
    if s.ancilla_width != edge_count(m):
        raise ValueError(
            f"ancilla width {s.ancilla_width} does not match level {m} ({edge_count(m)})")
    if edge_count(m + 1) > s.E:
        raise ValueError(f"level {m + 1} does not fit an n={s.n} register")


def _run(s, m, specs, level, trace):
    _check_width(s, m)
    paths, ancs, fired, _ = permute_labels(s.paths, s.ancillas, m, specs=specs)
    if trace is not None:
        for spec, f in zip(specs, fired):
            trace(format_trace_line(spec, int(f)))
    return s.replace(paths=paths, ancillas=ancs, level=level)


def apply_sub_op(s: SparseState, spec: SubOpSpec) -> SparseState:
    return _run(s, spec.m, [spec], s.level, None)


def apply_um(s: SparseState, m: int, trace: Callable[[str], None] | None = None) -> SparseState:
    """U_m: sub-ops for l = 1, 2, ..., m(m-1)/2 in ascending order."""
    return _run(s, m, sub_ops(m), m + 1, trace)


def apply_um_dagger(s: SparseState, m: int, trace=None) -> SparseState:
    """Inverse of :func:`apply_um`: the same involutions in descending order."""
    return _run(s, m, sub_ops(m)[::-1], m, trace)


def apply_um_aux(s: SparseState, m: int, trace=None) -> SparseState:
    """Set aux to OR_l(ancilla{l} AND path{l}) on the input labels, then apply U_m."""
    if s.aux is None or np.any(s.aux != 0):
        raise ValueError("aux bit must be present and 0 on every term")
    _check_width(s, m)
    aux = ((s.paths & s.ancillas) != 0).astype(np.uint8)
    return apply_um(s.replace(aux=aux), m, trace)


def matrix_element_check(m: int, row: BasisLabel, col: BasisLabel) -> int:
    """<row| U_m |col>, which is always 0 or 1."""
    paths, ancs, _, _ = permute_labels(
        np.array([col.path], dtype=np.uint64), np.array([col.ancilla], dtype=np.uint64), m)
    return int(int(paths[0]) == row.path and int(ancs[0]) == row.ancilla)
