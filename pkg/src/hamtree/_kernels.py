"""Hot loops over basis-label arrays.

Every kernel has a numba and a pure-numpy implementation with identical
results.  Set ``HAMTREE_DISABLE_NUMBA=1`` to force the numpy path (useful for
debugging, and when numba is unavailable it is used automatically).
"""
import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("HAMTREE_DISABLE_NUMBA", "0") in ("", "0")

__all__ = ["USE_NUMBA", "apply_subops", "mask_weights", "backend_name"]


def backend_name():
    return "numba" if USE_NUMBA else "numpy"


# sub-op permutation -------------------------------------------------------------
#
# op s touches path bits (l, i, i') and ancilla bit l, given as uint64 masks:
#   edge_masks[s] = bit l, pair_masks[s] = bits i | i'
# forward: anc{l}=1, path{l}=1, path{i}=path{i'}=0  -> flip all four
# reverse: anc{l}=0, path{l}=0, path{i}=path{i'}=1  -> flip all four

def _apply_subops_numpy(paths, ancs, edge_masks, pair_masks):
    paths = paths.copy()
    ancs = ancs.copy()
    k = edge_masks.shape[0]
    fwd = np.zeros(k, dtype=np.int64)
    rev = np.zeros(k, dtype=np.int64)
    for s in range(k):
        lm = edge_masks[s]
        pm = pair_masks[s]
        touched = paths & (lm | pm)
        anc_set = (ancs & lm) != 0
        f = anc_set & (touched == lm)
        r = ~anc_set & (touched == pm)
        hit = f | r
        paths[hit] ^= lm | pm
        ancs[hit] ^= lm
        fwd[s] = np.count_nonzero(f)
        rev[s] = np.count_nonzero(r)
    return paths, ancs, fwd, rev


def _mask_weights_numpy(paths, pos_weights):
    out = np.zeros(paths.shape[0], dtype=np.int64)
    for b in range(pos_weights.shape[0]):
        bit = ((paths >> np.uint64(b)) & np.uint64(1)).astype(bool)
        out[bit] += pos_weights[b]
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _apply_subops_numba(paths, ancs, edge_masks, pair_masks):
        n = paths.shape[0]
        k = edge_masks.shape[0]
        out_p = np.empty_like(paths)
        out_a = np.empty_like(ancs)
        fwd = np.zeros(k, dtype=np.int64)
        rev = np.zeros(k, dtype=np.int64)
        zero = np.uint64(0)
        for t in range(n):
            p = paths[t]
            a = ancs[t]
            for s in range(k):
                lm = edge_masks[s]
                pm = pair_masks[s]
                touched = p & (lm | pm)
                if (a & lm) != zero:
                    if touched == lm:
                        p ^= lm | pm
                        a ^= lm
                        fwd[s] += 1
                elif touched == pm:
                    p ^= lm | pm
                    a ^= lm
                    rev[s] += 1
            out_p[t] = p
            out_a[t] = a
        return out_p, out_a, fwd, rev

    @njit(cache=True)
    def _mask_weights_numba(paths, pos_weights):
        n = paths.shape[0]
        E = pos_weights.shape[0]
        out = np.zeros(n, dtype=np.int64)
        one = np.uint64(1)
        for t in range(n):
            p = paths[t]
            acc = 0
            for b in range(E):
                if (p >> np.uint64(b)) & one:
                    acc += pos_weights[b]
            out[t] = acc
        return out

else:  # pragma: no cover
    _apply_subops_numba = _apply_subops_numpy
    _mask_weights_numba = _mask_weights_numpy


def apply_subops(paths, ancs, edge_masks, pair_masks, *, use_numba=None):
    """Apply the sub-ops in array order to every label.

    Returns new ``(paths, ancs)`` plus per-op forward and reverse fire counts.
    """
    paths = np.ascontiguousarray(paths, dtype=np.uint64)
    ancs = np.ascontiguousarray(ancs, dtype=np.uint64)
    edge_masks = np.ascontiguousarray(edge_masks, dtype=np.uint64)
    pair_masks = np.ascontiguousarray(pair_masks, dtype=np.uint64)
    if use_numba is None:
        use_numba = USE_NUMBA
    impl = _apply_subops_numba if use_numba else _apply_subops_numpy
    return impl(paths, ancs, edge_masks, pair_masks)


def mask_weights(paths, pos_weights, *, use_numba=None):
    """Sum ``pos_weights[b]`` over the set bits ``b`` of each path mask."""
    paths = np.ascontiguousarray(paths, dtype=np.uint64)
    pos_weights = np.ascontiguousarray(pos_weights, dtype=np.int64)
    if use_numba is None:
        use_numba = USE_NUMBA
    impl = _mask_weights_numba if use_numba else _mask_weights_numpy
    return impl(paths, pos_weights)
