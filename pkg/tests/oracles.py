"""Reference computations for the tests, written without the package's kernels."""
import math


def insert_children(edges, m):
    """Children of a cycle (a set of (hi, lo) edges) when vertex m+1 is spliced
    into each edge in turn.  Returns {broken edge: child edge set}."""
    out = {}
    for (a, b) in edges:
        child = set(edges) - {(a, b)}
        child |= {(m + 1, b), (m + 1, a)}
        out[(a, b)] = frozenset(child)
    return out


def edge_position(a, b):
    hi, lo = max(a, b), min(a, b)
    return (hi - 1) * (hi - 2) // 2 + lo


def edges_of(mask):
    out = set()
    for hi in range(2, 20):
        for lo in range(1, hi):
            if mask >> (edge_position(hi, lo) - 1) & 1:
                out.add((hi, lo))
    return out


def mask_of(edges):
    return sum(1 << (edge_position(a, b) - 1) for a, b in edges)


def unit_ancilla_outcome_counts(cycles, m):
    """(fired, unfired) counts over all (unit ancilla l, cycle) pairs."""
    width = m * (m - 1) // 2
    fired = sum(1 for mask in cycles for l in range(width) if mask >> l & 1)
    return fired, len(cycles) * width - fired


def cycle_count(m):
    return math.factorial(m - 1) // 2
