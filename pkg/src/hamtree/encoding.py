"""Edge-bitmask coding of cycles on vertices 1..n.

Edge ``(i, k)`` with ``i > k`` occupies bit position ``l = (i-1)(i-2)/2 + k``
(1-based).  Positions are grouped by the higher vertex and ordered by the
lower one inside each group: (2,1), (3,1), (3,2), (4,1), ...

Masks are plain Python ints; position ``l`` lives in bit ``l - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotACycle

__all__ = [
    "EdgeIndexer",
    "edge_count",
    "edge_to_index",
    "index_to_edge",
    "positions",
    "mask_from_positions",
    "decode_cycle",
    "encode_cycle",
    "to_bits",
    "from_bits",
    "to_ket",
    "from_ket",
    "to_hex",
    "from_hex",
]


def edge_count(n: int) -> int:
    """Number of edges of the complete graph on ``n`` vertices."""
    return n * (n - 1) // 2


def edge_to_index(i: int, k: int, n: int | None = None) -> int:
    if not (1 <= k < i):
        raise ValueError(f"edge ({i},{k}) must satisfy 1 <= k < i")
    if n is not None and i > n:
        raise ValueError(f"edge ({i},{k}) has a vertex above n={n}")
    return (i - 1) * (i - 2) // 2 + k


def index_to_edge(l: int, n: int | None = None) -> tuple[int, int]:
    """Inverse of :func:`edge_to_index` by accumulating 1 + 2 + ... until >= l."""
    if l < 1 or (n is not None and l > edge_count(n)):
        raise ValueError(f"bit position {l} out of range")
    total = 0
    terms = 0
    while total < l:
        terms += 1
        total += terms
    return terms + 1, l - (total - terms)


@dataclass(frozen=True)
class EdgeIndexer:
    """Range-checked index/edge bijection for a fixed vertex count."""

    n: int
    E: int = field(init=False)

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("need at least 3 vertices")
        object.__setattr__(self, "E", edge_count(self.n))

    def edge_to_index(self, i: int, k: int) -> int:
        return edge_to_index(i, k, self.n)

    def index_to_edge(self, l: int) -> tuple[int, int]:
        return index_to_edge(l, self.n)

    def edges(self):
        return [index_to_edge(l) for l in range(1, self.E + 1)]


def positions(mask: int) -> list[int]:
    """1-based positions of the set bits, ascending."""
    out = []
    l = 1
    while mask:
        if mask & 1:
            out.append(l)
        mask >>= 1
        l += 1
    return out


def mask_from_positions(pos) -> int:
    mask = 0
    for l in pos:
        if l < 1:
            raise ValueError(f"bit position {l} out of range")
        mask |= 1 << (l - 1)
    return mask


def decode_cycle(mask: int, m: int) -> tuple[int, ...]:
    """Return the tour encoded by ``mask`` as a vertex sequence starting at 1.

    Orientation is canonical: the smaller neighbour of vertex 1 comes second.
    Raises :class:`NotACycle` unless the set edges form one Hamiltonian cycle
    on vertices 1..m.
    """
    if m < 3:
        raise NotACycle(f"level {m} is below 3")
    pos = positions(mask)
    if len(pos) != m:
        raise NotACycle(f"{len(pos)} edges set, expected {m}")
    if pos[-1] > edge_count(m):
        raise NotACycle(f"bit {pos[-1]} lies beyond level {m}")
    adj: dict[int, list[int]] = {v: [] for v in range(1, m + 1)}
    for l in pos:
        i, k = index_to_edge(l)
        adj[i].append(k)
        adj[k].append(i)
    for v, nb in adj.items():
        if len(nb) != 2:
            raise NotACycle(f"vertex {v} has degree {len(nb)}")
    tour = [1, min(adj[1])]
    while len(tour) < m:
        a, b = adj[tour[-1]]
        nxt = b if a == tour[-2] else a
        if nxt == 1:
            raise NotACycle(f"edge set splits into several cycles")
        tour.append(nxt)
    return tuple(tour)


def encode_cycle(tour) -> int:
    tour = tuple(int(v) for v in tour)
    m = len(tour)
    if m < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    if len(set(tour)) != m:
        raise ValueError(f"repeated vertex in tour {tour}")
    if set(tour) != set(range(1, m + 1)):
        raise ValueError(f"tour {tour} is not a permutation of 1..{m}")
    mask = 0
    for a, b in zip(tour, tour[1:] + tour[:1]):
        mask |= 1 << (edge_to_index(max(a, b), min(a, b)) - 1)
    return mask


# serialization ----------------------------------------------------------------

def to_bits(mask: int, width: int) -> str:
    """Binary string with position 1 leftmost."""
    if mask >> width:
        raise ValueError(f"mask does not fit in {width} bits")
    return "".join("1" if (mask >> b) & 1 else "0" for b in range(width))


def from_bits(s: str) -> int:
    mask = 0
    for b, ch in enumerate(s):
        if ch == "1":
            mask |= 1 << b
        elif ch != "0":
            raise ValueError(f"invalid bit character {ch!r}")
    return mask


def to_ket(mask: int, n: int) -> str:
    """Group-separated form, e.g. ``"1 11 000"`` for the 3-cycle at n=4."""
    bits = to_bits(mask, edge_count(n))
    groups = []
    start = 0
    for size in range(1, n):
        groups.append(bits[start:start + size])
        start += size
    return " ".join(groups)


def from_ket(s: str) -> tuple[int, int]:
    """Parse :func:`to_ket` output; returns ``(mask, n)``."""
    groups = s.split()
    for size, g in enumerate(groups, start=1):
        if len(g) != size:
            raise ValueError(f"group {size} has {len(g)} bits")
    return from_bits("".join(groups)), len(groups) + 1


def to_hex(mask: int, n: int) -> str:
    """Compact form ``"<n>:<hex>"`` with position 1 as the least significant bit."""
    if mask >> edge_count(n):
        raise ValueError(f"mask does not fit in n={n}")
    return f"{n}:{mask:x}"


def from_hex(s: str) -> tuple[int, int]:
    n_str, _, hex_str = s.partition(":")
    n = int(n_str)
    mask = int(hex_str, 16)
    if mask >> edge_count(n):
        raise ValueError(f"mask does not fit in n={n}")
    return mask, n
