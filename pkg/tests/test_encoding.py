from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from hamtree.encoding import (
    EdgeIndexer,
    decode_cycle,
    edge_count,
    edge_to_index,
    encode_cycle,
    from_bits,
    from_hex,
    from_ket,
    index_to_edge,
    mask_from_positions,
    positions,
    to_bits,
    to_hex,
    to_ket,
)
from hamtree.errors import NotACycle


def brute_force_order(n):
    """Edges sorted by (higher vertex, lower vertex)."""
    return sorted(((i, k) for i in range(1, n + 1) for k in range(1, i)))


@pytest.mark.parametrize("edge, l", [((2, 1), 1), ((3, 2), 3), ((4, 1), 4)])
def test_edge_to_index_examples(edge, l):
    assert edge_to_index(*edge) == l


@pytest.mark.parametrize("l, edge", [(1, (2, 1)), (6, (4, 3))])
def test_index_to_edge_examples(l, edge):
    assert index_to_edge(l) == edge


def test_index_five_matches_brute_force_order():
    order = brute_force_order(5)
    assert order[5 - 1] == (4, 2)
    assert index_to_edge(5) == (4, 2)


@pytest.mark.parametrize("n", [3, 5, 9])
def test_order_matches_brute_force(n):
    assert EdgeIndexer(n).edges() == brute_force_order(n)


@pytest.mark.parametrize("bad", [(2, 2), (3, 4), (2, 0)])
def test_edge_to_index_rejects(bad):
    with pytest.raises(ValueError):
        edge_to_index(*bad)


def test_range_checks_against_n():
    ix = EdgeIndexer(4)
    assert ix.E == 6
    with pytest.raises(ValueError):
        ix.edge_to_index(5, 1)
    with pytest.raises(ValueError):
        ix.index_to_edge(7)
    with pytest.raises(ValueError):
        index_to_edge(0)


def test_round_trip_up_to_50():
    for n in range(3, 51):
        ix = EdgeIndexer(n)
        for l in range(1, ix.E + 1):
            assert ix.edge_to_index(*ix.index_to_edge(l)) == l


def test_decode_examples():
    assert decode_cycle(mask_from_positions([1, 2, 3]), 3) == (1, 2, 3)
    assert decode_cycle(mask_from_positions([2, 3, 4, 5]), 4) == (1, 3, 2, 4)
    with pytest.raises(NotACycle, match="vertex 1 has degree 3"):
        decode_cycle(mask_from_positions([1, 2, 3, 4]), 4)


def test_decode_rejects_split_and_out_of_level():
    # two triangles on 1..6
    two = encode_cycle((1, 2, 3)) | mask_from_positions(
        [edge_to_index(5, 4), edge_to_index(6, 4), edge_to_index(6, 5)])
    with pytest.raises(NotACycle):
        decode_cycle(two, 6)
    with pytest.raises(NotACycle):
        decode_cycle(mask_from_positions([1, 2, 7]), 3)


def test_encode_examples():
    assert positions(encode_cycle((1, 2, 3))) == [1, 2, 3]
    assert positions(encode_cycle((1, 3, 2, 4))) == [2, 3, 4, 5]
    expected = {edge_to_index(2, 1), edge_to_index(4, 2), edge_to_index(4, 3), edge_to_index(3, 1)}
    assert expected == {1, 5, 6, 2}
    assert set(positions(encode_cycle((1, 2, 4, 3)))) == expected


@pytest.mark.parametrize("bad", [(1, 2), (1, 2, 2), (1, 2, 5)])
def test_encode_rejects(bad):
    with pytest.raises(ValueError):
        encode_cycle(bad)


def equivalent(a, b):
    m = len(a)
    rots = [tuple(b[i:] + b[:i]) for i in range(m)]
    rev = tuple(reversed(b))
    rots += [tuple(rev[i:] + rev[:i]) for i in range(m)]
    return tuple(a) in rots


@given(st.integers(3, 8).flatmap(lambda m: st.permutations(list(range(1, m + 1)))))
def test_decode_encode_round_trip(tour):
    mask = encode_cycle(tour)
    m = len(tour)
    assert len(positions(mask)) == m
    assert max(positions(mask)) <= edge_count(m)
    back = decode_cycle(mask, m)
    assert equivalent(back, list(tour))
    assert back[1] < back[-1]


def test_all_tours_m6_decode_to_one_canonical_form():
    seen = {}
    for perm in permutations(range(2, 7)):
        tour = (1,) + perm
        seen.setdefault(encode_cycle(tour), set()).add(decode_cycle(encode_cycle(tour), 6))
    assert len(seen) == 60
    assert all(len(v) == 1 for v in seen.values())


def test_ket_and_bits():
    mask = encode_cycle((1, 2, 3))
    assert to_ket(mask, 4) == "1 11 000"
    assert to_bits(mask, 10) == "1110000000"
    assert from_ket("0 11 110") == (mask_from_positions([2, 3, 4, 5]), 4)
    assert from_bits("111000") == mask
    with pytest.raises(ValueError):
        from_ket("1 1 000")
    with pytest.raises(ValueError):
        to_bits(1 << 6, 6)


@given(st.integers(3, 11).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, (1 << edge_count(n)) - 1))))
def test_serialization_round_trips(case):
    n, mask = case
    assert from_ket(to_ket(mask, n)) == (mask, n)
    assert from_hex(to_hex(mask, n)) == (mask, n)
    assert from_bits(to_bits(mask, edge_count(n))) == mask


def test_hex_form():
    assert to_hex(0b111, 4) == "4:7"
    with pytest.raises(ValueError):
        from_hex("3:ff")
