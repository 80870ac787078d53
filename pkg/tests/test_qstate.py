from fractions import Fraction

import numpy as np
import pytest

from hamtree.builder import build_superposition
from hamtree.encoding import encode_cycle
from hamtree.errors import CapacityExceeded, ZeroProbability
from hamtree.mapping import apply_um, apply_um_aux, apply_um_dagger
from hamtree.qstate import (
    BasisLabel,
    SparseState,
    attach_ancilla_uniform,
    detach_zero_ancilla,
    initial_state,
    inner_product,
    project_ancilla_zero,
    project_aux_one,
    with_aux,
)


def test_initial_state():
    s = initial_state(4)
    assert s.to_json_obj()["terms"] == [{"path": "111000", "ancilla": "", "c": 1}]
    assert initial_state(5).to_json_obj()["terms"][0]["path"] == "1110000000"
    assert s.norm_sq == 1 and s.level == 3 and s.ancilla_width == 0
    with pytest.raises(CapacityExceeded):
        initial_state(12)


def test_attach_uniform_m3():
    s = attach_ancilla_uniform(initial_state(4), 3)
    assert sorted(t["ancilla"] for t in s.to_json_obj()["terms"]) == ["001", "010", "100"]
    assert set(s.coeffs.tolist()) == {1}
    assert s.norm_sq == 3


def test_attach_uniform_multiplies_terms_and_norm():
    s, _ = build_superposition(5, upto=4)
    wide = attach_ancilla_uniform(s, 4)
    assert len(wide) == 3 * 6
    assert wide.norm_sq == 6 * s.norm_sq
    with pytest.raises(ValueError):
        attach_ancilla_uniform(wide, 4)


def test_project_m3_passes_everything():
    out = apply_um(attach_ancilla_uniform(initial_state(4), 3), 3)
    p, post = project_ancilla_zero(out)
    assert p == 1 and len(post) == 3 and post.ancilla_width == 0


def test_project_m4_two_thirds():
    s, _ = build_superposition(5, upto=4)
    p, post = project_ancilla_zero(apply_um(attach_ancilla_uniform(s, 4), 4))
    assert p == Fraction(2, 3)
    assert len(post) == 12


def test_project_zero_probability():
    wide = attach_ancilla_uniform(initial_state(4), 3)
    with pytest.raises(ZeroProbability):
        project_ancilla_zero(wide)
    with pytest.raises(ValueError):
        project_ancilla_zero(initial_state(4))


def test_aux_projection_m5_half():
    s, _ = build_superposition(6, upto=5)
    wide = attach_ancilla_uniform(s, 5)
    pa, a = project_ancilla_zero(apply_um(wide, 5))
    pb, b = project_aux_one(apply_um_aux(with_aux(wide), 5))
    assert pa == pb == Fraction(1, 2)
    assert detach_zero_ancilla(b) == a
    with pytest.raises(ZeroProbability):
        project_aux_one(with_aux(wide))
    with pytest.raises(ValueError):
        project_aux_one(wide)


def test_reattach_keeps_surviving_masks():
    s, _ = build_superposition(6, upto=5)
    p, post = project_ancilla_zero(apply_um(attach_ancilla_uniform(s, 5), 5))
    again = attach_ancilla_uniform(post, 6)
    assert again.path_set() == post.path_set()


def test_inner_product():
    s, _ = build_superposition(6)
    assert inner_product(s, s) == 1
    a = SparseState.from_terms(5, 5, 0, {encode_cycle((1, 2, 3, 4, 5)): 1})
    b = SparseState.from_terms(5, 5, 0, {encode_cycle((1, 3, 2, 4, 5)): 1})
    assert inner_product(a, b) == 0
    c = SparseState.from_terms(5, 5, 0, {encode_cycle((1, 2, 3, 4, 5)): -2,
                                         encode_cycle((1, 3, 2, 4, 5)): 1})
    assert inner_product(a, c) == Fraction(-4, 5)
    with pytest.raises(ValueError):
        inner_product(a, initial_state(6))


def test_inner_product_round_trip_through_u3():
    wide = attach_ancilla_uniform(initial_state(4), 3)
    back = apply_um_dagger(apply_um(wide, 3), 3)
    assert inner_product(wide, back) == 1


def test_from_terms_merges_and_drops_zeros():
    s = SparseState.from_terms(4, 3, 0, {0b111: 2, (0b111, 0): -2, 0b11001: 3})
    assert len(s) == 1 and s.norm_sq == 9


def test_states_are_immutable():
    s = initial_state(4)
    with pytest.raises(ValueError):
        s.coeffs[0] = 5
    with pytest.raises(Exception):
        s.level = 4


def test_json_round_trip_and_order():
    s, _ = build_superposition(5, upto=4)
    wide = with_aux(attach_ancilla_uniform(s, 4))
    out = apply_um_aux(wide, 4)
    obj = out.to_json_obj()
    keys = [(t["ancilla"], t["path"]) for t in obj["terms"]]
    assert keys == sorted(keys)
    assert all(t["aux"] in (0, 1) for t in obj["terms"])
    assert obj["norm_sq"] == 18
    assert SparseState.from_json(out.to_json()) == out
    assert out.to_json() == SparseState.from_json(out.to_json()).to_json()


def test_json_rejects_bad_norm():
    obj = initial_state(4).to_json_obj()
    obj["norm_sq"] = 2
    with pytest.raises(ValueError):
        SparseState.from_json_obj(obj)


def test_amplitude_view():
    s, _ = build_superposition(5)
    amp = s.amplitudes()
    assert np.allclose(amp, 1 / np.sqrt(12))
    assert np.isclose(np.sum(amp ** 2), 1.0)


def test_labels():
    assert initial_state(4).labels() == [BasisLabel(0b111, 0, None)]
