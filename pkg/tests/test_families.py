import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tslab.bigraph import BLUE, RED, classify_kind, component_infos, is_recurrent
from tslab.errors import BadParameter, NotAffinite
from tslab.families import (
    BINDING_KINDS,
    BINDING_SCF,
    FamilySpec,
    build_double_binding,
    build_family,
    build_self_binding,
    check_points,
    classify_family,
    diagram,
    family_atlas,
    isomorphic,
    parse_diagram,
    scaling_factor,
)

ATLAS = family_atlas(2)


def test_atlas_covers_every_item_twice_where_possible():
    items = [s.item for s in ATLAS]
    assert set(items) == set(range(1, 20))
    # items 16-19 have a single member each
    assert all(items.count(k) == 2 for k in range(1, 16))


@pytest.mark.parametrize("spec", ATLAS, ids=lambda s: f"item{s.item}-{s.m}-{s.n}")
def test_round_trip(spec):
    g = build_family(spec)
    assert is_recurrent(g)
    assert classify_kind(g).kind == "affinite"
    assert check_points(g)
    assert classify_family(g) == spec


@pytest.mark.parametrize("spec", [s for s in ATLAS if s.item in (3, 7, 12, 14, 18)], ids=lambda s: f"item{s.item}")
def test_classification_ignores_vertex_numbering(spec):
    g = build_family(spec)
    perm = list(range(g.n))
    random.Random(spec.item).shuffle(perm)
    h = g.relabel(perm)
    assert isomorphic(g, h, respect_colors=True)
    assert classify_family(h) == spec


@pytest.mark.parametrize("kind", [k for k in BINDING_KINDS if k not in ("parallel", "selfBinding")])
def test_double_binding_scaling_factor(kind):
    n = {"AstD": 2, "AstA2": 1, "AstA3": 1, "DstD2": 4, "DstD3": 3}.get(kind)
    g = build_double_binding(kind, n)
    assert is_recurrent(g)
    assert scaling_factor(g) == BINDING_SCF[kind]
    # the blue Coxeter number determines the scaling factor: h = 3, 4, 6
    h = {1: 3, 2: 4, 3: 6}[BINDING_SCF[kind]]
    from tslab.bigraph import coxeter_number
    assert {coxeter_number(info.type) for _, info in component_infos(g, BLUE)} == {h}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_self_binding(n):
    g = build_self_binding(n)
    assert is_recurrent(g)
    assert [str(i.type) for _, i in component_infos(g, RED)] == [f"affA{4 * n + 1}"]
    assert {str(i.type) for _, i in component_infos(g, BLUE)} == {"A2"}


def test_validation_errors():
    with pytest.raises(BadParameter):
        build_family(FamilySpec(20))
    with pytest.raises(BadParameter):
        build_family(FamilySpec(7, m=2, n=3))
    with pytest.raises(BadParameter):
        build_family(FamilySpec(1, affine="A3", finite="A2"))
    with pytest.raises(BadParameter):
        diagram("E", 9)
    with pytest.raises(BadParameter):
        parse_diagram("X3")


def test_non_affinite_is_rejected():
    from tslab.families import build_tensor

    with pytest.raises(NotAffinite):
        classify_family(build_tensor(parse_diagram("A3"), parse_diagram("A2")))


def test_spec_json_round_trip():
    for spec in ATLAS:
        obj = spec.to_json_obj()
        assert obj["format"] == 1
        assert FamilySpec.from_json_obj(obj) == spec


@given(st.sampled_from(["affA1", "affA3", "affA5", "affD4", "affD6", "affE6"]),
       st.sampled_from(["A1", "A2", "A3", "D4", "E6"]))
def test_tensor_items_classify_as_item_one(aff, fin):
    spec = FamilySpec(1, affine=aff, finite=fin)
    assert classify_family(build_family(spec)) == spec
