import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tslab.bigraph import (
    BLUE,
    RED,
    Bigraph,
    DynkinType,
    Quiver,
    bigraph_from_quiver,
    check_labeling,
    classify_kind,
    component_infos,
    coxeter_number,
    is_recurrent,
    is_recurrent_by_paths,
    mutate,
    quiver_from_bigraph,
    recognize_ade,
    two_coloring,
)
from tslab.errors import NonPositiveLabel, NotBipartite, NotBipartiteFactor
from tslab.families import build_tensor, diagram, parse_diagram

FINITE = ["A1", "A2", "A5", "D4", "D5", "D7", "E6", "E7", "E8"]
AFFINE = ["affA1", "affA3", "affA6", "affD4", "affD5", "affD8", "affE6", "affE7", "affE8"]


@pytest.mark.parametrize("name", FINITE + AFFINE)
def test_recognizes_every_diagram(name):
    d = parse_diagram(name)
    info = recognize_ade(range(d.n), d.edges)
    assert str(info.type) == name


@pytest.mark.parametrize("name,h", [("A1", 2), ("A4", 5), ("D4", 6), ("D6", 10), ("E6", 12), ("E7", 18), ("E8", 30)])
def test_coxeter_numbers(name, h):
    assert coxeter_number(parse_diagram(name).type) == h


@pytest.mark.parametrize("name", AFFINE)
def test_affine_eigenvector_is_null_vector(name):
    d = parse_diagram(name)
    eig = recognize_ade(range(d.n), d.edges).eigvec
    assert min(eig.values()) == 1
    for v in range(d.n):
        nbr = sum(eig[b] if a == v else eig[a] for a, b in d.edges if v in (a, b))
        assert nbr == 2 * eig[v]


def test_not_ade():
    # a 4-cycle with a pendant vertex is neither finite nor affine
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]
    assert recognize_ade(range(5), edges).type == DynkinType("NotADE")


def test_two_coloring_rejects_odd_cycle():
    with pytest.raises(NotBipartite):
        two_coloring(3, [(0, 1), (1, 2), (2, 0)])


def test_tensor_rejects_odd_cycle_factor():
    with pytest.raises(NotBipartiteFactor):
        build_tensor(diagram("affA", 2), diagram("A", 2))


@pytest.mark.parametrize("s,t", [("affA3", "A3"), ("affD5", "A2"), ("affE6", "D4"), ("A3", "A4")])
def test_tensor_products_are_recurrent(s, t):
    g = build_tensor(parse_diagram(s), parse_diagram(t))
    assert is_recurrent(g) and is_recurrent_by_paths(g)
    reds = [info.type for _, info in component_infos(g, RED)]
    blues = [info.type for _, info in component_infos(g, BLUE)]
    assert set(map(str, reds)) == {s} and set(map(str, blues)) == {t}


def test_kinds():
    assert classify_kind(build_tensor(parse_diagram("A3"), parse_diagram("A2"))).kind == "admissible"
    assert classify_kind(build_tensor(parse_diagram("affA3"), parse_diagram("A2"))).kind == "affinite"
    assert classify_kind(build_tensor(parse_diagram("affA3"), parse_diagram("affA1"))).kind == "affaff"


@pytest.mark.parametrize("s,t,kind", [("A3", "A2", "strict"), ("affA3", "A2", "subadditive"),
                                      ("affD4", "D5", "subadditive"), ("affA3", "affA1", "weak")])
def test_kind_witness_is_a_valid_labeling(s, t, kind):
    g = build_tensor(parse_diagram(s), parse_diagram(t))
    res = classify_kind(g)
    assert res.witness is not None
    assert check_labeling(g, res.witness, kind)


def test_labels_must_be_positive():
    g = build_tensor(parse_diagram("A2"), parse_diagram("A2"))
    with pytest.raises(NonPositiveLabel):
        check_labeling(g, {v: 0 for v in g.vertices()})


def test_quiver_round_trip_and_recurrence_under_mutation():
    g = build_tensor(parse_diagram("affA3"), parse_diagram("A3"))
    q = quiver_from_bigraph(g)
    assert bigraph_from_quiver(q) == g
    whites = [v for v in g.vertices() if g.colors[v] == 0]
    mu = q
    for v in whites:
        mu = mutate(mu, v)
    # simultaneous mutation at all white vertices reverses every arc
    reversed_q = Quiver.make(q.n, [(b, a) for a, b in q.arcs], q.colors)
    assert mu.arc_counts() == reversed_q.arc_counts()


@given(st.integers(0, 5))
def test_mutation_is_an_involution(v):
    g = build_tensor(parse_diagram("affA1"), parse_diagram("A3"))
    q = quiver_from_bigraph(g)
    assert mutate(mutate(q, v), v).arc_counts() == q.arc_counts()


def test_non_commuting_matrices():
    g = Bigraph([0, 1, 0, 1], [(0, 1), (2, 3)], [(0, 3)])
    assert not is_recurrent(g) and not is_recurrent_by_paths(g)


def test_json_and_dot():
    g = build_tensor(parse_diagram("affA1"), parse_diagram("A2"))
    assert Bigraph.from_json(g.to_json()) == g
    assert json.loads(g.to_json())["format"] == 1
    dot = g.to_dot()
    assert dot.startswith("graph G {") and dot.count("color=red") == len(g.gamma)


@given(st.permutations(range(8)))
def test_recurrence_is_invariant_under_relabeling(perm):
    g = build_tensor(parse_diagram("affA3"), parse_diagram("A2"))
    assert is_recurrent(g.relabel(perm))
