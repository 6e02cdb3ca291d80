import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tslab.errors import BadParameter, WindowTooSmall
from tslab.families import FamilySpec, build_family
from tslab.tropical import (
    EVOLUTION_TABLE,
    IdentityCertificate,
    affine_coxeter_check,
    affine_coxeter_data,
    affine_slices,
    affine_types,
    asymptotic_speeds,
    check_conjectural_speed_symmetry,
    check_maxdeg_consistency,
    check_speed_conservation,
    check_tropical_conservation,
    diagram_data,
    evolution_example,
    hamiltonians_at,
    letters_to_values,
    random_labels,
    trop_init,
    trop_state,
    trop_step,
    trop_values,
    values_to_letters,
    violations,
)
from tslab.tsystem import cylinder_graph

labels6 = st.lists(st.integers(-9, 9), min_size=6, max_size=6)


def _maxplus_oracle(g, labels, t_from, t_to):
    """Two-layer max-plus recursion written directly from the edge lists."""
    red = {v: [] for v in g.vertices()}
    blue = {v: [] for v in g.vertices()}
    for a, b in g.gamma:
        red[a].append(b)
        red[b].append(a)
    for a, b in g.delta:
        blue[a].append(b)
        blue[b].append(a)
    vals = {(v, g.colors[v]): labels[v] for v in g.vertices()}
    for t in range(2, t_to + 1):
        for v in g.vertices():
            if (t + g.colors[v]) % 2 == 0:
                r = sum(vals[(u, t - 1)] for u in red[v])
                b = sum(vals[(u, t - 1)] for u in blue[v])
                vals[(v, t)] = max(r, b) - vals[(v, t - 2)]
    for t in range(-1, t_from - 1, -1):
        for v in g.vertices():
            if (t + g.colors[v]) % 2 == 0:
                r = sum(vals[(u, t + 1)] for u in red[v])
                b = sum(vals[(u, t + 1)] for u in blue[v])
                vals[(v, t)] = max(r, b) - vals[(v, t + 2)]
    return {k: x for k, x in vals.items() if t_from <= k[1] <= t_to}


@pytest.mark.parametrize("g", [cylinder_graph(3, 1), cylinder_graph(2, 2), build_family(FamilySpec(5, m=2, n=1))],
                         ids=["cyl31", "cyl22", "item5"])
def test_dynamics_match_oracle(g):
    labels = random_labels(g, random.Random(4))
    assert trop_values(trop_init(g, labels), -8, 8) == _maxplus_oracle(g, labels, -8, 8)


def test_golden_table():
    assert evolution_example() == [(t, row, s) for t, row, s in EVOLUTION_TABLE]


def test_letters_round_trip():
    row = EVOLUTION_TABLE[3][1]
    assert values_to_letters(letters_to_values(row)) == row


def test_golden_speeds_and_tropical_h1():
    g = cylinder_graph(3, 1)
    start = trop_state(g, -5, letters_to_values(EVOLUTION_TABLE[0][1]))
    sp = asymptotic_speeds(start)
    assert sp.plus == (2, 4, 3) and sp.minus == (3, 4, 2)
    assert hamiltonians_at(start, -4, 3, 1)[1] == 2
    assert hamiltonians_at(start, 0, 3, 1)[1] == 2


@given(labels6, st.integers(-3, 3))
def test_backward_step_inverts_forward(labels, k):
    g = cylinder_graph(3, 1)
    s = trop_init(g, labels)
    for _ in range(abs(k)):
        s = trop_step(s, 1 if k > 0 else -1)
    assert trop_step(trop_step(s, 1), -1).values == s.values


@given(labels6)
def test_tropical_hamiltonians_conserved(labels):
    check_tropical_conservation(3, 1, dict(enumerate(labels)), steps=30)


@given(labels6)
def test_speed_conservation_property(labels):
    check_speed_conservation(3, 1, dict(enumerate(labels)))


@pytest.mark.parametrize("m,n", [(2, 1), (1, 2), (4, 1)])
def test_speed_conservation_other_sizes(m, n):
    g = cylinder_graph(m, n)
    rng = random.Random(m + 7 * n)
    for _ in range(5):
        check_speed_conservation(m, n, random_labels(g, rng))


def test_maxdeg_consistency_random_labels():
    g = cylinder_graph(2, 2)
    labels = random_labels(g, random.Random(9))
    assert check_maxdeg_consistency(g, labels, -4, 4).checked > 0


@pytest.mark.parametrize("name", affine_types(9))
def test_affine_coxeter_identity(name):
    adj, _colors, eig, t = diagram_data(name)
    h, C = affine_coxeter_data(t)
    assert C * sum(x * x for x in eig.values()) == 4 * h
    rng = random.Random(name)
    vectors = [{v: rng.randint(-30, 30) for v in adj} for _ in range(20)]
    assert isinstance(affine_coxeter_check(name, vectors), IdentityCertificate)


def test_coxeter_table():
    from tslab.bigraph import DynkinType

    assert affine_coxeter_data(DynkinType("affA", 7)) == (4, 2)
    assert affine_coxeter_data(DynkinType("affD", 6)) == (4, 1)
    assert affine_coxeter_data(DynkinType("affD", 7)) == (10, 2)
    assert affine_coxeter_data(DynkinType("affE", 8)) == (30, 1)
    with pytest.raises(BadParameter):
        affine_coxeter_data(DynkinType("affA", 4))


def test_slices_are_affine_with_eigenvectors():
    slices = affine_slices(cylinder_graph(3, 2))
    assert [str(s.type) for s in slices] == ["affA3"] * 3
    assert all(set(s.eig.values()) == {1} for s in slices)


def test_violations_vanish_after_stabilization():
    g = cylinder_graph(3, 1)
    start = trop_state(g, -5, letters_to_values(EVOLUTION_TABLE[0][1]))
    sp = asymptotic_speeds(start)
    s = start
    while s.t < sp.t_plus + 5:
        if s.t >= sp.t_plus:
            assert violations(s) == []
        s = trop_step(s)


def test_window_too_small():
    g = cylinder_graph(3, 1)
    with pytest.raises(WindowTooSmall):
        asymptotic_speeds(trop_state(g, -5, letters_to_values(EVOLUTION_TABLE[0][1])), window=3)


def test_conjectural_symmetry_reports_without_raising():
    g = build_family(FamilySpec(3, m=2, n=2))
    rep = check_conjectural_speed_symmetry(g, random_labels(g, random.Random(1)))
    assert set(rep) == {"agrees", "plus", "minus", "error"}
