import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import scalar_tsystem

from tslab.acceptance import LETTERS, PRINTED_HAMILTONIANS, parse_fraction_sum
from tslab.bigraph import coxeter_number
from tslab.errors import ConservationViolated, NoRecurrenceFound, NotLaurent
from tslab.families import FamilySpec, build_family, build_tensor, parse_diagram
from tslab.hamiltonians import HamiltonianSet, gk_hamiltonians
from tslab.laurent import LaurentPoly
from tslab.tsystem import (
    berlekamp_massey,
    boundary_recurrence_residue,
    check_conserved,
    check_one_step_laurent,
    cylinder_graph,
    evolve,
    evolve_numeric,
    find_minimal_recurrence,
    init,
    random_point,
    specialize_map,
    state_at,
    step_backward,
    step_forward,
    trace_is_integral,
    verify_boundary_recurrence,
)


@pytest.mark.parametrize("g", [cylinder_graph(3, 1), cylinder_graph(2, 2), build_family(FamilySpec(3, m=2, n=2)),
                               build_family(FamilySpec(14, n=1))], ids=["cyl31", "cyl22", "item3", "item14"])
def test_evolution_matches_scalar_oracle(g):
    pt = random_point(g.vertices(), random.Random(7))
    vals = [pt[v] for v in g.vertices()]
    ours = evolve(g, -6, 6, vals)
    ref = scalar_tsystem(g.colors, g.gamma, g.delta, vals, -6, 6)
    assert ours == ref


def test_initial_layer_convention():
    g = cylinder_graph(1, 1)
    vals = evolve(g, 0, 1, [Fraction(k + 2) for k in g.vertices()])
    for v in g.vertices():
        assert vals[(v, g.colors[v])] == v + 2


@given(st.integers(-5, 5))
def test_backward_step_inverts_forward_step(t):
    g = cylinder_graph(2, 1)
    pt = random_point(g.vertices(), random.Random(3))
    s = state_at(g, t, [pt[v] for v in g.vertices()])
    assert step_backward(step_forward(s)).values == s.values


@pytest.mark.parametrize("a,b", [("A1", "A1"), ("A2", "A1"), ("A3", "A2"), ("A2", "A2"), ("D4", "A2"), ("A4", "A3")])
def test_zamolodchikov_periodicity(a, b):
    g = build_tensor(parse_diagram(a), parse_diagram(b))
    period = 2 * (coxeter_number(parse_diagram(a).type) + coxeter_number(parse_diagram(b).type))
    pt = random_point(g.vertices(), random.Random(5))
    tr = evolve_numeric(g, pt, -period, period)
    for (v, t), x in tr.values.items():
        if (v, t + period) in tr.values:
            assert tr.values[(v, t + period)] == x


@pytest.mark.parametrize("m,n", [(3, 1), (2, 2), (1, 2)])
def test_symbolic_values_are_positive_laurent(m, n):
    g = cylinder_graph(m, n)
    for val in evolve(g, -4, 5).values():
        assert isinstance(val, LaurentPoly) and val.is_subtraction_free()


def test_integrality_from_all_ones():
    g = build_family(FamilySpec(5, m=2, n=1))
    tr = evolve_numeric(g, {v: 1 for v in g.vertices()}, -8, 8)
    assert trace_is_integral(tr)


def test_specialize_map_commutes_with_evolution():
    g = cylinder_graph(2, 1)
    pt = random_point(g.vertices(), random.Random(11))
    symbolic = evolve(g, -3, 3)
    numeric = evolve(g, -3, 3, [pt[v] for v in g.vertices()])
    assert specialize_map(symbolic, pt) == numeric


def test_berlekamp_massey_fibonacci():
    fib = [Fraction(1), Fraction(1)]
    for _ in range(20):
        fib.append(fib[-1] + fib[-2])
    assert berlekamp_massey(fib) == [1, -1, -1]
    spec = find_minimal_recurrence(fib)
    assert spec.coeffs == (1, -1, -1) and spec.terms == 3


@given(st.lists(st.fractions(min_value=-5, max_value=5).filter(bool), min_size=1, max_size=3),
       st.lists(st.fractions(min_value=-5, max_value=5), min_size=3, max_size=3))
def test_berlekamp_massey_recovers_order(roots, start):
    # sequences sum c_i r_i^k have a recurrence of order at most the number of distinct roots
    distinct = sorted(set(roots))
    seq = [sum(c * r ** k for c, r in zip(start, distinct)) for k in range(24)]
    coeffs = berlekamp_massey(seq)
    assert len(coeffs) - 1 <= len(distinct)
    L = len(coeffs) - 1
    for k in range(L, len(seq)):
        assert sum(c * seq[k - j] for j, c in enumerate(coeffs)) == 0


def test_short_sequence_is_not_certified():
    with pytest.raises(NoRecurrenceFound):
        find_minimal_recurrence([1, 2, 4, 8, 17])


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 1), (1, 2)])
def test_boundary_recurrence_symbolic(m, n):
    for which in ("top", "bottom"):
        assert verify_boundary_recurrence(m, n, which, range(-2, 2)).checked >= 2


@pytest.mark.parametrize("m,n", [(4, 1), (2, 2), (3, 2), (1, 3)])
def test_boundary_recurrence_numeric(m, n):
    g = cylinder_graph(m, n)
    pt = random_point(g.vertices(), random.Random(m * 10 + n))
    for which in ("top", "bottom"):
        assert verify_boundary_recurrence(m, n, which, range(-3, 3), pt).checked >= 2


def test_swapped_hamiltonians_break_the_recurrence():
    hs = gk_hamiltonians(3, 1)
    swapped = HamiltonianSet(3, 1, (hs.H[0], hs.H[3], hs.H[2], hs.H[1], hs.H[4]))
    residues = []
    for t in range(-3, 3):
        try:
            residues.append(boundary_recurrence_residue(3, 1, "top", 0, t, swapped))
        except ValueError:
            continue
    assert residues and all(r != 0 for r in residues)


@pytest.mark.parametrize("m,n", [(2, 1), (3, 1), (2, 2)])
def test_numeric_conservation(m, n):
    g = cylinder_graph(m, n)
    pt = random_point(g.vertices(), random.Random(1))
    assert check_conserved(gk_hamiltonians(m, n), g, [pt[v] for v in g.vertices()], -10, 10).checked > 0


def test_symbolic_conservation():
    g = cylinder_graph(2, 1)
    assert check_conserved(gk_hamiltonians(2, 1), g, [LaurentPoly.var(v) for v in g.vertices()], -2, 2).checked


def test_printed_three_row_hamiltonians_are_not_conserved():
    g = cylinder_graph(3, 1)
    printed = tuple(parse_fraction_sum(PRINTED_HAMILTONIANS[r], LETTERS) for r in (1, 2, 3))
    hs = HamiltonianSet(3, 1, (LaurentPoly.const(1),) + printed + (LaurentPoly.const(1),))
    pt = random_point(g.vertices(), random.Random(2))
    with pytest.raises(ConservationViolated):
        check_conserved(hs, g, [pt[v] for v in g.vertices()], -4, 4)
    with pytest.raises(NotLaurent):
        check_one_step_laurent(hs, g)


@pytest.mark.parametrize("m,n", [(3, 1), (2, 2), (1, 1), (2, 1)])
def test_one_step_laurent(m, n):
    assert check_one_step_laurent(gk_hamiltonians(m, n), cylinder_graph(m, n)).checked == (m + 2) * 2 * m * n


def test_init_state_layers():
    g = cylinder_graph(1, 1)
    s = init(g)
    assert s.t == 1
    assert set(s.layer()) == {(v, 1 if g.colors[v] else 0) for v in g.vertices()}
