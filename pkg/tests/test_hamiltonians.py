import random
from fractions import Fraction
from itertools import combinations
from math import comb, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import elementary

from tslab.errors import BadParameter, ResourceLimit
from tslab.hamiltonians import (
    SymmetricExpr,
    gk_hamiltonians,
    monomial_to_elementary,
    plethysm_e_p2,
    slice_recurrence_coeffs,
    slice_recurrence_values,
    toeplitz_minor,
    top_row,
    tropical_hamiltonians,
)
from tslab.laurent import maxdeg_q
from tslab.tilings import CylinderGrid, enumerate_cylinder_tilings


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2)])
def test_hamiltonian_structure(m, n):
    hs = gk_hamiltonians(m, n)
    assert len(hs.H) == m + 2
    assert hs.H[0] == 1 and hs.H[m + 1] == 1
    # every tiling contributes a distinct monomial with coefficient 1 in these cases
    total = sum(sum(h.terms.values()) for h in hs.H)
    assert total == len(enumerate_cylinder_tilings(CylinderGrid(m, n)))
    assert all(h.is_subtraction_free() for h in hs.H)


def test_three_row_term_counts():
    hs = gk_hamiltonians(3, 1)
    assert [len(h) for h in hs.H] == [1, 7, 13, 7, 1]


def test_bad_parameters():
    with pytest.raises(BadParameter):
        gk_hamiltonians(0, 1)
    with pytest.raises(BadParameter):
        slice_recurrence_coeffs(4, 3)


def test_top_row_parity():
    assert [top_row(m) for m in (1, 2, 3, 4, 5)] == [0, 1, 0, 3, 0]


@given(st.lists(st.integers(-4, 6), min_size=6, max_size=6))
def test_tropical_hamiltonians_are_top_degrees(labels):
    hs = gk_hamiltonians(3, 1)
    lab = dict(enumerate(labels))
    assert tropical_hamiltonians(3, 1, lab) == [maxdeg_q(h, lab) for h in hs.H]


def test_power_sums_in_elementary_basis():
    # p_2 = m_(2) = e1^2 - 2 e2 in three variables
    assert monomial_to_elementary({(2,): 1}, 3) == {(2, 0, 0): 1, (0, 1, 0): -2}
    # m_(1,1) = e2
    assert monomial_to_elementary({(1, 1): 1}, 3) == {(0, 1, 0): 1}


def _roots(rng, m):
    xs = [Fraction(rng.randint(1, 7), rng.randint(1, 7)) for _ in range(m)]
    xs.append(1 / prod(xs))
    return xs


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_plethysm_against_roots(m):
    rng = random.Random(m)
    xs = _roots(rng, m)
    es = [elementary(xs, i) for i in range(m + 2)]
    squares = [x * x for x in xs]
    for i in range(m + 2):
        assert plethysm_e_p2(i, m).evaluate(es) == elementary(squares, i)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_slice_coefficients_against_roots(m):
    rng = random.Random(10 + m)
    xs = _roots(rng, m)
    es = [elementary(xs, i) for i in range(m + 2)]
    for r in range(1, m + 1):
        ys = [prod(xs[i] ** 2 for i in s) for s in combinations(range(m + 1), r)]
        coeffs = slice_recurrence_coeffs(r, m)
        assert len(coeffs) == comb(m + 1, r) + 1
        assert [c.evaluate(es) for c in coeffs] == [elementary(ys, j) for j in range(len(ys) + 1)]
        signed = slice_recurrence_values(r, m, es)
        assert signed == [(-1) ** j * elementary(ys, j) for j in range(len(ys) + 1)]


def test_three_row_plethysm_text():
    assert [str(plethysm_e_p2(i, 3)) for i in (1, 2, 3)] == ["e1^2 - 2*e2", "-2*e1*e3 + e2^2 + 2", "-2*e2 + e3^2"]


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_palindromy(m):
    for r in range(1, m + 1):
        assert slice_recurrence_coeffs(r, m) == tuple(reversed(slice_recurrence_coeffs(m + 1 - r, m)))


def test_symmetric_expr_arithmetic():
    e1, e2 = SymmetricExpr.gen(2, 1), SymmetricExpr.gen(2, 2)
    assert (e1 + e2) ** 2 == e1 ** 2 + 2 * e1 * e2 + e2 ** 2
    assert SymmetricExpr.gen(2, 3) == 1 and SymmetricExpr.gen(2, 0) == 1
    assert (e1 - e1) == 0
    assert (e1 * 3 - e2).evaluate([None, 2, 5]) == 1


def test_toeplitz_minors():
    hs = gk_hamiltonians(2, 1)
    point = {v: Fraction(1) for v in range(4)}
    values = hs.at(point)
    assert toeplitz_minor(hs, [0], [1], point) == values[1]
    assert toeplitz_minor(hs, [0, 1], [1, 2], point) == values[1] ** 2 - values[2] * values[0]
    with pytest.raises(ResourceLimit):
        toeplitz_minor(hs, list(range(9)), list(range(9)), point)
