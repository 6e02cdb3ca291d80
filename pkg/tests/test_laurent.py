from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tslab.errors import NotDivisible, ResourceLimit
from tslab.laurent import (
    ONE,
    ZERO,
    LaurentPoly,
    exact_div,
    format_poly,
    make_monomial,
    maxdeg_q,
    parse_poly,
    poly_from_json,
    poly_to_json,
    specialize,
    specialize_q,
)

monomials = st.dictionaries(st.integers(0, 3), st.integers(-2, 2), max_size=3).map(make_monomial)
polys = st.dictionaries(monomials, st.integers(-4, 4), max_size=5).map(LaurentPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
points = st.fixed_dictionaries({v: st.fractions(min_value=Fraction(1, 5), max_value=5) for v in range(4)})


def x(v, e=1):
    return LaurentPoly.var(v, e)


def test_zero_coefficients_are_dropped():
    p = LaurentPoly({make_monomial({0: 1}): 0, make_monomial({}): 3})
    assert len(p) == 1 and p == 3


def test_monomial_normal_form_ignores_zero_exponents():
    assert make_monomial({0: 1, 1: 0}) == make_monomial({0: 1})


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO and p * ONE == p


@given(polys, nonzero_polys)
def test_exact_division_inverts_multiplication(p, q):
    assert exact_div(p * q, q) == p


@given(polys, polys, points)
def test_specialization_is_a_ring_map(p, q, pt):
    assert specialize(p * q, pt) == specialize(p, pt) * specialize(q, pt)
    assert specialize(p + q, pt) == specialize(p, pt) + specialize(q, pt)


@given(polys)
def test_text_round_trip(p):
    assert parse_poly(format_poly(p)) == p


@given(polys)
def test_json_round_trip(p):
    assert poly_from_json(poly_to_json(p)) == p


def test_non_divisible_raises():
    with pytest.raises(NotDivisible):
        exact_div(x(0) + 1, x(0) + 2)
    with pytest.raises(NotDivisible):
        exact_div(x(0) * x(0) + 1, x(0) + 1)


def test_division_by_monomial_is_always_exact():
    p = (x(0) + x(1, -1)) * 3
    assert exact_div(p, x(0, 2)) == p * x(0, -2)


def test_octahedron_step_divides():
    a, b, c, d, e = (x(i) for i in range(5))
    top = (b * c + d * e)
    assert exact_div(top * a, a) == top


def test_term_ceiling_from_environment(monkeypatch):
    monkeypatch.setenv("TSLAB_TERM_CEILING", "3")
    with pytest.raises(ResourceLimit):
        (x(0) + x(1) + 1) * (x(2) + x(3) + 1)


def test_specialize_q_and_maxdeg():
    p = x(0) * x(1, -1) + 2 * x(1) ** 2
    labels = {0: 5, 1: 1}
    assert specialize_q(p, labels) == {4: 1, 2: 2}
    assert maxdeg_q(p, labels) == 4


positive_polys = st.dictionaries(monomials, st.integers(1, 4), min_size=1, max_size=5).map(LaurentPoly)


@given(positive_polys, positive_polys,
       st.fixed_dictionaries({v: st.integers(-5, 5) for v in range(4)}))
def test_maxdeg_is_tropical_on_positive_polys(p, q, labels):
    assert maxdeg_q(p * q, labels) == maxdeg_q(p, labels) + maxdeg_q(q, labels)
    assert maxdeg_q(p + q, labels) == max(maxdeg_q(p, labels), maxdeg_q(q, labels))
