from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from bettishape.polynomial import (
    GradedIdeal,
    Polynomial,
    component_basis,
    dim_S,
    divides,
    gcd_monomial,
    lcm_monomial,
    monomial_colon,
    monomial_index,
    monomials_of_degree,
    mul,
    support,
)
from bettishape.quotient import GradedQuotient
from strategies import monomials

pairs = st.integers(1, 4).flatmap(lambda n: st.tuples(monomials(n, 4), monomials(n, 4)))


@given(pairs)
def test_colon_times_gcd(uv):
    u, v = uv
    # u : v = u / gcd(u, v)
    assert mul(monomial_colon(u, v), gcd_monomial(u, v)) == u


@given(pairs)
def test_gcd_lcm_product(uv):
    u, v = uv
    assert mul(gcd_monomial(u, v), lcm_monomial(u, v)) == mul(u, v)
    assert divides(gcd_monomial(u, v), u) and divides(u, lcm_monomial(u, v))


def test_monomial_basis_sizes():
    for n in range(1, 5):
        for d in range(6):
            mons = monomials_of_degree(n, d)
            assert len(mons) == dim_S(n, d) == comb(n + d - 1, d)
            assert len(set(mons)) == len(mons)
            assert monomial_index(n, d)[mons[-1]] == len(mons) - 1


def test_support_is_zero_based():
    assert support((2, 0, 1)) == frozenset({0, 2})


def test_polynomial_arithmetic():
    x = Polynomial.monomial((1, 0))
    y = Polynomial.monomial((0, 1))
    f = (x + y) * (x - y)
    assert f == Polynomial(2, {(2, 0): 1, (0, 2): -1})
    assert f.is_homogeneous() and f.degree == 2
    assert not (x - x)
    assert (x + y * y).degrees == {1, 2}


def test_graded_ideal_validation():
    x = Polynomial.monomial((1, 0))
    y2 = Polynomial.monomial((0, 2))
    with pytest.raises(ValueError):
        GradedIdeal(2, (x + y2,))
    with pytest.raises(ValueError):
        GradedIdeal(2, ())
    I = GradedIdeal(2, (y2, x))
    assert I.degrees == [1, 2]


def test_component_basis_of_linear_form():
    # (x1 + x2 + x4)_d = x-multiples of a nonzerodivisor: dim S_{d-1}
    ell = Polynomial(4, {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 0, 1): 1})
    I = GradedIdeal(4, (ell,))
    for d in range(5):
        assert component_basis(I, d).dimension == (dim_S(4, d - 1) if d else 0)


def test_component_basis_spans_generators(ref_ideal):
    B = component_basis(ref_ideal, 4)
    mons = monomials_of_degree(4, 4)
    for g in ref_ideal.times_monomials(4 - 1).generators:
        if g.degree != 4:
            continue
        # each product must be a combination of the basis: rank does not grow
        rows = [list(v) for v in B.basis] + [[g.terms.get(m, Fraction(0)) for m in mons]]
        assert sympy.Matrix(rows).rank() == B.dimension


@given(st.integers(1, 3).flatmap(lambda n: st.lists(monomials(n, 3), min_size=1, max_size=4)), st.integers(0, 5))
def test_monomial_component_dimension_counts_monomials(gens, d):
    I = GradedIdeal.from_monomials(gens)
    n = I.n
    expected = sum(1 for u in monomials_of_degree(n, d) if any(divides(g, u) for g in gens))
    assert component_basis(I, d).dimension == expected


def test_quotient_dims_match_component_basis(ref_ideal):
    Q = GradedQuotient.from_ideal(ref_ideal)
    for d in range(8):
        assert Q.dim(d) == dim_S(4, d) - component_basis(ref_ideal, d).dimension


def test_times_monomials_component(ref_ideal):
    # (mI)_d = I_d for d above the generator degrees
    mI = ref_ideal.times_monomials(1)
    assert component_basis(mI, 5).dimension == component_basis(ref_ideal, 5).dimension
    assert component_basis(mI, 1).dimension == 0
    assert component_basis(mI, 2).dimension == 4
