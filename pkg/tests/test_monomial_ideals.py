from itertools import permutations

import pytest
from hypothesis import given

from bettishape.monomial_ideals import (
    GeneratorOrder,
    InternalInconsistency,
    MonomialIdeal,
    PowerCapExceeded,
    SearchInconclusive,
    candidate_sequence,
    canonical_order,
    colon_generators,
    colon_prefix,
    construct_order_O1,
    find_linear_quotients_power,
    has_linear_quotients,
    is_admissible,
    lambda_invariant,
    minimalize,
    power_product,
    variable_sequences,
)
from bettishape.polynomial import degree, divides, monomial_colon, monomials_of_degree, mul, variable
from strategies import monomial_ideals

XY = MonomialIdeal(2, ((3, 0), (2, 2), (0, 3)))


def brute_colon(prefix, u, n, top):
    """Minimal generators of (prefix) : u found by scanning all monomials up to degree ``top``."""
    hits = [w for d in range(top + 1) for w in monomials_of_degree(n, d)
            if any(divides(v, mul(w, u)) for v in prefix)]
    return MonomialIdeal(n, tuple(hits)) if hits else None


def test_canonical_generators():
    I = MonomialIdeal(2, ((0, 3), (2, 2), (3, 0), (3, 1)))
    assert I.gens == ((3, 0), (0, 3), (2, 2))
    assert (4, 4) in I and (1, 1) not in I


def test_minimalize_keeps_first_occurrence():
    assert minimalize([(1, 1), (2, 1), (1, 1), (0, 2)]) == [(1, 1), (0, 2)]


def test_power_product_of_xy():
    # mI = (x^4, x^3y, xy^3, y^4)
    assert set(power_product(XY, 1).gens) == {(4, 0), (3, 1), (1, 3), (0, 4)}


@given(monomial_ideals(max_deg=3))
def test_power_product_associative(I):
    assert power_product(power_product(I, 1), 1) == power_product(I, 2)


def test_lambda_examples():
    I = MonomialIdeal(4, ((1, 1, 0, 0), (0, 0, 1, 1)))
    prof = lambda_invariant(I, canonical_order(I))
    assert prof[2] == 1
    xy = MonomialIdeal(2, ((1, 0), (0, 1)))
    assert lambda_invariant(xy, canonical_order(xy)).values == (0, 0)
    O = GeneratorOrder(((3, 0), (0, 3), (2, 2)))
    assert lambda_invariant(XY, O).values == (0, 2, 0)


def test_colon_prefix_matches_brute_force():
    O = GeneratorOrder(((3, 0), (0, 3), (2, 2)))
    assert colon_prefix(XY, O, 3) == MonomialIdeal(2, ((1, 0), (0, 1)))
    with pytest.raises(IndexError):
        colon_prefix(XY, O, 1)


@given(monomial_ideals(max_deg=3, max_gens=4))
def test_colons_against_brute_force(I):
    seq = canonical_order(I).sequence
    top = max(I.degrees)
    for i in range(1, len(seq)):
        assert MonomialIdeal(I.n, tuple(colon_generators(seq[:i], seq[i]))) == brute_colon(seq[:i], seq[i], I.n, top)


@given(monomial_ideals(max_deg=3))
def test_lambda_zero_iff_linear_colons(I):
    O = canonical_order(I)
    prof = lambda_invariant(I, O)
    linear = all(
        all(degree(w) == 1 for w in colon_prefix(I, O, i).gens) for i in range(2, len(O) + 1)
    )
    assert prof.admissible == linear == is_admissible(O.sequence)


@given(monomial_ideals(max_n=3, max_deg=3, max_gens=4))
def test_linear_quotients_search_is_exhaustive(I):
    found = has_linear_quotients(I)
    brute = any(is_admissible(p) for p in permutations(I.gens))
    assert (found is not None) == brute
    if found is not None:
        assert is_admissible(found.sequence)


def test_search_budget():
    gens = tuple(u for u in monomials_of_degree(3, 4))[:14]
    I = MonomialIdeal(3, gens + ((0, 0, 6),))
    with pytest.raises(SearchInconclusive):
        has_linear_quotients(I, node_budget=1)


def test_construction_on_xy():
    mI, O1 = construct_order_O1(XY, GeneratorOrder(((3, 0), (0, 3), (2, 2))))
    assert O1.sequence == ((4, 0), (3, 1), (1, 3), (0, 4))
    assert lambda_invariant(mI, O1).maximum == 1


def test_construction_principal():
    I = MonomialIdeal(2, ((2, 0),))
    mI, O1 = construct_order_O1(I, canonical_order(I))
    assert O1.sequence == ((3, 0), (2, 1))
    assert lambda_invariant(mI, O1).admissible


def test_construction_two_disjoint_edges():
    I = MonomialIdeal(4, ((1, 1, 0, 0), (0, 0, 1, 1)))
    res = find_linear_quotients_power(I)
    assert res.lambda_trajectory == (1, 0) and res.t == 1


def test_construction_needs_degree_ascending():
    I = MonomialIdeal(2, ((1, 0), (0, 2)))
    with pytest.raises(ValueError):
        construct_order_O1(I, GeneratorOrder(((0, 2), (1, 0))))


def _parent_map(O, n):
    first = {}
    for c in candidate_sequence(O, n):
        first.setdefault(c.monomial, c.parent)
    return first


@given(monomial_ideals(max_n=3, max_deg=4, max_gens=4))
def test_lambda_drops_per_parent(I):
    O = canonical_order(I)
    lam = lambda_invariant(I, O)
    mI, O1 = construct_order_O1(I, O)
    lam1 = lambda_invariant(mI, O1)
    parents = _parent_map(O, I.n)
    for f, value in zip(O1.sequence, lam1.values):
        parent_value = lam.values[parents[f]]
        assert value <= parent_value
        if parent_value > 0:
            assert value < parent_value


@given(monomial_ideals(max_n=3, max_deg=4, max_gens=4))
def test_L_ij_structure(I):
    """Colons along the full candidate list O' have the shape used in the construction."""
    O = canonical_order(I)
    n = I.n
    seq = O.sequence
    cands = candidate_sequence(O, n)
    varseq = variable_sequences(O, n)
    for pos, c in enumerate(cands):
        if pos == 0:
            continue
        L = MonomialIdeal(n, tuple(colon_generators([d.monomial for d in cands[:pos]], c.monomial)))
        s, n_i = varseq[c.parent]
        earlier_vars = [variable(n, s[l]) for l in range(c.position)]
        if c.position >= n_i:
            expected = earlier_vars
        else:
            x = c.variable
            ws = colon_generators(seq[: c.parent], seq[c.parent])
            expected = [monomial_colon(w, variable(n, x)) if w[x] else w for w in ws] + earlier_vars
        assert L == MonomialIdeal(n, tuple(expected))


def test_find_power_xy():
    res = find_linear_quotients_power(XY, cap=5)
    assert res.t == 2 and res.lambda_trajectory == (2, 1, 0)
    assert set(res.orders[1].sequence) == {(4, 0), (3, 1), (1, 3), (0, 4)}
    assert is_admissible(res.order.sequence)


def test_find_power_cap():
    with pytest.raises(PowerCapExceeded):
        find_linear_quotients_power(XY, cap=1)
    assert not issubclass(PowerCapExceeded, InternalInconsistency)


@given(monomial_ideals(max_n=4, max_deg=4, max_gens=5))
def test_trajectory_strictly_decreasing(I):
    res = find_linear_quotients_power(I)
    traj = res.lambda_trajectory
    assert all(b < a for a, b in zip(traj, traj[1:]))
    assert traj[-1] == 0 and res.t == len(traj) - 1
    assert is_admissible(res.order.sequence)
    assert res.ideal == power_product(I, res.t)
