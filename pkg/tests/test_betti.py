import warnings
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bettishape.betti import (
    BettiTable,
    TruncationWarning,
    betti_table,
    betti_table_monomial,
    hilbert_W,
    monomial_truncation,
    power_betti_table,
    reduced_homology,
    regularity,
)
from bettishape.monomial_ideals import MonomialIdeal, power_product
from bettishape.parsing import parse_ideal
from bettishape.polynomial import component_basis, monomials_of_degree
from strategies import monomial_ideals

REF_TOTALS = {0: (3, 3, 1), 1: (10, 19, 13, 3), 2: (22, 49, 38, 10), 3: (39, 94, 78, 22)}


def hilbert_numerator(dims, n, top):
    """Coefficients of sum_d dim(I_d) t^d * (1 - t)^n up to degree ``top``."""
    return [sum((-1) ** q * comb(n, q) * dims(j - q) for q in range(n + 1) if j - q >= 0)
            for j in range(top + 1)]


def euler(B, j):
    return sum((-1) ** i * B[i, j] for i in range(B.n + 1))


def monomial_dim(I, d):
    return sum(1 for u in monomials_of_degree(I.n, d) if u in I)


@given(monomial_ideals(max_n=4, max_deg=4, max_gens=4))
def test_hilbert_series_identity_monomial(I):
    B = betti_table_monomial(I)
    top = max(j for _, j in B.entries) + 1
    numer = hilbert_numerator(lambda d: monomial_dim(I, d), I.n, top)
    assert [euler(B, j) for j in range(top + 1)] == numer


def test_hilbert_series_identity_reference(ref_ideal):
    B = betti_table(ref_ideal)
    numer = hilbert_numerator(lambda d: component_basis(ref_ideal, d).dimension, 4, 9)
    assert [euler(B, j) for j in range(10)] == numer


def _borel_closure(n, gens):
    out = set()
    todo = list(gens)
    while todo:
        u = todo.pop()
        if u in out:
            continue
        out.add(u)
        for i in range(n):
            for j in range(i):
                if u[i]:
                    v = list(u)
                    v[i] -= 1
                    v[j] += 1
                    todo.append(tuple(v))
    return out


def _max_index(u):
    return max(i for i, a in enumerate(u) if a) + 1


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n).filter(lambda e: 1 <= sum(e)).map(tuple),
             min_size=1, max_size=3))))
def test_eliahou_kervaire_for_strongly_stable(data):
    n, seeds = data
    # saturate each degree so the Borel-fixed ideal is stable in every degree
    I = MonomialIdeal(n, tuple(_borel_closure(n, seeds)))
    top = max(I.degrees)
    closed = {u for d in range(1, top + 1) for u in monomials_of_degree(n, d) if u in I}
    I = MonomialIdeal(n, tuple(_borel_closure(n, closed)))
    expected = {}
    for u in I.gens:
        m, d = _max_index(u), sum(u)
        for i in range(m):
            expected[(i, i + d)] = expected.get((i, i + d), 0) + comb(m - 1, i)
    assert betti_table_monomial(I).entries == expected


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4))
def test_complete_intersection_of_powers(exps):
    n = len(exps)
    gens = tuple(tuple(e if k == i else 0 for k in range(n)) for i, e in enumerate(exps))
    B = betti_table(MonomialIdeal(n, gens))
    expected = {}
    for mask in range(1, 1 << n):
        chosen = [exps[i] for i in range(n) if mask >> i & 1]
        key = (len(chosen) - 1, sum(chosen))
        expected[key] = expected.get(key, 0) + 1
    assert B.entries == expected


@given(monomial_ideals(max_n=3, max_deg=3, max_gens=4))
def test_three_engines_agree(I):
    a = betti_table_monomial(I)
    b = betti_table(I, engine="koszul")
    c = betti_table(I.to_graded(), engine="ideal")
    assert a.entries == b.entries == c.entries


@given(monomial_ideals(max_n=4, max_deg=4, max_gens=5))
def test_generators_and_length(I):
    B = betti_table_monomial(I)
    assert B.generator_degrees() == sorted(set(I.degrees))
    assert all(B[0, d] == I.degrees.count(d) for d in I.degrees)
    assert all(i < I.n for i, _ in B.entries)


def test_xy_and_its_m_multiple(xy_ideal):
    assert betti_table(xy_ideal).entries == {(0, 3): 2, (0, 4): 1, (1, 5): 2}
    mI = power_product(xy_ideal, 1)
    # four quartics; the syzygies sit in degrees 5 (twice) and 6
    expected = {(0, 4): 4, (1, 5): 2, (1, 6): 1}
    for engine in ("koszul", "upper-koszul", "ideal"):
        assert betti_table(mI, engine=engine).entries == expected


def test_ref_tables(ref_ideal):
    for k, totals in REF_TOTALS.items():
        B = power_betti_table(ref_ideal, k)
        assert B.totals == totals


def test_ref_first_table_entries(ref_ideal):
    B = betti_table(ref_ideal)
    assert B.entries == {(0, 1): 1, (0, 3): 1, (0, 4): 1, (1, 4): 1, (1, 5): 1, (1, 7): 1, (2, 8): 1}
    assert regularity(B) == 6


def test_prime_field_agrees_on_ref_ideal(ref_ideal):
    exact = betti_table(ref_ideal)
    heuristic = betti_table(ref_ideal, prime=32003)
    assert heuristic.entries == exact.entries
    assert heuristic.engine == "prime-field-heuristic"


def test_truncation_warning():
    I = parse_ideal("(x^2, y^2)").ideal
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        B = betti_table(I, degree_cap=4)
    assert B[1, 4] == 1
    assert any(issubclass(w.category, TruncationWarning) for w in caught)
    with pytest.raises(ValueError):
        betti_table(I, degree_cap=1)


def test_reduced_homology_small_complexes():
    assert reduced_homology(frozenset({0})) == (1,)  # only the empty face: H~_{-1}
    # boundary of a triangle: a circle
    faces = frozenset({0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110})
    h = reduced_homology(faces)
    assert h[2] == 1 and sum(h) == 1


def test_monomial_truncation(xy_ideal):
    assert monomial_truncation(xy_ideal, 3).gens == ((3, 0), (0, 3))
    assert monomial_truncation(xy_ideal, 2) is None


def test_hilbert_W_counts(xy_ideal):
    W = hilbert_W(xy_ideal, 0)
    assert W.values == {3: 2, 4: 1}


def test_empty_table():
    B = BettiTable(3, {})
    assert not B and B.totals == () and B.strands == []
    with pytest.raises(ValueError):
        regularity(B)
