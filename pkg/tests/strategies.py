from hypothesis import strategies as st

from bettishape.monomial_ideals import MonomialIdeal


def monomials(n, max_deg):
    return st.lists(st.integers(0, max_deg), min_size=n, max_size=n).filter(
        lambda e: 1 <= sum(e) <= max_deg
    ).map(tuple)


@st.composite
def monomial_ideals(draw, max_n=3, max_deg=3, max_gens=4):
    n = draw(st.integers(1, max_n))
    gens = draw(st.lists(monomials(n, max_deg), min_size=1, max_size=max_gens))
    return MonomialIdeal(n, tuple(gens))


def int_matrices(max_rows=6, max_cols=6, lo=-4, hi=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
