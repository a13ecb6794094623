"""Graded Betti tables of ideals.

Three independent routes produce the same numbers:

``koszul``
    Koszul homology of the quotient S/I, degree by degree, using the small
    quotient pieces from :mod:`bettishape.quotient`.  Since
    0 -> I -> S -> S/I -> 0 and S is free, beta_{i,j}(I) = beta_{i+1,j}(S/I).
    Monomial ideals are split further by multidegree.
``ideal``
    Koszul homology computed directly on I: the term in homological degree
    i and internal degree j is C(n, i) copies of I_{j-i}.  Slow; a test oracle.
``upper-koszul``
    Monomial ideals only: beta_{i,a}(I) = dim reduced H_{i-1}(K^a(I)) where
    K^a(I) = {F squarefree : x^{a-F} in I}, summed over multidegrees a below
    the lcm of the generators (numpy-vectorized).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Mapping

import numpy as np

from .linalg import sparse_rank
from .monomial_ideals import MonomialIdeal, power_product
from .polynomial import (
    GradedIdeal,
    component_basis,
    dim_S,
    monomial_index,
    monomials_of_degree,
)
from .quotient import GradedQuotient


class TruncationWarning(UserWarning):
    """A Betti number is nonzero at the degree cap; the table may be incomplete."""


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers beta_{i,j}; only nonzero entries are stored."""

    n: int
    entries: Mapping[tuple[int, int], int]
    engine: str = field(default="koszul", compare=False)
    degree_cap: int | None = field(default=None, compare=False)

    def __post_init__(self):
        clean = {(int(i), int(j)): int(b) for (i, j), b in self.entries.items() if b}
        if any(b < 0 for b in clean.values()):
            raise ValueError("Betti numbers are nonnegative")
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def __bool__(self) -> bool:
        return bool(self.entries)

    @property
    def columns(self) -> int:
        """Number of homological columns 0..max i."""
        return max((i for i, _ in self.entries), default=-1) + 1

    def strand(self, ell: int) -> tuple[int, ...]:
        """(beta_{0,ell}, beta_{1,1+ell}, ..., beta_{n-1,n-1+ell})."""
        return tuple(self[i, i + ell] for i in range(self.n))

    @property
    def strands(self) -> list[int]:
        """Indices ell of the nonzero strands."""
        return sorted({j - i for i, j in self.entries})

    @property
    def rows(self) -> dict[int, tuple[int, ...]]:
        if not self.entries:
            return {}
        lo, hi = min(self.strands), max(self.strands)
        width = self.columns
        return {ell: tuple(self[i, i + ell] for i in range(width)) for ell in range(lo, hi + 1)}

    @property
    def totals(self) -> tuple[int, ...]:
        out = [0] * self.columns
        for (i, _), b in self.entries.items():
            out[i] += b
        return tuple(out)

    def shape(self) -> frozenset[tuple[int, int]]:
        """Support as (i, ell) pairs."""
        return frozenset((i, j - i) for i, j in self.entries)

    def generator_degrees(self) -> list[int]:
        return sorted(j for i, j in self.entries if i == 0)


def regularity(B: BettiTable) -> int:
    """max{j - i : beta_{i,j} != 0}."""
    if not B.entries:
        raise ValueError("regularity of an empty Betti table")
    return max(j - i for i, j in B.entries)


# ---------------------------------------------------------------------------
# Koszul combinatorics
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def subsets(n: int, p: int) -> tuple[int, ...]:
    """p-subsets of {0..n-1} as bitmasks, in increasing bitmask order."""
    return tuple(sorted(sum(1 << t for t in c) for c in combinations(range(n), p)))


@lru_cache(maxsize=None)
def subset_index(n: int, p: int) -> dict[int, int]:
    return {T: k for k, T in enumerate(subsets(n, p))}


@lru_cache(maxsize=None)
def boundary_terms(T: int) -> tuple[tuple[int, int, int], ...]:
    """(t, T without t, sign) with the sign (-1)^position of t in T."""
    out = []
    pos = 0
    t = 0
    while T >> t:
        if T >> t & 1:
            out.append((t, T & ~(1 << t), -1 if pos % 2 else 1))
            pos += 1
        t += 1
    return tuple(out)


def _free_koszul_rank(n: int, p: int, t: int) -> int:
    """Rank of the Koszul differential on S from wedge^p (x) S_{t-p}, t >= 1 (exactness)."""
    return sum((-1) ** (q - p) * comb(n, q) * dim_S(n, t - q) for q in range(p, n + 1))


def default_degree_cap(I: GradedIdeal | MonomialIdeal) -> int:
    """(sum of generator degrees) - (number of generators) + 1 + n.

    A Taylor-type bound: sound for monomial ideals, a heuristic otherwise.
    """
    degs = I.degrees
    return sum(degs) - len(degs) + 1 + I.n


# ---------------------------------------------------------------------------
# engine 1: Koszul homology of S/I
# ---------------------------------------------------------------------------


def _quotient_rank(Q: GradedQuotient, p: int, t: int) -> int:
    """Rank of d_p : wedge^p (x) Q_{t-p} -> wedge^{p-1} (x) Q_{t-p+1}."""
    n = Q.n
    src, dst = t - p, t - p + 1
    if p < 1 or p > n or src < 0:
        return 0
    qs, qd = Q.dim(src), Q.dim(dst)
    if qs == 0 or qd == 0:
        return 0
    if Q.is_full(src) and Q.is_full(dst) and t >= 1:
        return _free_koszul_rank(n, p, t)
    images = Q.mult[src]
    target = subset_index(n, p - 1)

    def rows():
        for T in subsets(n, p):
            terms = boundary_terms(T)
            for b in range(qs):
                row: dict[int, object] = {}
                for var, rest, sign in terms:
                    base = target[rest] * qd
                    for c, v in images[var][b].items():
                        key = base + c
                        x = row.get(key, 0) + sign * v
                        if x:
                            row[key] = x
                        else:
                            row.pop(key, None)
                yield row

    bound = min(comb(n, p) * qs, comb(n, p - 1) * qd)
    return sparse_rank(rows(), prime=Q.prime, bound=bound)


def quotient_betti(Q: GradedQuotient, degree_cap: int, engine: str = "koszul") -> BettiTable:
    """Betti table of the ideal J from a model of S/J, for internal degrees <= degree_cap."""
    n = Q.n
    Q.extend_to(degree_cap)
    entries = {}
    for t in range(1, degree_cap + 1):
        ranks = [_quotient_rank(Q, p, t) for p in range(n + 2)]
        for p in range(1, n + 1):
            h = comb(n, p) * Q.dim(t - p) - ranks[p] - ranks[p + 1]
            if h:
                entries[(p - 1, t)] = h
    return BettiTable(n, entries, engine=engine, degree_cap=degree_cap)


def _monomial_koszul_betti(gens: list[tuple[int, ...]], n: int, degree_cap: int) -> dict:
    """Koszul homology of S/I for monomial I, one multidegree a <= lcm at a time."""
    ideal = MonomialIdeal(n, tuple(gens))
    L = ideal.lcm()
    member_cache: dict[tuple[int, ...], bool] = {}

    def standard(u):
        r = member_cache.get(u)
        if r is None:
            r = u not in ideal
            member_cache[u] = r
        return r

    entries: dict[tuple[int, int], int] = {}
    for a in np.ndindex(*(e + 1 for e in L)):
        total = sum(a)
        if total == 0 or total > degree_cap:
            continue
        supp = [t for t in range(n) if a[t] > 0]
        cells: dict[int, list[int]] = {}
        for p in range(len(supp) + 1):
            for c in combinations(supp, p):
                u = list(a)
                for t in c:
                    u[t] -= 1
                if standard(tuple(u)):
                    cells.setdefault(p, []).append(sum(1 << t for t in c))
        if not cells:
            continue
        index = {p: {T: k for k, T in enumerate(Ts)} for p, Ts in cells.items()}
        ranks = {}
        for p, Ts in cells.items():
            if p == 0 or p - 1 not in cells:
                ranks[p] = 0
                continue
            rows = []
            for T in Ts:
                row = {}
                for _, rest, sign in boundary_terms(T):
                    k = index[p - 1].get(rest)
                    if k is not None:
                        row[k] = sign
                rows.append(row)
            ranks[p] = sparse_rank(rows)
        for p, Ts in cells.items():
            if p == 0:
                continue
            h = len(Ts) - ranks.get(p, 0) - ranks.get(p + 1, 0)
            if h:
                entries[(p - 1, total)] = entries.get((p - 1, total), 0) + h
    return entries


# ---------------------------------------------------------------------------
# engine 2: Koszul homology of I itself (oracle)
# ---------------------------------------------------------------------------


def _ideal_koszul_betti(I: GradedIdeal, degree_cap: int) -> dict:
    n = I.n
    bases = {d: component_basis(I, d).basis for d in range(degree_cap + 1)}
    entries = {}

    def rank_d(p: int, t: int) -> int:
        src = t - p
        if p < 1 or src < 0 or not bases.get(src):
            return 0
        index = monomial_index(n, src + 1)
        mons = monomials_of_degree(n, src)
        size = dim_S(n, src + 1)
        target = subset_index(n, p - 1)
        rows = []
        for T in subsets(n, p):
            for vec in bases[src]:
                row = {}
                for var, rest, sign in boundary_terms(T):
                    base = target[rest] * size
                    for k, c in enumerate(vec):
                        if c:
                            m = mons[k]
                            key = base + index[m[:var] + (m[var] + 1,) + m[var + 1 :]]
                            row[key] = row.get(key, 0) + sign * c
                rows.append({k: v for k, v in row.items() if v})
        return sparse_rank(rows)

    for t in range(degree_cap + 1):
        ranks = [rank_d(p, t) for p in range(n + 2)]
        for i in range(n + 1):
            dim = comb(n, i) * len(bases.get(t - i, ())) if t - i >= 0 else 0
            h = dim - ranks[i] - ranks[i + 1]
            if h:
                entries[(i, t)] = h
    return entries


# ---------------------------------------------------------------------------
# engine 3: upper Koszul simplicial complexes (monomial ideals)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def reduced_homology(faces: frozenset[int]) -> tuple[int, ...]:
    """Ranks of reduced homology H~_{-1}, H~_0, ... of a simplicial complex.

    Faces are vertex bitmasks; the empty face is 0.  The void complex
    (no faces at all) has zero homology in every degree.
    """
    if 0 not in faces:
        return ()
    by_dim: dict[int, list[int]] = {}
    for F in faces:
        by_dim.setdefault(F.bit_count() - 1, []).append(F)
    top = max(by_dim)
    index = {k: {F: i for i, F in enumerate(sorted(Fs))} for k, Fs in by_dim.items()}
    ranks = {}
    for k in range(0, top + 1):
        rows = []
        for F in index.get(k, {}):
            row = {}
            for _, rest, sign in boundary_terms(F):
                row[index[k - 1][rest]] = sign
            rows.append(row)
        ranks[k] = sparse_rank(rows)
    return tuple(
        len(index.get(k, ())) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(-1, top + 1)
    )


def membership_grid(I: MonomialIdeal, box: tuple[int, ...] | None = None) -> np.ndarray:
    """Boolean array over 0 <= a <= box (default lcm) with True where x^a lies in I."""
    box = I.lcm() if box is None else box
    grid = np.zeros(tuple(b + 1 for b in box), dtype=bool)
    for g in I.gens:
        if all(e <= b for e, b in zip(g, box)):
            grid[tuple(slice(e, None) for e in g)] = True
    return grid


def upper_koszul_entries(grid: np.ndarray, degree_cap: int | None = None) -> dict:
    """Sum over multidegrees a of dim H~_{i-1}(K^a) into (i, |a|) entries."""
    n = grid.ndim
    shape = grid.shape
    padded = np.pad(grid, [(1, 0)] * n, constant_values=False)
    faces = np.empty(shape + (1 << n,), dtype=bool)
    for F in range(1 << n):
        sl = tuple(slice(0, s) if F >> t & 1 else slice(1, s + 1) for t, s in enumerate(shape))
        faces[..., F] = padded[sl]
    total = np.indices(shape).sum(axis=0)
    keep = faces[..., 0]
    if degree_cap is not None:
        keep &= total <= degree_cap
    flat = faces[keep]
    degs = total[keep]
    if flat.size == 0:
        return {}
    packed = np.packbits(flat, axis=1, bitorder="little")
    degs16 = np.ascontiguousarray(degs.astype(np.uint16))
    keys = np.concatenate([packed, degs16.view(np.uint8).reshape(len(degs16), 2)], axis=1)
    uniq, first, counts = np.unique(keys, axis=0, return_index=True, return_counts=True)
    entries: dict[tuple[int, int], int] = {}
    for idx, cnt in zip(first, counts):
        mask = flat[idx]
        face_set = frozenset(int(F) for F in np.flatnonzero(mask))
        hom = reduced_homology(face_set)
        j = int(degs[idx])
        for k, h in enumerate(hom):
            if h:
                i = k  # H~_{i-1} sits at position i of the tuple
                entries[(i, j)] = entries.get((i, j), 0) + int(h) * int(cnt)
    return entries


def betti_table_monomial(I: MonomialIdeal, degree_cap: int | None = None) -> BettiTable:
    """Betti table of a monomial ideal from the upper Koszul simplicial complexes."""
    grid = membership_grid(I)
    return BettiTable(I.n, upper_koszul_entries(grid, degree_cap), engine="upper-koszul")


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def _check_cap(B: BettiTable, cap: int) -> None:
    if any(j == cap for _, j in B.entries):
        warnings.warn(
            f"nonzero Betti number at the degree cap {cap}; the table may be truncated, "
            f"retry with a larger cap (e.g. {cap + 2 + B.n})",
            TruncationWarning,
            stacklevel=3,
        )


def betti_table(
    I: GradedIdeal | MonomialIdeal,
    degree_cap: int | None = None,
    engine: str = "koszul",
    prime: int | None = None,
) -> BettiTable:
    """beta_{i,j}(I) for all internal degrees j <= degree_cap.

    ``engine`` is ``"koszul"`` (quotient Koszul homology), ``"ideal"``
    (Koszul homology on I, slow) or ``"upper-koszul"`` (monomial only).
    A ``prime`` switches the koszul engine to GF(p) arithmetic; the result
    is labelled ``prime-field-heuristic``.
    """
    if isinstance(I, MonomialIdeal):
        if engine == "upper-koszul":
            return betti_table_monomial(I, degree_cap)
        I = I.to_graded()
    if engine == "upper-koszul":
        if not I.is_monomial():
            raise ValueError("the upper-koszul engine needs a monomial ideal")
        return betti_table_monomial(MonomialIdeal(I.n, tuple(I.monomial_generators())), degree_cap)
    if degree_cap is None:
        degree_cap = default_degree_cap(I)
    if degree_cap < max(I.degrees):
        raise ValueError(f"degree cap {degree_cap} is below the generator degree {max(I.degrees)}")
    if engine == "ideal":
        B = BettiTable(I.n, _ideal_koszul_betti(I, degree_cap), engine="ideal", degree_cap=degree_cap)
    elif engine == "koszul":
        if I.is_monomial() and prime is None:
            entries = _monomial_koszul_betti(I.monomial_generators(), I.n, degree_cap)
            B = BettiTable(I.n, entries, engine="koszul", degree_cap=degree_cap)
        else:
            Q = GradedQuotient.from_ideal(I, prime)
            label = "koszul" if prime is None else "prime-field-heuristic"
            B = quotient_betti(Q, degree_cap, engine=label)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    _check_cap(B, degree_cap)
    return B


def power_betti_table(I: GradedIdeal | MonomialIdeal, k: int, degree_cap: int | None = None,
                      engine: str = "auto") -> BettiTable:
    """Betti table of m^k I.  The default cap is ``default_degree_cap(I) + k``,
    using reg(m^k I) <= reg(I) + k."""
    if degree_cap is None:
        degree_cap = default_degree_cap(I) + k
    if isinstance(I, GradedIdeal) and I.is_monomial():
        I = MonomialIdeal(I.n, tuple(I.monomial_generators()))
    if isinstance(I, MonomialIdeal):
        P = power_product(I, k)
        if engine in ("auto", "upper-koszul"):
            return betti_table_monomial(P)
        return betti_table(P, degree_cap, engine=engine)
    engine = "koszul" if engine == "auto" else engine
    return betti_table(I.times_monomials(k), degree_cap, engine=engine)


# ---------------------------------------------------------------------------
# truncations, initial degree, W_k
# ---------------------------------------------------------------------------


def initial_degree(I: GradedIdeal | MonomialIdeal) -> int:
    return min(I.degrees)


def truncation_component(I: GradedIdeal, d: int) -> GradedIdeal | None:
    """The ideal I_<d> generated by I_d; None when I_d = 0."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    basis = component_basis(I, d)
    if basis.dimension == 0:
        return None
    return GradedIdeal(I.n, tuple(basis.polynomials()), I.names)


def monomial_truncation(I: MonomialIdeal, d: int) -> MonomialIdeal | None:
    gens = [u for u in monomials_of_degree(I.n, d) if u in I]
    return MonomialIdeal(I.n, tuple(gens)) if gens else None


@dataclass(frozen=True)
class HilbertSlice:
    """degree j -> dimension of a graded piece (only nonzero values stored)."""

    values: Mapping[int, int]

    def __post_init__(self):
        if any(v < 0 for v in self.values.values()):
            raise ValueError("dimensions are nonnegative")
        object.__setattr__(self, "values", {j: v for j, v in sorted(self.values.items()) if v})

    def __getitem__(self, j: int) -> int:
        return self.values.get(j, 0)

    @property
    def support(self) -> list[int]:
        return list(self.values)


def hilbert_W(I: GradedIdeal | MonomialIdeal, k: int, prime: int | None = None) -> HilbertSlice:
    """j -> dim (m^k I)_j - dim (m^{k+1} I)_j, i.e. the graded pieces of m^k I / m^{k+1} I."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if isinstance(I, GradedIdeal) and I.is_monomial():
        I = MonomialIdeal(I.n, tuple(I.monomial_generators()))
    if isinstance(I, MonomialIdeal):
        P, P1 = power_product(I, k), power_product(I, k + 1)
        top = max(P.degrees)
        values = {}
        for j in range(min(P.degrees), top + 1):
            values[j] = sum(1 for u in monomials_of_degree(I.n, j) if u in P and u not in P1)
        return HilbertSlice(values)
    A = GradedQuotient.from_ideal(I.times_monomials(k), prime)
    B = GradedQuotient.from_ideal(I.times_monomials(k + 1), prime)
    top = max(I.degrees) + k
    return HilbertSlice({j: B.dim(j) - A.dim(j) for j in range(top + 1)})
