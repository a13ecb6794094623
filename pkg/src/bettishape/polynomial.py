"""Monomials, homogeneous polynomials and graded ideals of S = K[x_1..x_n].

Monomials are plain tuples of nonnegative exponents.  Inside a fixed degree
they are ordered graded-lexicographically with x_1 > x_2 > ... > x_n, so
``monomials_of_degree(n, d)[0]`` is ``x_1^d``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .linalg import ReducedEchelon

Monomial = tuple[int, ...]


def degree(u: Monomial) -> int:
    return sum(u)


def one(n: int) -> Monomial:
    return (0,) * n


def variable(n: int, i: int) -> Monomial:
    return tuple(int(k == i) for k in range(n))


def mul(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(u, v))


def divides(u: Monomial, v: Monomial) -> bool:
    return all(a <= b for a, b in zip(u, v))


def div(v: Monomial, u: Monomial) -> Monomial:
    return tuple(b - a for a, b in zip(u, v))


def gcd_monomial(u: Monomial, v: Monomial) -> Monomial:
    return tuple(min(a, b) for a, b in zip(u, v))


def lcm_monomial(u: Monomial, v: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(u, v))


def monomial_colon(u: Monomial, v: Monomial) -> Monomial:
    """``u : v = u / gcd(u, v)``."""
    return tuple(max(a - b, 0) for a, b in zip(u, v))


def support(u: Monomial) -> frozenset[int]:
    """Indices (0-based) of the variables dividing ``u``."""
    return frozenset(i for i, a in enumerate(u) if a > 0)


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple[Monomial, ...]:
    """All monomials of degree ``d`` in ``n`` variables, graded-lex descending."""
    if d < 0:
        return ()
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_of_degree(n, d))}


def dim_S(n: int, d: int) -> int:
    """dim_K S_d = C(d+n-1, n-1)."""
    if d < 0:
        return 0
    return comb(d + n - 1, n - 1)


def format_monomial(u: Monomial, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = default_names(len(u))
    parts = []
    for name, a in zip(names, u):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts) if parts else "1"


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


class Polynomial:
    """Finite map monomial -> nonzero rational coefficient.

    Treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        self.n = n
        clean = {}
        for m, c in (terms or {}).items():
            if len(m) != n:
                raise ValueError(f"monomial {m} has wrong length for n={n}")
            c = Fraction(c)
            if c:
                clean[tuple(m)] = c
        self.terms: dict[Monomial, Fraction] = clean
        self._hash = None

    @classmethod
    def monomial(cls, u: Monomial, coeff=1) -> "Polynomial":
        return cls(len(u), {u: coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(self.n, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.n, {m: c * v for m, v in self.terms.items()})

    def times_monomial(self, u: Monomial) -> "Polynomial":
        return Polynomial(self.n, {mul(m, u): c for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial(self.n, terms)

    @property
    def degrees(self) -> set[int]:
        return {degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int:
        degs = self.degrees
        if len(degs) != 1:
            raise ValueError("degree is only defined for nonzero homogeneous polynomials")
        return next(iter(degs))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient_vector(self) -> dict[int, Fraction]:
        """Sparse coordinates in the graded-lex monomial basis of S_deg."""
        index = monomial_index(self.n, self.degree)
        return {index[m]: c for m, c in self.terms.items()}

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (degree(t[0]), t[0]), reverse=True)

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = format_monomial(m, names)
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({self.format()})"


@dataclass(frozen=True)
class GradedIdeal:
    """Ideal of S generated by nonzero homogeneous polynomials.

    Generators are stored degree-ascending (stable with respect to input
    order).  ``names`` only matter for printing and parsing.
    """

    n: int
    generators: tuple[Polynomial, ...]
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.generators:
            raise ValueError("an ideal needs at least one generator (the zero ideal is not allowed)")
        for g in self.generators:
            if g.n != self.n:
                raise ValueError("generator lives in a ring with a different number of variables")
            if not g:
                raise ValueError("zero generator")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g.format()} is not homogeneous (degrees {sorted(g.degrees)})")
        ordered = tuple(sorted(self.generators, key=lambda g: g.degree))
        object.__setattr__(self, "generators", ordered)
        if not self.names:
            object.__setattr__(self, "names", default_names(self.n))

    @classmethod
    def from_monomials(cls, gens: Iterable[Monomial], names: Sequence[str] = ()) -> "GradedIdeal":
        gens = [tuple(g) for g in gens]
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        return cls(len(gens[0]), tuple(Polynomial.monomial(g) for g in gens), tuple(names))

    @property
    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def monomial_generators(self) -> list[Monomial]:
        if not self.is_monomial():
            raise ValueError("ideal is not generated by monomials")
        return [next(iter(g.terms)) for g in self.generators]

    def times_monomials(self, k: int) -> "GradedIdeal":
        """Generators of m^k * I (not minimalized)."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        if k == 0:
            return self
        mons = monomials_of_degree(self.n, k)
        gens = []
        seen = set()
        for g in self.generators:
            for u in mons:
                h = g.times_monomial(u)
                if h not in seen:
                    seen.add(h)
                    gens.append(h)
        return GradedIdeal(self.n, tuple(gens), self.names)

    def format(self) -> str:
        return "(" + ", ".join(g.format(self.names) for g in self.generators) + ")"


@dataclass(frozen=True)
class DegreeComponentBasis:
    """Basis of the graded piece I_d as coefficient vectors over S_d's monomial basis."""

    n: int
    degree: int
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def polynomials(self) -> list[Polynomial]:
        mons = monomials_of_degree(self.n, self.degree)
        return [Polynomial(self.n, {mons[j]: c for j, c in enumerate(v) if c}) for v in self.basis]


def component_basis(I: GradedIdeal, d: int) -> DegreeComponentBasis:
    """Row-reduced basis of I_d = span{u*g : deg u = d - deg g}."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    n = I.n
    ech = ReducedEchelon()
    for g in I.generators:
        e = d - g.degree
        if e < 0:
            continue
        for u in monomials_of_degree(n, e):
            ech.add(g.times_monomial(u).coefficient_vector())
    size = dim_S(n, d)
    basis = []
    for c in sorted(ech.pivots):
        row = ech.pivots[c]
        basis.append(tuple(Fraction(row.get(j, 0)) for j in range(size)))
    return DegreeComponentBasis(n, d, tuple(basis))
