"""Degree-by-degree model of the quotient ring S/J.

Only two things about S/J are needed to write down its Koszul complex:
the graded pieces Q_d = (S/J)_d and the multiplication maps
x_t : Q_d -> Q_{d+1}.  They are built inductively from

    Q_{d+1} = (S_1 (x) Q_d) / (Koszul relations from Q_{d-1} + new generators),

because S_{d+1} = S_1 S_d and the kernel of S_1 (x) S_d -> S_{d+1} is spanned
by x_s (x) x_t m - x_t (x) x_s m.  The pieces stay small even when S_d is
huge, which is what makes exact Betti computations of m^k I cheap.

While Q_d = S_d ("full" degrees, below the initial degree of J) the
monomial basis is used directly.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from .linalg import ReducedEchelon
from .polynomial import GradedIdeal, Monomial, Polynomial, monomial_index, monomials_of_degree

Vector = dict  # basis index -> coefficient


class GradedQuotient:
    """The graded pieces of S/J up to some degree, extended on demand.

    ``dims[d]`` is dim (S/J)_d, ``full[d]`` says whether (S/J)_d = S_d with
    its monomial basis, and ``mult[d][t][b]`` is the image of basis vector
    ``b`` of Q_d under multiplication by x_t, as a sparse vector of Q_{d+1}.
    """

    def __init__(self, n: int, generators_by_degree: dict[int, list[Polynomial]], prime: int | None = None):
        self.n = n
        self.prime = prime
        self._gens = {d: list(gs) for d, gs in generators_by_degree.items() if gs}
        self.dims: list[int] = []
        self.full: list[bool] = []
        self.mult: list[list[list[Vector]]] = []
        self._nf: dict[Monomial, Vector] = {}
        self._start()

    @classmethod
    def from_ideal(cls, I: GradedIdeal, prime: int | None = None) -> "GradedQuotient":
        by_deg: dict[int, list[Polynomial]] = defaultdict(list)
        for g in I.generators:
            by_deg[g.degree].append(g)
        return cls(I.n, dict(by_deg), prime)

    @classmethod
    def truncation(cls, parent: "GradedQuotient", j: int) -> "GradedQuotient":
        """S / J_<j> where J_<j> is generated by the degree-j piece of the parent ideal."""
        parent.extend_to(j)
        if parent.full[j]:
            raise ValueError(f"the ideal has no elements of degree {j}")
        self = cls.__new__(cls)
        self.n = parent.n
        self.prime = parent.prime
        self._gens = {}
        self._nf = {}
        self.dims, self.full, self.mult = [], [], []
        n = self.n
        for d in range(j):
            self.dims.append(len(monomials_of_degree(n, d)))
            self.full.append(True)
        for d in range(j - 1):
            self.mult.append(self._full_to_full(d))
        self.dims.append(parent.dims[j])
        self.full.append(False)
        if j >= 1:
            lower = monomials_of_degree(n, j - 1)
            self.mult.append(
                [[parent.normal_form(_times_var(m, t)) for m in lower] for t in range(n)]
            )
        return self

    # -- construction ------------------------------------------------------

    def _start(self) -> None:
        gens0 = self._gens.get(0)
        if gens0:
            # a nonzero constant generates the unit ideal
            self.dims.append(0)
            self.full.append(False)
        else:
            self.dims.append(1)
            self.full.append(True)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def extend_to(self, d: int) -> None:
        while self.top < d:
            self._step()

    def _full_to_full(self, d: int) -> list[list[Vector]]:
        n = self.n
        index = monomial_index(n, d + 1)
        mons = monomials_of_degree(n, d)
        return [[{index[_times_var(m, t)]: 1} for m in mons] for t in range(n)]

    def _step(self) -> None:
        d = self.top
        n = self.n
        new_gens = self._gens.get(d + 1, [])
        if self.dims[d] == 0:
            self.mult.append([[] for _ in range(n)])
            self.dims.append(0)
            self.full.append(False)
            return
        if self.full[d] and not new_gens:
            self.mult.append(self._full_to_full(d))
            self.dims.append(len(monomials_of_degree(n, d + 1)))
            self.full.append(True)
            return
        if self.full[d]:
            self._step_from_full(d, new_gens)
        else:
            self._step_abstract(d, new_gens)

    def _step_from_full(self, d: int, new_gens: Sequence[Polynomial]) -> None:
        n = self.n
        ech = ReducedEchelon(self.prime)
        for g in new_gens:
            ech.add(g.coefficient_vector())
        size = len(monomials_of_degree(n, d + 1))
        self._finish_step(d, ech, size, lambda t, b: {_index_times_var(n, d, b, t): 1})

    def _step_abstract(self, d: int, new_gens: Sequence[Polynomial]) -> None:
        n = self.n
        q = self.dims[d]
        ech = ReducedEchelon(self.prime)
        if d >= 1:
            below = self.mult[d - 1]
            for b in range(self.dims[d - 1]):
                for s in range(n):
                    for t in range(s + 1, n):
                        rel: Vector = {}
                        for c, v in below[t][b].items():
                            rel[s * q + c] = rel.get(s * q + c, 0) + v
                        for c, v in below[s][b].items():
                            rel[t * q + c] = rel.get(t * q + c, 0) - v
                        ech.add(rel)
        for g in new_gens:
            ech.add(self._lift_to_products(g, d))
        self._finish_step(d, ech, n * q, lambda t, b: {t * q + b: 1})

    def _finish_step(self, d: int, ech: ReducedEchelon, size: int, unit) -> None:
        """Record Q_{d+1} as the complement of the pivots of ``ech`` in a space of dim ``size``."""
        n = self.n
        free = [c for c in range(size) if c not in ech.pivots]
        position = {c: k for k, c in enumerate(free)}
        maps = []
        for t in range(n):
            images = []
            for b in range(self.dims[d]):
                red = ech.reduce(unit(t, b))
                images.append({position[c]: v for c, v in red.items()})
            maps.append(images)
        self.mult.append(maps)
        self.dims.append(len(free))
        self.full.append(False)

    def _lift_to_products(self, g: Polynomial, d: int) -> Vector:
        """g in degree d+1 written in S_1 (x) Q_d, splitting off the first variable of each term."""
        q = self.dims[d]
        out: Vector = {}
        for m, c in g.terms.items():
            t = next(i for i, a in enumerate(m) if a)
            lower = list(m)
            lower[t] -= 1
            for b, v in self.normal_form(tuple(lower)).items():
                key = t * q + b
                out[key] = out.get(key, 0) + c * v
        return out

    # -- queries -----------------------------------------------------------

    def normal_form(self, u: Monomial) -> Vector:
        """Coordinates of the class of the monomial ``u`` in Q_{deg u}."""
        d = sum(u)
        self.extend_to(d)
        if self.full[d]:
            return {monomial_index(self.n, d)[u]: 1}
        cached = self._nf.get(u)
        if cached is not None:
            return cached
        t = next(i for i, a in enumerate(u) if a)
        lower = list(u)
        lower[t] -= 1
        out: Vector = {}
        p = self.prime
        images = self.mult[d - 1][t]
        for b, v in self.normal_form(tuple(lower)).items():
            for c, w in images[b].items():
                x = out.get(c, 0) + v * w
                if p is not None:
                    x %= p
                if x:
                    out[c] = x
                else:
                    out.pop(c, None)
        self._nf[u] = out
        return out

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        self.extend_to(d)
        return self.dims[d]

    def is_full(self, d: int) -> bool:
        if d < 0:
            return False
        self.extend_to(d)
        return self.full[d]

    def ideal_dim(self, d: int) -> int:
        """dim J_d = dim S_d - dim (S/J)_d."""
        return len(monomials_of_degree(self.n, d)) - self.dim(d)


def _times_var(m: Monomial, t: int) -> Monomial:
    return m[:t] + (m[t] + 1,) + m[t + 1 :]


def _index_times_var(n: int, d: int, b: int, t: int) -> int:
    m = monomials_of_degree(n, d)[b]
    return monomial_index(n, d + 1)[_times_var(m, t)]
