"""Exact linear algebra over the rationals, with an optional prime-field mode.

Two families of routines live here:

* ``RationalMatrix`` with dense fraction-free (Bareiss) rank, used for the
  public rank/kernel contract and as an oracle in tests;
* ``SparseEchelon``, an incremental row echelon form over sparse rows
  (``dict`` column -> value), used by the Betti engines where rows arrive
  one by one and most entries vanish.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

#: Default prime for the heuristic prime-field path (> 2**30).
DEFAULT_PRIME = 2_147_483_647

SparseRow = dict  # column index -> nonzero coefficient


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix with exact rational entries (stored row-major)."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, data: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        data = [tuple(_as_fraction(x) for x in row) for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise ValueError("ragged matrix rows")
        return cls(len(data), cols, tuple(data))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self.entries[i][j]

    def rank(self, prime: int | None = None) -> int:
        return rank(self, prime=prime)

    def kernel_dim(self, prime: int | None = None) -> int:
        return kernel_dim(self, prime=prime)


def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, _as_fraction(x).denominator)
        out.append([int(_as_fraction(x) * den) for x in row])
    return out


def bareiss_rank(int_rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free Bareiss elimination.

    The matrix is consumed (modified in place).
    """
    m = int_rows
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            for k in range(c + 1, ncols):
                # exact division is the Bareiss invariant
                row_i[k] = (p * row_i[k] - a * row_r[k]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in row] for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        row_r = [(x * inv) % p for x in m[r]]
        m[r] = row_r
        for i in range(r + 1, nrows):
            a = m[i][c]
            if a:
                m[i] = [(x - a * y) % p for x, y in zip(m[i], row_r)]
        r += 1
        if r == nrows:
            break
    return r


def rank(M: RationalMatrix, prime: int | None = None) -> int:
    """Exact rank; with ``prime`` the rank of the reduction mod p (heuristic)."""
    if M.rows == 0 or M.cols == 0:
        return 0
    rows = _integer_rows(M.entries)
    if prime is not None:
        return _rank_mod_p(rows, prime)
    return bareiss_rank(rows)


def kernel_dim(M: RationalMatrix, prime: int | None = None) -> int:
    return M.cols - rank(M, prime=prime)


class SparseEchelon:
    """Incrementally built row echelon basis of a subspace.

    Over the rationals rows are kept as primitive integer vectors and
    reduced fraction-free, ``row <- p*row - a*pivot`` followed by division
    by the content.  With ``prime`` everything is reduced mod p.
    Use :meth:`add` to insert rows and read :attr:`rank`.
    """

    def __init__(self, prime: int | None = None):
        self.prime = prime
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _normalize(self, row: Mapping) -> dict[int, int]:
        if self.prime is not None:
            p = self.prime
            out = {}
            for k, v in row.items():
                v = _as_fraction(v)
                x = (v.numerator * pow(v.denominator, -1, p)) % p
                if x:
                    out[k] = x
            return out
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        out = {k: int(v * den) for k, v in row.items() if v}
        return out

    def add(self, row: Mapping) -> bool:
        """Insert ``row``; return True if it enlarged the span."""
        vec = self._normalize(row)
        p = self.prime
        pivots = self.pivots
        while vec:
            c = min(vec)
            piv = pivots.get(c)
            if piv is None:
                if p is None:
                    g = 0
                    for v in vec.values():
                        g = gcd(g, v)
                    if vec[c] < 0:
                        g = -g
                    vec = {k: v // g for k, v in vec.items()}
                else:
                    inv = pow(vec[c], -1, p)
                    vec = {k: (v * inv) % p for k, v in vec.items()}
                pivots[c] = vec
                return True
            a = vec[c]
            if p is None:
                b = piv[c]
                g = gcd(a, b)
                fa, fb = b // g, a // g
                new = {k: fa * v for k, v in vec.items()}
                for k, v in piv.items():
                    x = new.get(k, 0) - fb * v
                    if x:
                        new[k] = x
                    else:
                        new.pop(k, None)
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    new = {k: v // g for k, v in new.items()}
                vec = new
            else:
                new = dict(vec)
                for k, v in piv.items():
                    x = (new.get(k, 0) - a * v) % p
                    if x:
                        new[k] = x
                    else:
                        new.pop(k, None)
                vec = new
        return False


def sparse_rank(rows: Iterable[Mapping], prime: int | None = None, bound: int | None = None) -> int:
    """Rank of a family of sparse rows; stops early once ``bound`` is reached."""
    ech = SparseEchelon(prime)
    for row in rows:
        if row:
            ech.add(row)
            if bound is not None and ech.rank >= bound:
                break
    return ech.rank


class ReducedEchelon:
    """Reduced row echelon form over Q (``Fraction``) or GF(p), built incrementally.

    Supports reduction of arbitrary vectors to normal form modulo the span,
    which is what quotient-space computations need.
    """

    def __init__(self, prime: int | None = None):
        self.prime = prime
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _coerce(self, row: Mapping) -> dict:
        p = self.prime
        if p is None:
            return {k: _as_fraction(v) for k, v in row.items() if v}
        out = {}
        for k, v in row.items():
            v = _as_fraction(v)
            x = (v.numerator * pow(v.denominator, -1, p)) % p
            if x:
                out[k] = x
        return out

    def reduce(self, row: Mapping) -> dict:
        """Normal form of ``row``: no pivot column survives."""
        vec = self._coerce(row)
        return self._reduce(vec)

    def _reduce(self, vec: dict) -> dict:
        p = self.prime
        for c in [k for k in vec if k in self.pivots]:
            a = vec.get(c)
            if not a:
                continue
            for k, v in self.pivots[c].items():
                x = vec.get(k, 0) - a * v
                if p is not None:
                    x %= p
                if x:
                    vec[k] = x
                else:
                    vec.pop(k, None)
        return vec

    def add(self, row: Mapping) -> bool:
        vec = self._reduce(self._coerce(row))
        if not vec:
            return False
        p = self.prime
        c = min(vec)
        a = vec[c]
        if p is None:
            vec = {k: v / a for k, v in vec.items()}
        else:
            inv = pow(a, -1, p)
            vec = {k: (v * inv) % p for k, v in vec.items()}
        # keep the form reduced: eliminate c from existing pivots
        for piv in self.pivots.values():
            b = piv.get(c)
            if b:
                for k, v in vec.items():
                    x = piv.get(k, 0) - b * v
                    if p is not None:
                        x %= p
                    if x:
                        piv[k] = x
                    else:
                        piv.pop(k, None)
        self.pivots[c] = vec
        return True


def kernel_basis(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : M v = 0} for a dense rational matrix given by rows."""
    ech = ReducedEchelon()
    for row in rows:
        ech.add({j: x for j, x in enumerate(row) if x})
    free = [j for j in range(ncols) if j not in ech.pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for c, piv in ech.pivots.items():
            coef = piv.get(f)
            if coef:
                v[c] = -coef
        basis.append(v)
    return basis
