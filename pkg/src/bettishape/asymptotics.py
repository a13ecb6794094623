"""Executable checks for the eventual shape of the Betti tables of m^k I.

Everything here is computed from Betti tables of the powers m^k I and of
their truncations.  Results are cached per ideal, so asking several
questions about the same ideal costs one set of table computations.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .betti import (
    BettiTable,
    HilbertSlice,
    betti_table_monomial,
    default_degree_cap,
    hilbert_W,
    monomial_truncation,
    quotient_betti,
    regularity,
)
from .monomial_ideals import MonomialIdeal, power_product
from .polynomial import GradedIdeal
from .quotient import GradedQuotient

log = logging.getLogger(__name__)

DEFAULT_STABILIZATION_CAP = 30
#: consecutive powers that must be componentwise linear before c_I is accepted
SWEEP = 2


class TruncationError(RuntimeError):
    """A Betti table hit its degree cap, so the answer cannot be trusted."""


class StabilizationUnknown(RuntimeError):
    """No stabilization index was verified up to the cap."""

    def __init__(self, cap: int):
        super().__init__(f"c_I unknown: no verified componentwise linear power m^k I with k <= {cap}")
        self.cap = cap


def _normalize(I):
    if isinstance(I, GradedIdeal) and I.is_monomial():
        return MonomialIdeal(I.n, tuple(I.monomial_generators()))
    return I


class PowerFamily:
    """Lazily computed data about the ideals m^k I, k = 0, 1, 2, ...

    Monomial ideals use the upper-Koszul engine (exact, no degree cap).
    Other graded ideals use Koszul homology of S/m^k I; the cap for m^k I
    is reg(I) + k + n, valid because reg(m^k I) <= reg(I) + k, where reg(I)
    comes from a table with the default cap.
    """

    def __init__(self, I: GradedIdeal | MonomialIdeal, prime: int | None = None):
        self.ideal = _normalize(I)
        self.n = self.ideal.n
        self.prime = prime
        self.monomial = isinstance(self.ideal, MonomialIdeal)
        self._tables: dict[int, BettiTable] = {}
        self._cwl: dict[int, bool] = {}
        self._towers: dict[int, GradedQuotient] = {}
        self._powers: dict[int, MonomialIdeal] = {}

    @property
    def heuristic(self) -> bool:
        return self.prime is not None

    def power(self, k: int):
        if self.monomial:
            if k not in self._powers:
                self._powers[k] = self.ideal if k == 0 else power_product(self.power(k - 1), 1)
            return self._powers[k]
        return self.ideal.times_monomials(k)

    def tower(self, k: int) -> GradedQuotient:
        if k not in self._towers:
            self._towers[k] = GradedQuotient.from_ideal(self.power(k), self.prime)
        return self._towers[k]

    def cap(self, k: int) -> int:
        if k == 0:
            return default_degree_cap(self.ideal)
        return regularity(self.table(0)) + k + self.n

    def table(self, k: int) -> BettiTable:
        if k in self._tables:
            return self._tables[k]
        if self.monomial:
            B = betti_table_monomial(self.power(k))
        else:
            cap = self.cap(k)
            label = "koszul" if self.prime is None else "prime-field-heuristic"
            B = quotient_betti(self.tower(k), cap, engine=label)
            _require_below_cap(B, cap)
        self._tables[k] = B
        return B

    def generator_degrees(self, k: int) -> list[int]:
        return self.table(k).generator_degrees()

    def W(self, k: int) -> HilbertSlice:
        """Graded pieces of m^k I / m^{k+1} I (dimension differences of the two quotients)."""
        if self.monomial:
            return hilbert_W(self.ideal, k)
        A, B = self.tower(k), self.tower(k + 1)
        top = max(self.ideal.degrees) + k
        return HilbertSlice({j: B.dim(j) - A.dim(j) for j in range(top + 1)})

    def cwl(self, k: int) -> bool:
        if k not in self._cwl:
            self._cwl[k] = self._componentwise_linear(k)
        return self._cwl[k]

    def _componentwise_linear(self, k: int) -> bool:
        degs = self.generator_degrees(k)
        lo, hi = min(degs), max(degs)
        reg_N = regularity(self.table(k))
        passed_previous = False
        for j in range(lo, hi + 1):
            # Without new generators in degree j, N_<j> = m N_<j-1>, and m times an
            # ideal with linear resolution again has a linear resolution.
            if passed_previous and j not in degs:
                continue
            if self.monomial:
                J = monomial_truncation(self.power(k), j)
                B = betti_table_monomial(J)
            else:
                cap = max(reg_N, j) + self.n + 1
                label = "koszul" if self.prime is None else "prime-field-heuristic"
                B = quotient_betti(GradedQuotient.truncation(self.tower(k), j), cap, engine=label)
                _require_below_cap(B, cap)
            if regularity(B) != j:
                log.debug("m^%d I: truncation in degree %d has regularity %d", k, j, regularity(B))
                return False
            passed_previous = True
        return True


def _require_below_cap(B: BettiTable, cap: int) -> None:
    if any(j >= cap for _, j in B.entries):
        raise TruncationError(f"nonzero Betti number at degree cap {cap}; raise the cap")


@lru_cache(maxsize=256)
def family(I: GradedIdeal | MonomialIdeal, prime: int | None = None) -> PowerFamily:
    """Shared, cached PowerFamily for an ideal."""
    return PowerFamily(I, prime)


# ---------------------------------------------------------------------------
# componentwise linearity and c_I
# ---------------------------------------------------------------------------


def is_componentwise_linear(I: GradedIdeal | MonomialIdeal, prime: int | None = None) -> bool:
    """True iff every truncation I_<j>, alpha(I) <= j <= max generator degree, has a j-linear resolution."""
    return family(I, prime).cwl(0)


def stabilization_index(I: GradedIdeal | MonomialIdeal, cap: int = DEFAULT_STABILIZATION_CAP,
                        prime: int | None = None) -> int:
    """Smallest k <= cap with m^k I, m^{k+1} I, m^{k+2} I all componentwise linear."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    fam = family(I, prime)
    for k in range(cap + 1):
        if all(fam.cwl(k + s) for s in range(SWEEP + 1)):
            return k
    raise StabilizationUnknown(cap)


# ---------------------------------------------------------------------------
# strands
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StrandReport:
    k: int
    strands: tuple[int, ...]
    fullness: dict[int, bool]
    generator_degrees: tuple[int, ...]

    @property
    def all_full(self) -> bool:
        return all(self.fullness.values())


def strand_report(I, k: int, prime: int | None = None) -> StrandReport:
    fam = family(I, prime)
    B = fam.table(k)
    full = {ell: all(B[i, i + ell] for i in range(fam.n)) for ell in B.strands}
    return StrandReport(k, tuple(B.strands), full, tuple(B.generator_degrees()))


def pattern_shift_check(I, k: int, prime: int | None = None) -> bool:
    """Nonzero strands of m^{k+1} I are exactly those of m^k I shifted by one."""
    fam = family(I, prime)
    return {ell + 1 for ell in fam.table(k).strands} == set(fam.table(k + 1).strands)


def same_shape_check(I, k: int, prime: int | None = None) -> bool:
    """The Betti diagrams of m^k I and m^{k+1} I have the same support up to the shift."""
    fam = family(I, prime)
    return {(i, ell + 1) for i, ell in fam.table(k).shape()} == set(fam.table(k + 1).shape())


@dataclass(frozen=True)
class StrandDegreeVerdict:
    k: int
    offsets: tuple[int, ...]
    generator_degrees: tuple[int, ...]

    @property
    def contained(self) -> bool:
        return set(self.offsets) <= set(self.generator_degrees)

    @property
    def equal(self) -> bool:
        return set(self.offsets) == set(self.generator_degrees)


def strand_degree_check(I, k: int, prime: int | None = None) -> StrandDegreeVerdict:
    """Compare {ell - k : strand ell of m^k I nonzero} with the minimal generator degrees of I."""
    fam = family(I, prime)
    offsets = tuple(ell - k for ell in fam.table(k).strands)
    return StrandDegreeVerdict(k, offsets, tuple(sorted(set(fam.generator_degrees(0)))))


# ---------------------------------------------------------------------------
# the Tor identity along 0 -> m^k I -> m^{k-1} I -> W_{k-1} -> 0
# ---------------------------------------------------------------------------


def tor_exactness_defects(I, k: int, prime: int | None = None) -> list[tuple[int, int, int, int]]:
    """All (i, j, lhs, rhs) where beta_{i,j}(m^{k-1}I) + beta_{i-1,j}(m^k I) != C(n,i) dim (W_{k-1})_{j-i}."""
    if k < 1:
        raise ValueError("k must be at least 1")
    fam = family(I, prime)
    n = fam.n
    prev, cur, W = fam.table(k - 1), fam.table(k), fam.W(k - 1)
    points = set(prev.entries) | {(i + 1, j) for i, j in cur.entries}
    points |= {(i, i + d) for d in W.support for i in range(n + 1)}
    defects = []
    for i, j in sorted(points):
        lhs = prev[i, j] + (cur[i - 1, j] if i >= 1 else 0)
        rhs = comb(n, i) * W[j - i]
        if lhs != rhs:
            defects.append((i, j, lhs, rhs))
    return defects


def tor_exactness_check(I, k: int, prime: int | None = None) -> bool:
    return not tor_exactness_defects(I, k, prime)


# ---------------------------------------------------------------------------
# regularity conjecture harness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    ideal: str
    k: int
    kind: str  # "conjecture" or "formula"
    regularity: int
    predicted: int

    def as_dict(self) -> dict:
        return dict(ideal=self.ideal, k=self.k, kind=self.kind,
                    regularity=self.regularity, predicted=self.predicted)


@dataclass(frozen=True)
class ConjectureReport:
    """reg(m^k I) against max{j : (W_{c_I})_j != 0}.

    For 1 <= k <= c_I the conjectured value is the constant target; for
    k >= c_I the proven value is (k - c_I) + target.  Verdicts are derived
    from the stored numbers only.
    """

    ideal: str
    c_I: int
    regularities: dict[int, int]
    target: int
    heuristic: bool = False
    conjecture_verdicts: dict[int, bool] = field(init=False)
    formula_verdicts: dict[int, bool] = field(init=False)

    def __post_init__(self):
        c, target = self.c_I, self.target
        conj = {k: self.regularities[k] == target for k in range(1, c + 1)}
        form = {k: self.regularities[k] == k - c + target
                for k in sorted(self.regularities) if k >= c}
        object.__setattr__(self, "conjecture_verdicts", conj)
        object.__setattr__(self, "formula_verdicts", form)

    @property
    def conjecture_holds(self) -> bool:
        return all(self.conjecture_verdicts.values())

    @property
    def formula_holds(self) -> bool:
        return all(self.formula_verdicts.values())

    @property
    def counterexamples(self) -> list[Counterexample]:
        out = []
        for k, ok in self.conjecture_verdicts.items():
            if not ok:
                out.append(Counterexample(self.ideal, k, "conjecture", self.regularities[k], self.target))
        for k, ok in self.formula_verdicts.items():
            if not ok:
                out.append(Counterexample(self.ideal, k, "formula", self.regularities[k],
                                          k - self.c_I + self.target))
        return out

    def summary(self) -> str:
        c = self.c_I
        ks = sorted(self.formula_verdicts)
        conj = ("vacuous (c_I = 0)" if c == 0 else
                f"{'holds' if self.conjecture_holds else 'FAILS'} for k=1..{c}")
        form = f"formula {'holds' if self.formula_holds else 'FAILS'} k={ks[0]}..{ks[-1]}"
        return f"c_I={c}; target={self.target}; conjecture {conj}; {form}"

    def as_dict(self) -> dict:
        return dict(
            ideal=self.ideal,
            c_I=self.c_I,
            target=self.target,
            regularities={str(k): v for k, v in sorted(self.regularities.items())},
            conjecture={str(k): v for k, v in self.conjecture_verdicts.items()},
            formula={str(k): v for k, v in self.formula_verdicts.items()},
            conjecture_holds=self.conjecture_holds,
            formula_holds=self.formula_holds,
            counterexamples=[c.as_dict() for c in self.counterexamples],
            heuristic=self.heuristic,
        )


def _ideal_text(I) -> str:
    from .parsing import serialize_ideal

    return serialize_ideal(I)


def conjecture_check(I, cap: int = DEFAULT_STABILIZATION_CAP, prime: int | None = None) -> ConjectureReport:
    """Evaluate reg(m^k I) for k = 0..c_I+2 against the conjectured and proven values."""
    fam = family(I, prime)
    c = stabilization_index(I, cap, prime)
    regs = {k: regularity(fam.table(k)) for k in range(c + SWEEP + 1)}
    target = max(fam.W(c).support)
    return ConjectureReport(_ideal_text(fam.ideal), c, regs, target, heuristic=fam.heuristic)


def verify_counterexample(payload: Counterexample | dict) -> bool:
    """Recompute a flagged (ideal, k) pair from scratch; True if it is a genuine counterexample."""
    from .parsing import parse_ideal

    data = payload.as_dict() if isinstance(payload, Counterexample) else payload
    expr = parse_ideal(data["ideal"])
    I = expr.monomial if expr.monomial is not None else expr.ideal
    fresh = PowerFamily(I)
    k = data["k"]
    c = stabilization_index(I)
    target = max(fresh.W(c).support)
    reg = regularity(fresh.table(k))
    predicted = target if data["kind"] == "conjecture" else k - c + target
    return reg != predicted


# ---------------------------------------------------------------------------
# theorem property suite
# ---------------------------------------------------------------------------


def theorem_violations(I, cap: int = DEFAULT_STABILIZATION_CAP) -> list[str]:
    """Check the proved statements about m^k I near k = c_I; returns human-readable violations.

    (a) nonzero strands full at k = c+1, c+2; (b) strand shift at k = c, c+1;
    (c) same shape at k = c+1; (d) offsets within generator degrees at k = c;
    plus the Tor identity at k = c+1.  Exact arithmetic only.
    """
    c = stabilization_index(I, cap)
    out = []
    for k in (c + 1, c + 2):
        rep = strand_report(I, k)
        if not rep.all_full:
            out.append(f"(a) k={k}: strands {rep.fullness}")
    for k in (c, c + 1):
        if not pattern_shift_check(I, k):
            out.append(f"(b) k={k}: strand sets do not shift")
    if not same_shape_check(I, c + 1):
        out.append(f"(c) k={c + 1}: shapes differ")
    verdict = strand_degree_check(I, c)
    if not verdict.contained:
        out.append(f"(d) k={c}: offsets {verdict.offsets} not in {verdict.generator_degrees}")
    defects = tor_exactness_defects(I, c + 1)
    if defects:
        out.append(f"Tor identity at k={c + 1}: {defects[:3]}")
    return out
