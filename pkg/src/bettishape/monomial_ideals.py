"""Monomial ideals, colon ideals and the constructive linear-quotients procedure.

For an order u_1 < ... < u_r on G(I) the colon ideal
``(u_1, ..., u_{i-1}) : u_i`` is generated by the monomials ``u_j : u_i``;
its minimal generators w_{i,1..l_i} define

    lambda_i = sum_k (deg w_{i,k} - 1),

which vanishes for every i exactly when the order is admissible (every
colon is generated by variables).  :func:`construct_next_order` turns a
degree-ascending order on G(I) into an order on G(mI) whose lambda values
drop, and :func:`find_linear_quotients_power` iterates it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .polynomial import (
    GradedIdeal,
    Monomial,
    default_names,
    degree,
    divides,
    format_monomial,
    monomial_colon,
    monomials_of_degree,
    mul,
    support,
    variable,
)

#: Exhaustive admissible-order search up to this many generators.
EXHAUSTIVE_LIMIT = 12
DEFAULT_NODE_BUDGET = 200_000


def order_key(u: Monomial) -> tuple:
    """Degree ascending, ties broken lexicographically (x_1 > x_2 > ...)."""
    return (degree(u), tuple(-a for a in u))


def minimalize(gens: Iterable[Monomial]) -> list[Monomial]:
    """Remove duplicates and non-minimal monomials, keeping first occurrences in order."""
    gens = list(dict.fromkeys(tuple(g) for g in gens))
    by_degree = sorted(gens, key=degree)
    keep = set()
    kept: list[Monomial] = []
    for g in by_degree:
        if not any(divides(h, g) for h in kept):
            kept.append(g)
            keep.add(g)
    return [g for g in gens if g in keep]


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal stored by its minimal generating set G(I) in canonical order."""

    n: int
    gens: tuple[Monomial, ...]

    def __post_init__(self):
        if not self.gens:
            raise ValueError("a monomial ideal needs at least one generator")
        if any(len(g) != self.n for g in self.gens):
            raise ValueError("generator of the wrong length")
        mins = sorted(minimalize(self.gens), key=order_key)
        object.__setattr__(self, "gens", tuple(mins))

    def __contains__(self, u: Monomial) -> bool:
        return any(divides(g, u) for g in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    @property
    def degrees(self) -> list[int]:
        return [degree(g) for g in self.gens]

    def lcm(self) -> Monomial:
        return tuple(max(g[i] for g in self.gens) for i in range(self.n))

    def to_graded(self, names: Sequence[str] = ()) -> GradedIdeal:
        return GradedIdeal.from_monomials(self.gens, names)

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.n)
        return "(" + ", ".join(format_monomial(g, names) for g in self.gens) + ")"


def minimal_generators(gens: Iterable[Monomial]) -> MonomialIdeal:
    gens = [tuple(g) for g in gens]
    if not gens:
        raise ValueError("empty generator list")
    return MonomialIdeal(len(gens[0]), tuple(gens))


def power_product(I: MonomialIdeal, k: int) -> MonomialIdeal:
    """Minimal generators of m^k I."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return I
    mons = monomials_of_degree(I.n, k)
    return MonomialIdeal(I.n, tuple(mul(u, g) for g in I.gens for u in mons))


# ---------------------------------------------------------------------------
# orders and lambda invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorOrder:
    """An ordering u_1 < ... < u_r of G(I)."""

    sequence: tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.sequence)

    def __iter__(self):
        return iter(self.sequence)

    def __getitem__(self, i):
        return self.sequence[i]

    def is_degree_ascending(self) -> bool:
        degs = [degree(u) for u in self.sequence]
        return all(a <= b for a, b in zip(degs, degs[1:]))


def canonical_order(I: MonomialIdeal) -> GeneratorOrder:
    return GeneratorOrder(tuple(sorted(I.gens, key=order_key)))


def _check_order(I: MonomialIdeal, O: GeneratorOrder) -> None:
    if sorted(O.sequence) != sorted(I.gens):
        raise ValueError("order is not a permutation of G(I)")


def colon_generators(prefix: Sequence[Monomial], u: Monomial) -> list[Monomial]:
    """Minimal generators of (prefix) : u."""
    return minimalize(monomial_colon(v, u) for v in prefix)


def colon_prefix(I: MonomialIdeal, O: GeneratorOrder, i: int) -> MonomialIdeal:
    """(u_1, ..., u_{i-1}) : u_i with 1-based ``i`` in 2..r."""
    _check_order(I, O)
    if not 2 <= i <= len(O):
        raise IndexError(f"i must lie in 2..{len(O)}, got {i}")
    return MonomialIdeal(I.n, tuple(colon_generators(O.sequence[: i - 1], O.sequence[i - 1])))


@dataclass(frozen=True)
class LambdaProfile:
    """lambda values for u_1..u_r (lambda_1 = 0 by convention)."""

    order: GeneratorOrder
    values: tuple[int, ...]

    @property
    def maximum(self) -> int:
        return max(self.values, default=0)

    @property
    def admissible(self) -> bool:
        return all(v == 0 for v in self.values)

    def __getitem__(self, i: int) -> int:
        """1-based access, matching lambda_i."""
        return self.values[i - 1]


def _lambda(prefix: Sequence[Monomial], u: Monomial) -> int:
    return sum(degree(w) - 1 for w in colon_generators(prefix, u))


def lambda_values(sequence: Sequence[Monomial]) -> tuple[int, ...]:
    return tuple(0 if i == 0 else _lambda(sequence[:i], u) for i, u in enumerate(sequence))


def lambda_invariant(I: MonomialIdeal, O: GeneratorOrder) -> LambdaProfile:
    _check_order(I, O)
    return LambdaProfile(O, lambda_values(O.sequence))


def is_admissible(sequence: Sequence[Monomial]) -> bool:
    """Independent check: every colon is generated by variables."""
    for i in range(1, len(sequence)):
        u = sequence[i]
        colon = {monomial_colon(v, u) for v in sequence[:i]}
        variables = [w for w in colon if degree(w) == 1]
        for w in colon:
            if not any(divides(x, w) for x in variables):
                return False
    return True


# ---------------------------------------------------------------------------
# admissible-order search
# ---------------------------------------------------------------------------


class SearchInconclusive(RuntimeError):
    """The bounded admissible-order search ran out of nodes."""

    def __init__(self, nodes: int):
        super().__init__(f"admissible-order search inconclusive after {nodes} nodes")
        self.nodes = nodes


def _colon_is_linear(prefix: Sequence[Monomial], u: Monomial) -> bool:
    return all(degree(w) == 1 for w in colon_generators(prefix, u))


def has_linear_quotients(I: MonomialIdeal, node_budget: int | None = None) -> GeneratorOrder | None:
    """Return an admissible order of G(I), or None if none exists.

    Whether a generator may come next only depends on the *set* of earlier
    generators, so failed prefix sets are memoized.  The search is
    exhaustive for at most ``EXHAUSTIVE_LIMIT`` generators; above that it
    spends at most ``node_budget`` nodes and raises SearchInconclusive.
    """
    gens = list(I.gens)
    r = len(gens)
    if r == 1:
        return GeneratorOrder(tuple(gens))
    if node_budget is None:
        node_budget = None if r <= EXHAUSTIVE_LIMIT else DEFAULT_NODE_BUDGET
    dead: set[int] = set()
    nodes = 0

    def extend(chosen: list[int], mask: int) -> list[int] | None:
        nonlocal nodes
        if len(chosen) == r:
            return chosen
        if mask in dead:
            return None
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchInconclusive(nodes)
        prefix = [gens[j] for j in chosen]
        for j in range(r):
            if mask >> j & 1:
                continue
            if chosen and not _colon_is_linear(prefix, gens[j]):
                continue
            found = extend(chosen + [j], mask | (1 << j))
            if found is not None:
                return found
        dead.add(mask)
        return None

    found = extend([], 0)
    if found is None:
        return None
    return GeneratorOrder(tuple(gens[j] for j in found))


# ---------------------------------------------------------------------------
# the constructive procedure O -> O_1 on G(mI)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Candidate:
    """f_{i,j} = x_{s_{i,j}} u_i together with its position data (0-based)."""

    parent: int
    position: int
    variable: int
    monomial: Monomial


def variable_sequences(O: GeneratorOrder, n: int) -> list[tuple[tuple[int, ...], int]]:
    """For every u_i the list s_{i,1..n} (A_i first, ascending) and n_i = |A_i|."""
    out = []
    seq = O.sequence
    for i, u in enumerate(seq):
        if i == 0:
            out.append((tuple(range(n)), n))
            continue
        A: set[int] = set()
        for w in colon_generators(seq[:i], u):
            A |= support(w)
        head = sorted(A)
        tail = [t for t in range(n) if t not in A]
        out.append((tuple(head + tail), len(head)))
    return out


def candidate_sequence(O: GeneratorOrder, n: int) -> list[Candidate]:
    """The order O' on all products x_{s_{i,j}} u_i (duplicates and non-minimal ones included)."""
    out = []
    for i, (u, (s, _)) in enumerate(zip(O.sequence, variable_sequences(O, n))):
        for j, t in enumerate(s):
            out.append(Candidate(i, j, t, mul(variable(n, t), u)))
    return out


def construct_next_order(I: MonomialIdeal, O: GeneratorOrder) -> tuple[MonomialIdeal, GeneratorOrder]:
    """From a degree-ascending order O on G(I) build (mI, O_1)."""
    _check_order(I, O)
    if not O.is_degree_ascending():
        raise ValueError("the order must be degree-ascending")
    cands = [c.monomial for c in candidate_sequence(O, I.n)]
    mI = power_product(I, 1)
    minimal = set(mI.gens)
    seen: set[Monomial] = set()
    seq = []
    for f in cands:
        if f in minimal and f not in seen:
            seen.add(f)
            seq.append(f)
    return mI, GeneratorOrder(tuple(seq))


construct_order_O1 = construct_next_order


@dataclass(frozen=True)
class LinearQuotientsPower:
    t: int
    ideal: MonomialIdeal
    order: GeneratorOrder
    lambda_trajectory: tuple[int, ...]
    orders: tuple[GeneratorOrder, ...]


class InternalInconsistency(RuntimeError):
    """The lambda maximum failed to decrease as the construction guarantees."""


class PowerCapExceeded(RuntimeError):
    """The caller's cap is below the number of steps needed (only possible when cap < initial max lambda)."""


def find_linear_quotients_power(I: MonomialIdeal, cap: int = 50) -> LinearQuotientsPower:
    """Smallest t <= cap with O_t admissible, iterating the construction from the canonical order."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    ideal = I
    order = canonical_order(I)
    profile = lambda_invariant(ideal, order)
    trajectory = [profile.maximum]
    orders = [order]
    t = 0
    while not profile.admissible:
        if t >= cap:
            if cap >= trajectory[0]:
                raise InternalInconsistency(
                    f"no admissible order after {cap} steps (lambda trajectory {trajectory})"
                )
            raise PowerCapExceeded(f"no admissible order within {cap} steps (lambda trajectory {trajectory})")
        ideal, order = construct_next_order(ideal, order)
        profile = lambda_invariant(ideal, order)
        if profile.maximum >= trajectory[-1]:
            raise InternalInconsistency(f"lambda maximum did not drop: {trajectory + [profile.maximum]}")
        trajectory.append(profile.maximum)
        orders.append(order)
        t += 1
    if not is_admissible(order.sequence):
        raise InternalInconsistency("terminal order failed the independent admissibility check")
    return LinearQuotientsPower(t, ideal, order, tuple(trajectory), tuple(orders))
