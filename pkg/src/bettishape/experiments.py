"""Reproducible random ideals and experiment records for batch runs."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .asymptotics import (
    DEFAULT_STABILIZATION_CAP,
    PowerFamily,
    StabilizationUnknown,
    TruncationError,
    conjecture_check,
    family,
    stabilization_index,
    strand_report,
    theorem_violations,
)
from .betti import regularity
from .monomial_ideals import MonomialIdeal, find_linear_quotients_power
from .parsing import serialize_ideal
from .polynomial import GradedIdeal, Polynomial, monomials_of_degree

SCHEMA = "bettishape/1"


def _monomial_pool(n: int, max_deg: int) -> list[tuple[int, ...]]:
    return [u for d in range(1, max_deg + 1) for u in monomials_of_degree(n, d)]


def random_monomial_ideal(rng: np.random.Generator, n: int, max_deg: int,
                          min_gens: int = 2, max_gens: int = 6) -> MonomialIdeal:
    """2..6 uniform monomials of degree 1..max_deg, minimalized."""
    pool = _monomial_pool(n, max_deg)
    count = int(rng.integers(min_gens, max_gens + 1))
    picks = rng.choice(len(pool), size=min(count, len(pool)), replace=False)
    return MonomialIdeal(n, tuple(pool[int(i)] for i in picks))


def random_graded_ideal(rng: np.random.Generator, n: int, max_deg: int,
                        min_gens: int = 2, max_gens: int = 6) -> GradedIdeal:
    """Generators are sums of two random monomials of one degree with coefficients +-1."""
    count = int(rng.integers(min_gens, max_gens + 1))
    gens = []
    while len(gens) < count:
        d = int(rng.integers(1, max_deg + 1))
        mons = monomials_of_degree(n, d)
        k = min(2, len(mons))
        picks = rng.choice(len(mons), size=k, replace=False)
        signs = rng.choice([-1, 1], size=k)
        gens.append(Polynomial(n, {mons[int(i)]: int(s) for i, s in zip(picks, signs)}))
    return GradedIdeal(n, tuple(gens))


def corpus(seed: int, count: int, max_n: int = 4, max_deg: int = 5, min_n: int = 2,
           graded: bool = False) -> list:
    """``count`` random ideals; ideal number i depends only on (seed, i)."""
    out = []
    for child in np.random.SeedSequence(seed).spawn(count):
        rng = np.random.default_rng(child)
        n = int(rng.integers(min_n, max_n + 1))
        out.append(random_graded_ideal(rng, n, max_deg) if graded else random_monomial_ideal(rng, n, max_deg))
    return out


@dataclass
class ExperimentRecord:
    ideal: str
    n: int
    seed: int
    index: int
    engine: str
    c_I: int | None
    status: str
    regularities: dict = field(default_factory=dict)
    strands: dict = field(default_factory=dict)
    conjecture: dict | None = None
    lambda_trajectory: list | None = None
    linear_quotients_power: int | None = None
    theorem_violations: list = field(default_factory=list)
    timings: dict | None = None
    schema: str = SCHEMA

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def run_experiment(I, seed: int, index: int, cap: int = DEFAULT_STABILIZATION_CAP,
                   timings: bool = False) -> ExperimentRecord:
    clock = {}
    t0 = time.perf_counter()
    fam = PowerFamily(I)
    family.cache_clear()
    rec = ExperimentRecord(serialize_ideal(fam.ideal), fam.n, seed, index,
                           "upper-koszul" if fam.monomial else "koszul", None, "ok")
    if fam.monomial:
        lq = find_linear_quotients_power(fam.ideal)
        rec.lambda_trajectory = list(lq.lambda_trajectory)
        rec.linear_quotients_power = lq.t
    try:
        c = stabilization_index(fam.ideal, cap)
    except StabilizationUnknown:
        rec.status = "inconclusive"
        return rec
    except TruncationError:
        rec.status = "truncated"
        return rec
    clock["stabilization"] = time.perf_counter() - t0
    rec.c_I = c
    shared = family(fam.ideal)
    rec.regularities = {str(k): regularity(shared.table(k)) for k in range(c + 3)}
    for k in range(c + 3):
        rep = strand_report(fam.ideal, k)
        rec.strands[str(k)] = {"strands": list(rep.strands), "all_full": rep.all_full}
    rec.conjecture = conjecture_check(fam.ideal, cap).as_dict()
    rec.theorem_violations = theorem_violations(fam.ideal, cap)
    clock["total"] = time.perf_counter() - t0
    if timings:
        rec.timings = {k: round(v, 6) for k, v in clock.items()}
    return rec


def _worker(args):
    ideal, seed, index, cap, timings = args
    return run_experiment(ideal, seed, index, cap, timings).to_json()


def run_batch(n: int, max_deg: int, count: int, seed: int, out_path: str, workers: int = 1,
              cap: int = DEFAULT_STABILIZATION_CAP, graded: bool = False, timings: bool = False) -> int:
    """Append one JSON line per ideal to ``out_path``; returns the number of inconclusive records."""
    ideals = corpus(seed, count, max_n=n, min_n=n, max_deg=max_deg, graded=graded)
    jobs = [(I, seed, i, cap, timings) for i, I in enumerate(ideals)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            lines = list(pool.map(_worker, jobs))
    else:
        lines = [_worker(job) for job in jobs]
    # single appender, records in corpus order
    with open(out_path, "a", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")
    return sum(json.loads(line)["status"] != "ok" for line in lines)
