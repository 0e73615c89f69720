"""The full check suite and the seeded fuzz corpus it runs on."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .catalog import (
    CLOSED_FORM_GENERATORS,
    STANDARD_GENERATORS,
    evaluate_all,
    generator,
    identities,
    parallelogram,
)
from .checks import Check
from .errors import DegeneratePair
from .fdiv import dragomir_bounds
from .relations import certificates, known_chains, verify_all
from .simplex import DEFAULT_FLOOR, Distribution, DistributionPair, pair, sample_distributions

BOUND_GENERATORS = CLOSED_FORM_GENERATORS + STANDARD_GENERATORS


@dataclass
class SuiteResult:
    checks: list[Check] = field(default_factory=list)
    certificates: dict | None = None
    certificate_status: str = "ok"

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def run_suite(pr: DistributionPair, u: Distribution | None = None) -> SuiteResult:
    """Identities, classical chains, the ten relations, E/A/B chains and certificates.

    ``u`` is the third distribution of the parallelogram identity; the
    uniform distribution is used when it is omitted.
    """
    if u is None:
        u = Distribution(np.full(pr.n, 1.0 / pr.n))
    values = evaluate_all(pr)
    out = SuiteResult()
    out.checks += identities(pr)
    out.checks.append(parallelogram(pr.p, pr.q, u))
    out.checks += known_chains(pr, values)
    for rep in verify_all(pr, values):
        out.checks += rep.checks
    for m in BOUND_GENERATORS:
        out.checks += dragomir_bounds(generator(m), pr).checks(f"bounds.{m.value}.")
    if pr.p == pr.q:
        out.certificate_status = "skipped-degenerate"
    else:
        try:
            cert = certificates(pr, values)
        except DegeneratePair as exc:
            out.certificate_status = f"failed: {exc}"
            out.checks.append(Check("certificate.defined", 1.0, 0.0, 0.0, False))
        else:
            out.certificates = cert.as_dict()
            out.checks += cert.checks(pr.r, pr.R)
    return out


@dataclass(frozen=True)
class Trial:
    index: int
    pair: DistributionPair
    u: Distribution


def trial(seed: int, index: int, dims: tuple[int, int], floor: float = DEFAULT_FLOOR) -> Trial:
    """The ``index``-th corpus member; depends only on its arguments."""
    rng = np.random.default_rng([seed, index])
    n = int(rng.integers(dims[0], dims[1] + 1))
    p, q, u = sample_distributions(rng, n, 3, floor)
    return Trial(index, pair(p, q), u)


def corpus(seed: int = 42, trials: int = 10_000, dims: tuple[int, int] = (2, 50),
           floor: float = DEFAULT_FLOOR) -> Iterator[Trial]:
    for i in range(trials):
        yield trial(seed, i, dims, floor)


@dataclass
class Worst:
    """Smallest-margin instance of one named check across a campaign."""

    check: Check
    trial: int
    count: int = 0
    violations: int = 0


def _run_chunk(args) -> list[tuple[int, list[Check]]]:
    seed, start, stop, dims, floor = args
    out = []
    for i in range(start, stop):
        t = trial(seed, i, dims, floor)
        out.append((i, run_suite(t.pair, t.u).checks))
    return out


def fuzz(trials: int, dims: tuple[int, int], seed: int, floor: float = DEFAULT_FLOOR,
         workers: int = 1, chunk: int = 250) -> dict[str, Worst]:
    """Run :func:`run_suite` over a seeded corpus and keep the worst case per check.

    Results are merged in trial order, so the outcome does not depend on
    ``workers``.
    """
    jobs = [(seed, s, min(s + chunk, trials), dims, floor) for s in range(0, trials, chunk)]
    worst: dict[str, Worst] = {}

    def absorb(results):
        for i, checks in results:
            for c in checks:
                w = worst.get(c.name)
                if w is None:
                    w = worst[c.name] = Worst(c, i)
                elif c.margin < w.check.margin:
                    w.check, w.trial = c, i
                w.count += 1
                w.violations += not c.passed

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for results in pool.map(_run_chunk, jobs):
                absorb(results)
    else:
        for job in jobs:
            absorb(_run_chunk(job))
    return worst
