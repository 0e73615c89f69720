"""Acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line; the lines are repeated in the
pytest terminal summary under "acceptance criteria".
"""

import math
import random
import subprocess
import sys
import time
from collections import defaultdict
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

import oracles
from acceptance_log import record
from divbounds.catalog import (
    ADJOINT_COEFFICIENT,
    CLOSED_FORM_GENERATORS,
    STANDARD_GENERATORS,
    evaluate,
    generator,
    identities,
    parallelogram,
)
from divbounds.fdiv import csiszar
from divbounds.harness import corpus, run_suite
from divbounds.relations import Relation, cross_check
from divbounds.simplex import pair, validate

SEED, TRIALS, DIMS, FLOOR = 42, 10_000, (2, 50), 1e-6
IDENTITY_NAMES = {
    "identity.j=k+k~", "identity.j=d+d~", "identity.h=1-b", "identity.delta=2(1-w)",
    "identity.psi=chi2+chi2~", "identity.i=(f+f~)/2", "identity.t=(g+g~)/2",
    "identity.j=4(i+t)", "identity.kl.i", "identity.kl.j", "identity.kl.t", "identity.kl.d",
    "identity.kl.f", "identity.kl.g", "identity.parallelogram",
}


class Family:
    """Pass/fail tally for checks sharing a name prefix."""

    def __init__(self):
        self.count = 0
        self.failures = []
        self.names = set()
        self.worst = math.inf

    def add(self, trial, check):
        self.count += 1
        self.names.add(check.name)
        if check.slack > 0:
            self.worst = min(self.worst, check.margin / check.slack)
        if not check.passed:
            self.failures.append((trial, check))

    @property
    def passed(self):
        return self.count > 0 and not self.failures

    def summary(self):
        text = f"{self.count} checks over {len(self.names)} names, {len(self.failures)} violations"
        if self.failures:
            t, c = self.failures[0]
            text += f"; first: trial {t} {c.name} lhs={c.lhs!r} rhs={c.rhs!r}"
        return text


@pytest.fixture(scope="session")
def families(trials):
    fam = defaultdict(Family)
    certified = 0
    for t in trials:
        res = run_suite(t.pair, t.u)
        certified += res.certificates is not None
        for c in res.checks:
            fam[c.name.split(".")[0]].add(t.index, c)
            if c.name.startswith("bounds."):
                fam["bounds:" + c.name.split(".")[1]].add(t.index, c)
            if c.name == "identity.d~=2(f+g)":
                fam["adjoint"].add(t.index, c)
    fam["certified"] = certified
    return fam


def test_criterion_1_identities(trials):
    start = time.perf_counter()
    fam = Family()
    for t in corpus(SEED, TRIALS, DIMS, FLOOR):
        for c in identities(t.pair):
            fam.add(t.index, c)
        fam.add(t.index, parallelogram(t.pair.p, t.pair.q, t.u))
    elapsed = time.perf_counter() - start
    worst = max(c.lhs / max(1.0, c.slack / 1e-12) for _, c in fam.failures) if fam.failures else None
    ok = fam.passed and IDENTITY_NAMES <= fam.names and elapsed < 10.0
    record(1, ok, f"{fam.summary()}, {elapsed:.2f} s including sampling (budget 10 s)"
           + (f", worst failing residual {worst!r}" if worst else ""))
    assert IDENTITY_NAMES <= fam.names
    assert fam.passed, fam.summary()
    assert elapsed < 10.0


def test_criterion_2_dragomir_chains(families):
    expected = CLOSED_FORM_GENERATORS + STANDARD_GENERATORS
    per_gen = [families["bounds:" + m.value] for m in expected]
    ok = all(f.passed for f in per_gen) and len(per_gen) == 11
    record(2, ok, f"11 generators, {families['bounds'].summary()}")
    assert ok, families["bounds"].summary()


def test_criterion_3_generator_equivalence(trials):
    measures = CLOSED_FORM_GENERATORS + STANDARD_GENERATORS
    gens = {m: generator(m) for m in measures}
    worst, failures = 0.0, []
    for t in trials:
        for m in measures:
            a, b = csiszar(gens[m], t.pair), evaluate(m, t.pair)
            rel = abs(a - b) / max(abs(a), abs(b))
            worst = max(worst, rel)
            if rel > 1e-10:
                failures.append((t.index, m.value, a, b))
    record(3, not failures, f"{len(measures)} measures x {len(trials)} pairs, worst relative "
           f"difference {worst:.3g} (tolerance 1e-10), {len(failures)} violations")
    assert not failures, failures[:5]


def test_criterion_4_relations(families):
    fam = families["relation"]
    labels = {n.split(".")[1] for n in fam.names}
    ok = fam.passed and labels == {rel.label for rel in Relation}
    record(4, ok, f"10 relations, {fam.summary()}")
    assert ok, fam.summary()


def test_criterion_5_analytic_vs_numeric():
    rng = np.random.default_rng(SEED)
    failures, worst = [], 0.0
    for _ in range(100):
        r = float(rng.uniform(0.0, 1.0))
        while r == 0.0:
            r = float(rng.uniform(0.0, 1.0))
        R = float(rng.uniform(1.0, 10.0))
        while R == 1.0:
            R = float(rng.uniform(1.0, 10.0))
        for rel in Relation:
            cc = cross_check(rel, r, R, tol=1e-8)
            worst = max(worst, *(c.lhs / max(1.0, abs(cc.analytic.M)) for c in cc.checks))
            if not cc.passed:
                failures.append((rel.label, r, R, cc.analytic, cc.numeric))
    record(5, not failures, f"100 intervals x 10 relations, worst scaled difference "
           f"{worst:.3g} (tolerance 1e-8), {len(failures)} violations")
    assert not failures, failures[:5]


def test_criterion_6_known_chains(families):
    fam = families["chain"]
    ok = fam.passed and len(fam.names) == 11
    record(6, ok, fam.summary())
    assert ok, fam.summary()


def test_criterion_7_point_values():
    P, Q = oracles.P_HALF, oracles.Q_QUARTER
    exact = {
        "chi2": oracles.chi2(P, Q),
        "triangular": oracles.triangular(P, Q),
    }
    assert exact == {"chi2": Fraction(1, 3), "triangular": Fraction(2, 15)}
    mp.mp.dps = 40
    j_exact = mp.log(3) / 4
    assert abs(oracles.j(oracles.mpf_vec(P), oracles.mpf_vec(Q)) - j_exact) < mp.mpf(10) ** -35
    pr = pair(validate([0.5, 0.5]), validate([0.25, 0.75]))
    got = {"chi2": evaluate("chi2", pr), "triangular": evaluate("triangular", pr),
           "j": evaluate("j", pr), "r": pr.r, "R": pr.R}
    want = {"chi2": 1 / 3, "triangular": 2 / 15, "j": float(j_exact), "r": 2 / 3, "R": 2.0}
    diffs = {k: abs(got[k] - want[k]) for k in want}
    ok = all(d <= 1e-12 for d in diffs.values())
    record(7, ok, ", ".join(f"{k} off by {d:.1e}" for k, d in diffs.items()) + " (tolerance 1e-12)")
    assert ok, diffs


def test_criterion_8_certificates(families):
    fam = families["certificate"]
    ok = fam.passed and families["certified"] == TRIALS and len(fam.names) == 12
    record(8, ok, f"{families['certified']} of {TRIALS} pairs certified, {fam.summary()}")
    assert ok, fam.summary()


def test_criterion_9_adjoint_coefficient(families):
    mp.mp.dps = 60
    rng = random.Random(SEED)
    worst = mp.mpf(0)
    for _ in range(100):
        n = rng.randint(2, 20)
        p, q = oracles.random_simplex(rng, n), oracles.random_simplex(rng, n)
        ratio = oracles.rel_j(q, p) / (oracles.rel_js(p, q) + oracles.rel_ag(p, q))
        worst = max(worst, abs(ratio - 2))
    resolved = worst < mp.mpf(10) ** -50 and ADJOINT_COEFFICIENT == 2.0
    fam = families["adjoint"]
    ok = resolved and fam.passed and fam.count == TRIALS
    record(9, ok, f"60-digit oracle on 100 pairs: |D(Q||P)/(F+G) - 2| <= {mp.nstr(worst, 3)}; "
           f"corpus identity at 1e-12: {fam.summary()}")
    assert resolved and fam.passed


def test_criterion_10_determinism():
    argv = [sys.executable, "-m", "divbounds", "fuzz", "--trials", "1000", "--dims", "2..20",
            "--seed", "7"]
    runs = [subprocess.run(argv, capture_output=True, check=False) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0
    codes = [r.returncode for r in runs]
    ok = same and codes == [0, 0]
    record(10, ok, f"two runs, {len(runs[0].stdout)} bytes each, identical={same}, exit codes {codes}")
    assert ok, runs[0].stderr
