"""Named divergence measures, their generators and closed-form bounds.

Thirteen measures are covered: five non-symmetric divergences (chi-square,
Kullback-Leibler, relative J, relative Jensen-Shannon, relative
arithmetic-geometric), six symmetric divergences and two similarities
(Bhattacharyya coefficient and harmonic mean). All logarithms are natural.
"""

from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from .checks import Check, identity
from .errors import LengthMismatch, NoClosedForm, NoGenerator, UnknownName
from .fdiv import DragomirBounds, Generator, log1pmx, log_mean_inverse, validate_generator
from .simplex import Distribution, DistributionPair


class Measure(enum.Enum):
    CHI_SQUARE = "chi2"
    KL = "kl"
    RELATIVE_J = "rel_j"
    RELATIVE_JS = "rel_js"
    RELATIVE_AG = "rel_ag"
    HELLINGER = "hellinger"
    BHATTACHARYYA = "bhattacharyya"
    TRIANGULAR = "triangular"
    HARMONIC_MEAN = "harmonic"
    SYMMETRIC_CHI_SQUARE = "sym_chi2"
    J_DIVERGENCE = "j"
    JENSEN_SHANNON = "js"
    ARITHMETIC_GEOMETRIC = "ag"

    @property
    def symmetric(self) -> bool:
        return self in _SYMMETRIC

    @property
    def has_paper_generator(self) -> bool:
        """True for the seven measures with closed-form E/A/B bounds."""
        return self in _CLOSED_FORM

    @property
    def is_similarity(self) -> bool:
        return self in (Measure.BHATTACHARYYA, Measure.HARMONIC_MEAN)

    @classmethod
    def parse(cls, name: str) -> Measure:
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(m.value for m in cls)
            raise UnknownName(f"unknown measure {name!r}; known: {known}") from None


_SYMMETRIC = frozenset({
    Measure.HELLINGER, Measure.BHATTACHARYYA, Measure.TRIANGULAR,
    Measure.HARMONIC_MEAN, Measure.SYMMETRIC_CHI_SQUARE, Measure.J_DIVERGENCE,
    Measure.JENSEN_SHANNON, Measure.ARITHMETIC_GEOMETRIC,
})

_CLOSED_FORM = frozenset({
    Measure.RELATIVE_J, Measure.RELATIVE_JS, Measure.RELATIVE_AG,
    Measure.TRIANGULAR, Measure.J_DIVERGENCE, Measure.JENSEN_SHANNON,
    Measure.ARITHMETIC_GEOMETRIC,
})

_NON_SYMMETRIC = tuple(m for m in Measure if m not in _SYMMETRIC)
CLOSED_FORM_GENERATORS = tuple(m for m in Measure if m in _CLOSED_FORM)
STANDARD_GENERATORS = (Measure.CHI_SQUARE, Measure.KL, Measure.HELLINGER,
                       Measure.SYMMETRIC_CHI_SQUARE)
DIVERGENCES = tuple(m for m in Measure if not m.is_similarity)

# Printed closed forms that do not equal the generic bound; see README.
MISPRINTED = frozenset({
    (Measure.ARITHMETIC_GEOMETRIC, "a"),
    (Measure.JENSEN_SHANNON, "b"),
})


# ---------------------------------------------------------------------------
# Closed-form measures


def _kl(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sum(a * np.log(a / b)))


# F, G, I and T are second order in p - q while their summands are first
# order; writing each summand through log1pmx drops the first-order part,
# which sums to zero, before it can swamp the result.


def _lmx(num, den):
    """``ln(num/den) - (num/den - 1)``, accurate near and far from ``num = den``."""
    u = (num - den) / den
    return np.where(np.abs(u) < 0.25, log1pmx(u), np.log(num / den) - u)


def _rel_js(p, q):
    return float(-np.sum(p * _lmx(p + q, 2 * p)))


def _rel_ag(p, q):
    s = p + q
    return float(-np.sum(0.5 * s * _lmx(2 * p, s)))


def _js(p, q):
    s = p + q
    return float(0.5 * np.sum(p * _lmx(2 * p, s) + q * _lmx(2 * q, s) + (p - q) ** 2 / s))


def _log_gm_over_am(p, q):
    """ln(4pq / (p+q)^2), i.e. twice the log of geometric over arithmetic mean."""
    s = p + q
    u = (p - q) / s
    near = np.abs(u) < 0.5
    return np.where(near, np.log1p(-u * u), np.log(4 * p / s) + np.log(q / s))


def _ag(p, q):
    return float(-0.25 * np.sum((p + q) * _log_gm_over_am(p, q)))


def _rel_j(p, q):
    return float(np.sum((p - q) * np.log((p + q) / (2 * q))))


def _chi2(p, q):
    return float(np.sum((p - q) ** 2 / q))


_EVAL = {
    Measure.CHI_SQUARE: _chi2,
    Measure.KL: _kl,
    Measure.RELATIVE_J: _rel_j,
    Measure.RELATIVE_JS: _rel_js,
    Measure.RELATIVE_AG: _rel_ag,
    Measure.HELLINGER: lambda p, q: float(0.5 * np.sum((np.sqrt(p) - np.sqrt(q)) ** 2)),
    Measure.BHATTACHARYYA: lambda p, q: float(np.sum(np.sqrt(p * q))),
    Measure.TRIANGULAR: lambda p, q: float(np.sum((p - q) ** 2 / (p + q))),
    Measure.HARMONIC_MEAN: lambda p, q: float(np.sum(2 * p * q / (p + q))),
    Measure.SYMMETRIC_CHI_SQUARE: lambda p, q: float(np.sum((p - q) ** 2 * (p + q) / (p * q))),
    Measure.J_DIVERGENCE: lambda p, q: float(np.sum((p - q) * np.log(p / q))),
    Measure.JENSEN_SHANNON: _js,
    Measure.ARITHMETIC_GEOMETRIC: _ag,
}


def evaluate(measure: Measure | str, pair: DistributionPair) -> float:
    """Value of ``measure`` on ``pair`` by direct summation."""
    if isinstance(measure, str):
        measure = Measure.parse(measure)
    return _EVAL[measure](pair.p.probs, pair.q.probs)


def evaluate_all(pair: DistributionPair, measures=None) -> dict[Measure, float]:
    """Values of ``measures`` (default: all thirteen) keyed by :class:`Measure`."""
    p, q = pair.p.probs, pair.q.probs
    return {m: _EVAL[m](p, q) for m in (measures or _EVAL)}


# ---------------------------------------------------------------------------
# Generators
#
# Logs of ratios near 1 are written with log1p so that f and f' keep relative
# accuracy close to x = 1.


def _ln_half_sum(x):
    """ln((x + 1) / 2)."""
    return np.log1p((x - 1) / 2)


def _generator_table():
    log, log1p, sqrt = np.log, np.log1p, np.sqrt
    ones = np.ones_like
    return {
        Measure.CHI_SQUARE: (
            lambda x: (x - 1) ** 2,
            lambda x: 2 * (x - 1),
            lambda x: 2 * ones(x),
        ),
        Measure.KL: (
            lambda x: x * log(x),
            lambda x: 1 + log(x),
            lambda x: 1 / x,
        ),
        Measure.HELLINGER: (
            lambda x: 0.5 * (sqrt(x) - 1) ** 2,
            lambda x: 0.5 * (1 - 1 / sqrt(x)),
            lambda x: 0.25 * x ** -1.5,
        ),
        Measure.SYMMETRIC_CHI_SQUARE: (
            lambda x: (x - 1) ** 2 * (x + 1) / x,
            lambda x: (x - 1) * (2 * x * x + x + 1) / (x * x),
            lambda x: 2 + 2 / x ** 3,
        ),
        Measure.RELATIVE_J: (
            lambda x: (x - 1) * _ln_half_sum(x),
            lambda x: (x - 1) / (x + 1) + _ln_half_sum(x),
            lambda x: (x + 3) / (x + 1) ** 2,
        ),
        Measure.RELATIVE_JS: (
            lambda x: -x * _lmx(x + 1, 2 * x),
            lambda x: log1p((x - 1) / (x + 1)) - (x - 1) / (2 * (x + 1)),
            lambda x: 1 / (x * (x + 1) ** 2),
        ),
        Measure.RELATIVE_AG: (
            lambda x: -(x + 1) / 2 * _lmx(2 * x, x + 1),
            lambda x: 0.5 * log1p((1 - x) / (2 * x)) + (x - 1) / (2 * x),
            lambda x: 1 / (2 * x * x * (x + 1)),
        ),
        Measure.TRIANGULAR: (
            lambda x: (x - 1) ** 2 / (x + 1),
            lambda x: (x - 1) * (x + 3) / (x + 1) ** 2,
            lambda x: 8 / (x + 1) ** 3,
        ),
        Measure.J_DIVERGENCE: (
            lambda x: (x - 1) * log(x),
            lambda x: 1 - 1 / x + log(x),
            lambda x: (x + 1) / (x * x),
        ),
        Measure.JENSEN_SHANNON: (
            lambda x: -0.5 * (x * _lmx(x + 1, 2 * x) + _lmx(x + 1, 2 * ones(x))),
            lambda x: 0.5 * log1p((x - 1) / (x + 1)),
            lambda x: 1 / (2 * x * (x + 1)),
        ),
        Measure.ARITHMETIC_GEOMETRIC: (
            lambda x: -(x + 1) / 4 * _log_gm_over_am(x, ones(x)),
            lambda x: 0.25 * (1 - 1 / x + 2 * (_ln_half_sum(x) - 0.5 * log(x))),
            lambda x: (1 + x * x) / (4 * (x * x + x ** 3)),
        ),
    }


@lru_cache(maxsize=None)
def generator(measure: Measure | str) -> Generator:
    """The Csiszar generator reproducing ``measure``.

    Raises :class:`NoGenerator` for the two similarity measures.
    """
    if isinstance(measure, str):
        measure = Measure.parse(measure)
    if measure.is_similarity:
        raise NoGenerator(f"{measure.value} is a similarity and has no normalized convex generator")
    f, df, d2f = _generator_table()[measure]
    return validate_generator(Generator(measure.value, f, df, d2f))


# ---------------------------------------------------------------------------
# Closed-form E/A/B bounds


def _closed_rel_j(v, pair, r, R):
    L = log_mean_inverse(r + 1, R + 1)
    e = v[Measure.RELATIVE_J] + v[Measure.TRIANGULAR]
    a = 0.25 * (R - r) ** 2 * (2 / ((R + 1) * (r + 1)) + L)
    b = (R - 1) * (1 - r) * L
    return e, a, b


def _closed_rel_js(v, pair, r, R):
    L = log_mean_inverse(r / (r + 1), R / (R + 1))
    e = _rel_j(pair.q.probs, pair.p.probs) - 0.5 * v[Measure.TRIANGULAR]
    a = 0.25 * (R - r) ** 2 / ((R + 1) * (r + 1)) * (L - 1)
    if r == R:
        return e, a, None
    # The divided difference of x ln(2x/(x+1)) and the log-mean term both
    # reduce to log1p(w); merging them avoids subtracting two values near 1/2
    # when r and R are close to 1.
    lw = np.log1p((R - r) / (r * (R + 1)))
    b = np.log1p((R - 1) / (R + 1)) - r * (R - 1) * lw / (R - r)
    return e, a, float(b)


def _closed_rel_ag(v, pair, r, R):
    p, q = pair.p.probs, pair.q.probs
    L = log_mean_inverse((r + 1) / r, (R + 1) / R)
    e = 0.5 * (_chi2(q, p) - _rel_j(q, p))
    a = (R - r) ** 2 / (8 * r * R) * (1 - L)
    if r == R:
        return e, a, None
    # ln((r+1)(R+1) / (4rR)) split into two log1p terms, and the log-mean of
    # (r+1)/r and (R+1)/R taken from log1p of their exact relative gap;
    # 1 - rR is formed from the exact differences 1 - r and R - 1.
    half_log = 0.5 * (np.log1p((1 - r) / (2 * r)) + np.log1p((1 - R) / (2 * R)))
    L_exact = np.log1p(-(R - r) / (R * (r + 1))) * r * R / (r - R)
    one_minus_rR = (1 - r) - r * (R - 1)
    b = half_log - one_minus_rR / (2 * r * R) * L_exact
    return e, a, float(b)


def _closed_triangular(v, pair, r, R):
    p, q = pair.p.probs, pair.q.probs
    e = float(np.sum(((p - q) / (p + q)) ** 2 * (p + 3 * q)))
    a = (R - r) ** 2 * (R + r + 2) / ((R + 1) ** 2 * (r + 1) ** 2)
    b = 2 * (R - 1) * (1 - r) / ((R + 1) * (1 + r))
    return e, a, b


def _closed_j(v, pair, r, R):
    p, q = pair.p.probs, pair.q.probs
    L = log_mean_inverse(r, R)
    e = v[Measure.J_DIVERGENCE] + _chi2(q, p)
    a = 0.25 * (R - r) ** 2 * (1 / (r * R) + L)
    b = (R - 1) * (1 - r) * L
    return e, a, b


def _closed_js(v, pair, r, R):
    p, q = pair.p.probs, pair.q.probs
    e = 0.5 * _rel_j(q, p)
    a = 0.125 * (R - r) ** 2 / ((R + 1) * (r + 1)) * log_mean_inverse(r / (r + 1), R / (R + 1))
    if r == R:
        return e, a, None
    # Printed with a minus between the two chord terms.
    b = ((R - 1) * (r * np.log(r) + (r + 1) * np.log(2 / (r + 1)))
         - (1 - r) * (R * np.log(R) + (R + 1) * np.log(2 / (R + 1)))) / (2 * (R - r))
    return e, a, float(b)


def _closed_ag(v, pair, r, R):
    p, q = pair.p.probs, pair.q.probs
    e = 0.25 * _chi2(q, p) + 0.5 * float(np.sum((p - q) * np.log((p + q) / (2 * np.sqrt(p * q)))))
    # Printed with a single L(r+1, R+1) term.
    a = (R - r) ** 2 / 16 * (1 / (r * R) + log_mean_inverse(r + 1, R + 1) - log_mean_inverse(r, R))
    if r == R:
        return e, a, None
    # ln((x+1) / (2 sqrt x)) is second order in x - 1; evaluate it as such.
    ln_r = -0.5 * float(_log_gm_over_am(np.float64(r), np.float64(1.0)))
    ln_R = -0.5 * float(_log_gm_over_am(np.float64(R), np.float64(1.0)))
    b = ((R - 1) * (r + 1) * ln_r + (1 - r) * (R + 1) * ln_R) / (2 * (R - r))
    return e, a, float(b)


_CLOSED = {
    Measure.RELATIVE_J: _closed_rel_j,
    Measure.RELATIVE_JS: _closed_rel_js,
    Measure.RELATIVE_AG: _closed_rel_ag,
    Measure.TRIANGULAR: _closed_triangular,
    Measure.J_DIVERGENCE: _closed_j,
    Measure.JENSEN_SHANNON: _closed_js,
    Measure.ARITHMETIC_GEOMETRIC: _closed_ag,
}


def closed_bounds(measure: Measure | str, pair: DistributionPair) -> DragomirBounds:
    """Evaluate the per-measure closed forms of E, A and B as printed.

    The generic :func:`divbounds.fdiv.dragomir_bounds` is the reference;
    components listed in :data:`MISPRINTED` are known to disagree with it.
    """
    if isinstance(measure, str):
        measure = Measure.parse(measure)
    if measure not in _CLOSED:
        raise NoClosedForm(f"no closed-form bounds for {measure.value}")
    r, R = pair.r, pair.R
    v = {measure: evaluate(measure, pair), Measure.TRIANGULAR: evaluate(Measure.TRIANGULAR, pair)}
    e, a, b = _CLOSED[measure](v, pair, r, R)
    if r == R:
        b = None
    return DragomirBounds(v[measure], float(e), float(a), None if b is None else float(b))


# ---------------------------------------------------------------------------
# Identities

# Coefficient c in D(Q||P) = c [F(P||Q) + G(P||Q)], fixed by a 50-digit oracle
# (tests/test_catalog.py); the same factor appears in D = c [K(Q||M) + K(M||Q)].
ADJOINT_COEFFICIENT = 2.0


def identities(pair: DistributionPair) -> list[Check]:
    """Residual checks for the algebraic identities linking the measures."""
    p, q = pair.p.probs, pair.q.probs
    mid = 0.5 * (p + q)
    v = evaluate_all(pair)
    w = evaluate_all(pair.swapped(), _NON_SYMMETRIC)
    M = Measure
    k_pm, k_qm, k_mp, k_mq = _kl(p, mid), _kl(q, mid), _kl(mid, p), _kl(mid, q)
    c = ADJOINT_COEFFICIENT
    return [
        identity("identity.j=k+k~", v[M.J_DIVERGENCE], v[M.KL] + w[M.KL]),
        identity("identity.j=d+d~", v[M.J_DIVERGENCE], v[M.RELATIVE_J] + w[M.RELATIVE_J]),
        identity("identity.h=1-b", v[M.HELLINGER], 1.0 - v[M.BHATTACHARYYA]),
        identity("identity.delta=2(1-w)", v[M.TRIANGULAR], 2.0 * (1.0 - v[M.HARMONIC_MEAN])),
        identity("identity.psi=chi2+chi2~", v[M.SYMMETRIC_CHI_SQUARE], v[M.CHI_SQUARE] + w[M.CHI_SQUARE]),
        identity("identity.i=(f+f~)/2", v[M.JENSEN_SHANNON], 0.5 * (v[M.RELATIVE_JS] + w[M.RELATIVE_JS])),
        identity("identity.t=(g+g~)/2", v[M.ARITHMETIC_GEOMETRIC], 0.5 * (v[M.RELATIVE_AG] + w[M.RELATIVE_AG])),
        identity("identity.j=4(i+t)", v[M.J_DIVERGENCE], 4.0 * (v[M.JENSEN_SHANNON] + v[M.ARITHMETIC_GEOMETRIC])),
        identity("identity.d~=2(f+g)", w[M.RELATIVE_J], c * (v[M.RELATIVE_JS] + v[M.RELATIVE_AG])),
        identity("identity.kl.i", v[M.JENSEN_SHANNON], 0.5 * (k_pm + k_qm)),
        identity("identity.kl.j", v[M.J_DIVERGENCE], v[M.KL] + w[M.KL]),
        identity("identity.kl.t", v[M.ARITHMETIC_GEOMETRIC], 0.5 * (k_mp + k_mq)),
        identity("identity.kl.d", v[M.RELATIVE_J], c * (k_qm + k_mq)),
        identity("identity.kl.f", v[M.RELATIVE_JS], k_pm),
        identity("identity.kl.g", v[M.RELATIVE_AG], k_mp),
    ]


def parallelogram(p: Distribution, q: Distribution, u: Distribution) -> Check:
    """``K(P||U) + K(Q||U) = K(P||M) + K(Q||M) + 2 K(M||U)`` with ``M = (P+Q)/2``."""
    if not p.n == q.n == u.n:
        raise LengthMismatch(f"lengths differ: {p.n}, {q.n}, {u.n}")
    a, b, c = p.probs, q.probs, u.probs
    mid = 0.5 * (a + b)
    lhs = _kl(a, c) + _kl(b, c)
    rhs = _kl(a, mid) + _kl(b, mid) + 2.0 * _kl(mid, c)
    return identity("identity.parallelogram", lhs, rhs)
