"""Sandwich bounds of the non-symmetric divergences by symmetric ones.

Each :class:`Relation` pairs a non-symmetric measure (relative J, relative
Jensen-Shannon, relative arithmetic-geometric) with a symmetric one and
states ``m(r, R) * rhs <= lhs <= M(r, R) * rhs``. The coefficients are the
extremes on ``[r, R]`` of the second-derivative ratio ``g = f_lhs'' / f_rhs''``,
written out in closed form below and cross-checked against the numeric
extrema search of :func:`divbounds.fdiv.ratio_extrema`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

from .catalog import Measure, evaluate, evaluate_all, generator
from .checks import SLACK, Check, leq
from .errors import BadInterval, DegeneratePair, UnknownName
from .fdiv import RatioExtrema, ratio_extrema
from .simplex import DistributionPair

M_ = Measure


class Relation(enum.Enum):
    """The ten relations, keyed by their CLI name.

    ``shape`` says where the extremes of ``g`` sit: ``"increasing"`` (m at r,
    M at R), ``"decreasing"`` (m at R, M at r) or ``"peak"`` (unimodal with
    maximum at ``x = 1/2``).
    """

    D_DELTA = ("d-delta", M_.RELATIVE_J, M_.TRIANGULAR, "increasing")
    D_J = ("d-j", M_.RELATIVE_J, M_.J_DIVERGENCE, "increasing")
    D_I = ("d-i", M_.RELATIVE_J, M_.JENSEN_SHANNON, "increasing")
    F_DELTA = ("f-delta", M_.RELATIVE_JS, M_.TRIANGULAR, "decreasing")
    F_J = ("f-j", M_.RELATIVE_JS, M_.J_DIVERGENCE, "peak")
    F_I = ("f-i", M_.RELATIVE_JS, M_.JENSEN_SHANNON, "decreasing")
    G_DELTA = ("g-delta", M_.RELATIVE_AG, M_.TRIANGULAR, "decreasing")
    G_J = ("g-j", M_.RELATIVE_AG, M_.J_DIVERGENCE, "decreasing")
    G_I = ("g-i", M_.RELATIVE_AG, M_.JENSEN_SHANNON, "decreasing")
    G_T = ("g-t", M_.RELATIVE_AG, M_.ARITHMETIC_GEOMETRIC, "decreasing")

    def __init__(self, label, lhs, rhs, shape):
        self.label = label
        self.lhs = lhs
        self.rhs = rhs
        self.shape = shape

    @property
    def ratio(self) -> Callable[[float], float]:
        return _RATIOS[self]

    @classmethod
    def parse(cls, name: str) -> Relation:
        for rel in cls:
            if rel.label == name:
                return rel
        known = ", ".join(rel.label for rel in cls)
        raise UnknownName(f"unknown relation {name!r}; known: {known}")


PEAK = 0.5

_RATIOS: dict[Relation, Callable[[float], float]] = {
    Relation.D_DELTA: lambda x: (x + 1) * (x + 3) / 8,
    Relation.D_J: lambda x: x * x * (x + 3) / (x + 1) ** 3,
    Relation.D_I: lambda x: 2 * x * (x + 3) / (x + 1),
    Relation.F_DELTA: lambda x: (x + 1) / (8 * x),
    Relation.F_J: lambda x: x / (x + 1) ** 3,
    Relation.F_I: lambda x: 2 / (x + 1),
    Relation.G_DELTA: lambda x: (x + 1) ** 2 / (16 * x * x),
    Relation.G_J: lambda x: 1 / (2 * (x + 1) ** 2),
    Relation.G_I: lambda x: 1 / x,
    Relation.G_T: lambda x: 2 / (1 + x * x),
}


def _check_interval(r: float, R: float) -> None:
    if not (0 < r <= 1.0 <= R and math.isfinite(R)):
        raise BadInterval(f"need 0 < r <= 1 <= R < inf, got r={r!r}, R={R!r}")


def coefficients(rel: Relation, r: float, R: float) -> RatioExtrema:
    """Closed-form ``(m, M)`` for ``rel`` on ``[r, R]``.

    For ``f-j`` the interval-restricted extremes of ``x / (x+1)^3`` are
    returned; they never loosen the global ``0 <= F <= (4/27) J``.
    """
    _check_interval(r, R)
    g = rel.ratio
    if rel.shape == "increasing":
        return RatioExtrema(g(r), g(R))
    if rel.shape == "decreasing":
        return RatioExtrema(g(R), g(r))
    lo = min(g(r), g(R))
    hi = g(PEAK) if r <= PEAK <= R else max(g(r), g(R))
    return RatioExtrema(lo, hi)


@dataclass(frozen=True)
class RelationReport:
    relation: str
    m: float
    M: float
    lhs: float
    rhs: float
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _sandwich(rel: Relation, lhs: float, rhs: float, r: float, R: float) -> RelationReport:
    ext = coefficients(rel, r, R)
    scale = max(1.0, ext.M * rhs)
    name = "relation." + rel.label
    return RelationReport(rel.label, ext.m, ext.M, lhs, rhs, [
        leq(name + ".lower", ext.m * rhs, lhs, scale, SLACK),
        leq(name + ".upper", lhs, ext.M * rhs, scale, SLACK),
    ])


def verify_relation(rel: Relation, pair: DistributionPair) -> RelationReport:
    """Check ``m * rhs <= lhs <= M * rhs`` on ``pair``."""
    return _sandwich(rel, evaluate(rel.lhs, pair), evaluate(rel.rhs, pair), pair.r, pair.R)


def verify_all(pair: DistributionPair, values: dict | None = None) -> list[RelationReport]:
    values = values or evaluate_all(pair)
    return [_sandwich(rel, values[rel.lhs], values[rel.rhs], pair.r, pair.R) for rel in Relation]


@dataclass(frozen=True)
class CrossCheck:
    relation: str
    analytic: RatioExtrema
    numeric: RatioExtrema
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def cross_check(rel: Relation, r: float, R: float, tol: float = 1e-8) -> CrossCheck:
    """Compare :func:`coefficients` with the numeric extrema of ``f_lhs'' / f_rhs''``."""
    analytic = coefficients(rel, r, R)
    numeric = ratio_extrema(generator(rel.lhs), generator(rel.rhs), r, R)
    scale = max(1.0, abs(analytic.M))
    name = "crosscheck." + rel.label
    return CrossCheck(rel.label, analytic, numeric, [
        leq(name + ".m", abs(analytic.m - numeric.m), 0.0, scale, tol),
        leq(name + ".M", abs(analytic.M - numeric.M), 0.0, scale, tol),
    ])


def known_chains(pair: DistributionPair, values: dict | None = None) -> list[Check]:
    """The classical inequalities among h, Delta, Psi, J, I and T."""
    v = values or evaluate_all(pair)
    h, delta = v[M_.HELLINGER], v[M_.TRIANGULAR]
    psi, j = v[M_.SYMMETRIC_CHI_SQUARE], v[M_.J_DIVERGENCE]
    i, t = v[M_.JENSEN_SHANNON], v[M_.ARITHMETIC_GEOMETRIC]
    links = [
        ("chain.h/2<=delta/4", h / 2, delta / 4),
        ("chain.delta/4<=h", delta / 4, h),
        ("chain.h<=psi/16", h, psi / 16),
        ("chain.delta<=j/2", delta, j / 2),
        ("chain.j/2<=psi/4", j / 2, psi / 4),
        ("chain.delta/4<=i", delta / 4, i),
        ("chain.i<=ln2*delta/2", i, math.log(2) / 2 * delta),
        ("chain.i<=h", i, h),
        ("chain.h<=j/8", h, j / 8),
        ("chain.j/8<=t", j / 8, t),
        ("chain.t<=psi/16", t, psi / 16),
    ]
    return [leq(name, a, b) for name, a, b in links]


@dataclass(frozen=True)
class RatioCertificate:
    """Statistics of a pair that must fall inside ``[r, R]``.

    Labels follow the usual numbering, which has no ``zeta2``.
    """

    zeta1: float
    zeta3: float
    xi1: float
    xi2: float
    xi3: float
    xi4: float

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("zeta1", "zeta3", "xi1", "xi2", "xi3", "xi4")}

    def checks(self, r: float, R: float) -> list[Check]:
        scale = max(1.0, R)
        out = []
        for name, value in self.as_dict().items():
            out.append(leq(f"certificate.{name}.lower", r, value, scale))
            out.append(leq(f"certificate.{name}.upper", value, R, scale))
        return out


NEGATIVE_CLAMP = 1e-12


def certificates(pair: DistributionPair, values: dict | None = None) -> RatioCertificate:
    """Compute the six ratio certificates.

    Raises
    ------
    DegeneratePair
        If P = Q (every denominator vanishes) or ``2T - G`` is negative
        beyond rounding.
    """
    v = values or evaluate_all(pair)
    delta, f, g = v[M_.TRIANGULAR], v[M_.RELATIVE_JS], v[M_.RELATIVE_AG]
    i, j, t = v[M_.JENSEN_SHANNON], v[M_.J_DIVERGENCE], v[M_.ARITHMETIC_GEOMETRIC]
    if pair.p == pair.q or f <= 0 or g <= 0 or delta <= 0:
        raise DegeneratePair("certificates are undefined when P = Q")
    rest = 2 * t - g
    if rest < 0:
        if rest < -NEGATIVE_CLAMP:
            raise DegeneratePair(f"2T - G = {rest!r} is negative")
        rest = 0.0
    sq_d, sq_g, sq_2g = math.sqrt(delta), math.sqrt(g), math.sqrt(2 * g)
    return RatioCertificate(
        zeta1=delta / (8 * f - delta),
        zeta3=(2 * i - f) / f,
        xi1=sq_d / (4 * sq_g - sq_d),
        xi2=(math.sqrt(j) - sq_2g) / sq_2g,
        xi3=i / g,
        xi4=math.sqrt(rest) / sq_g,
    )
