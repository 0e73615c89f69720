"""Generic Csiszar f-divergences and their bounds.

For a convex generator ``f`` with ``f(1) = 0`` the divergence is
``C_f(P||Q) = sum q_i f(p_i / q_i)``. Given ratio extremes ``r <= p_i/q_i <= R``
it is bracketed by three upper bounds:

* ``E = sum (p_i - q_i) f'(p_i / q_i)``
* ``A = (R - r) (f'(R) - f'(r)) / 4``
* ``B = ((R - 1) f(r) + (1 - r) f(R)) / (R - r)``  (needs ``r < R``)

and two generators are compared through the extremes of ``f1'' / f2''`` on
``[r, R]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .checks import SLACK, Check, leq
from .errors import BadInterval, DegenerateInterval, InvalidGenerator, NonPositiveArgument
from .simplex import DistributionPair

Func = Callable[[np.ndarray], np.ndarray]

PROBE_GRID = np.logspace(-4, 4, 512)
GRID_POINTS = 2049
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Generator:
    """A normalized convex function with its first two derivatives.

    The three callables must accept and return numpy arrays.
    """

    name: str
    f: Func
    df: Func
    d2f: Func

    def __call__(self, x):
        return self.f(x)


def check_generator(gen: Generator, grid: np.ndarray = PROBE_GRID,
                    rtol: float = 1e-6) -> list[str]:
    """Return the list of violated generator invariants (empty if sound).

    Checks ``f(1) = 0``, ``f'' > 0`` on ``grid`` and agreement of ``f'`` and
    ``f''`` with central differences of ``f`` and ``f'``.
    """
    problems = []
    f1 = float(gen.f(np.array([1.0]))[0])
    if abs(f1) > 1e-12:
        problems.append(f"{gen.name}: f(1) = {f1!r}")
    d2 = gen.d2f(grid)
    if not np.all(d2 > 0):
        at = float(grid[np.argmin(d2 > 0)])
        problems.append(f"{gen.name}: f''({at!r}) is not > 0")
    # Extended precision: f' of several generators tends to a constant while
    # f'' decays like x**-3, which double-precision differences cannot resolve.
    x = grid.astype(np.longdouble)
    h = 1e-5 * x
    for label, lo, hi in (("f'", gen.f, gen.df), ("f''", gen.df, gen.d2f)):
        fd = (lo(x + h) - lo(x - h)) / (2 * h)
        exact = hi(x)
        err = np.abs(fd - exact)
        bad = err > rtol * np.maximum(np.abs(exact), np.abs(fd))
        if bad.any():
            at = float(grid[np.argmax(bad)])
            problems.append(f"{gen.name}: {label} disagrees with finite difference at x={at!r}")
    return problems


def validate_generator(gen: Generator) -> Generator:
    problems = check_generator(gen)
    if problems:
        raise InvalidGenerator("; ".join(problems))
    return gen


@dataclass(frozen=True)
class DragomirBounds:
    """A divergence value together with its E, A and B upper bounds.

    ``b`` is ``None`` when the ratio interval is degenerate (``r == R``).
    """

    value: float
    e: float
    a: float
    b: float | None = None

    def checks(self, prefix: str = "") -> list[Check]:
        """The ordering ``0 <= value <= e <= a``, ``value <= b <= a``, ``0 <= b - value <= a``."""
        scale = max(1.0, abs(self.a))
        out = [
            leq(prefix + "0<=value", 0.0, self.value, scale),
            leq(prefix + "value<=e", self.value, self.e, scale),
            leq(prefix + "e<=a", self.e, self.a, scale),
        ]
        if self.b is not None:
            gap = self.b - self.value
            out += [
                leq(prefix + "value<=b", self.value, self.b, scale),
                leq(prefix + "b<=a", self.b, self.a, scale),
                leq(prefix + "0<=b-value", 0.0, gap, scale),
                leq(prefix + "b-value<=a", gap, self.a, scale),
            ]
        return out

    def as_dict(self) -> dict:
        return {"value": self.value, "e": self.e, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class RatioExtrema:
    m: float
    M: float


def csiszar(gen: Generator, pair: DistributionPair) -> float:
    p, q = pair.p.probs, pair.q.probs
    return float(np.sum(q * gen.f(p / q)))


def e_bound(gen: Generator, pair: DistributionPair) -> float:
    p, q = pair.p.probs, pair.q.probs
    return float(np.sum((p - q) * gen.df(p / q)))


def _at(func: Func, x: float) -> float:
    return float(func(np.array([x], dtype=np.float64))[0])


def a_bound(gen: Generator, r: float, R: float) -> float:
    if not 0 < r <= R:
        raise BadInterval(f"need 0 < r <= R, got r={r!r}, R={R!r}")
    if r == R:
        return 0.0
    return 0.25 * (R - r) * (_at(gen.df, R) - _at(gen.df, r))


def b_bound(gen: Generator, r: float, R: float) -> float:
    """Chord bound; undefined on a degenerate interval."""
    if not 0 < r <= 1.0 <= R:
        raise BadInterval(f"need 0 < r <= 1 <= R, got r={r!r}, R={R!r}")
    if r == R:
        raise DegenerateInterval(f"B bound needs r < R, got r = R = {r!r}")
    return ((R - 1.0) * _at(gen.f, r) + (1.0 - r) * _at(gen.f, R)) / (R - r)


def log_mean_inverse(a: float, b: float) -> float:
    """Reciprocal of the logarithmic mean, ``(ln b - ln a) / (b - a)``.

    Near-equal arguments return the limit ``1 / a``. The log ratio goes
    through ``log1p`` so close arguments keep full relative precision.
    """
    if not (a > 0 and b > 0):
        raise NonPositiveArgument(f"arguments must be > 0, got ({a!r}, {b!r})")
    if abs(a - b) <= 1e-13 * max(a, b):
        return 1.0 / a
    if a > b:
        a, b = b, a
    return math.log1p((b - a) / a) / (b - a)


# Coefficients 1/(2k+3) of the atanh tail, highest power first for Horner.
_LOG1PMX_SERIES = tuple(1.0 / (2 * k + 3) for k in reversed(range(7)))


def log1pmx(u):
    """``log1p(u) - u`` without cancellation near ``u = 0``.

    For ``|u| < 0.1`` this uses ``log1p(u) = 2 atanh(s)`` with
    ``s = u / (2 + u)``, which gives ``-u^2 / (2 + u) + 2 (s^3/3 + s^5/5 + ...)``;
    every term is already second order, so nothing cancels, and seven terms
    reach double precision on that range. Farther out the direct difference
    loses at most one digit.

    Divergences of nearly equal distributions are sums of such second-order
    terms, so this is what keeps their relative accuracy.
    """
    u = np.asarray(u)
    if u.dtype.kind != "f":
        u = u.astype(float)
    s = u / (2.0 + u)
    s2 = s * s
    tail = _LOG1PMX_SERIES[0]
    for c in _LOG1PMX_SERIES[1:]:
        tail = tail * s2 + c
    series = s * (2.0 * s2 * tail - u)  # u * s == u^2 / (2 + u)
    out = np.where(np.abs(u) < 0.1, series, np.log1p(u) - u)
    return float(out) if out.ndim == 0 else out


def dragomir_bounds(gen: Generator, pair: DistributionPair) -> DragomirBounds:
    r, R = pair.r, pair.R
    try:
        b = b_bound(gen, r, R)
    except DegenerateInterval:
        b = None
    return DragomirBounds(csiszar(gen, pair), e_bound(gen, pair), a_bound(gen, r, R), b)


def _golden(g: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Minimize a unimodal ``g`` on ``[lo, hi]``; return (x, g(x))."""
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    gc, gd = g(c), g(d)
    while hi - lo > tol:
        if gc <= gd:
            hi, d, gd = d, c, gc
            c = hi - _INVPHI * (hi - lo)
            gc = g(c)
        else:
            lo, c, gc = c, d, gd
            d = lo + _INVPHI * (hi - lo)
            gd = g(d)
    x = 0.5 * (lo + hi)
    return x, g(x)


def ratio_extrema(gen1: Generator, gen2: Generator, r: float, R: float) -> RatioExtrema:
    """Numeric infimum and supremum of ``gen1.d2f / gen2.d2f`` on ``[r, R]``.

    A uniform grid of :data:`GRID_POINTS` locates the extremes; each is then
    polished by golden-section search inside its neighbouring grid cells.
    """
    def ratio(x):
        return gen1.d2f(x) / gen2.d2f(x)

    if R <= r:
        v = _at(ratio, r)
        return RatioExtrema(v, v)

    grid = np.linspace(r, R, GRID_POINTS)
    if not np.all(gen2.d2f(grid) > 0):
        raise InvalidGenerator(f"{gen2.name}: f'' is not positive on [{r!r}, {R!r}]")
    vals = ratio(grid)
    tol = 1e-12 * (R - r + 1.0)

    def polish(i: int, sign: float) -> float:
        lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, GRID_POINTS - 1)]
        _, best = _golden(lambda x: sign * _at(ratio, x), lo, hi, tol)
        return min(sign * float(vals[i]), best) * sign

    m = polish(int(np.argmin(vals)), 1.0)
    M = polish(int(np.argmax(vals)), -1.0)
    return RatioExtrema(m, max(m, M))


@dataclass(frozen=True)
class Comparison:
    """Outcome of ``m C_f2 <= C_f1 <= M C_f2`` for one pair."""

    m: float
    M: float
    c1: float
    c2: float
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def compare(gen1: Generator, gen2: Generator, pair: DistributionPair) -> Comparison:
    ext = ratio_extrema(gen1, gen2, pair.r, pair.R)
    c1, c2 = csiszar(gen1, pair), csiszar(gen2, pair)
    scale = max(1.0, ext.M * c2)
    name = f"{gen1.name}/{gen2.name}"
    return Comparison(ext.m, ext.M, c1, c2, [
        leq(name + ".lower", ext.m * c2, c1, scale, SLACK),
        leq(name + ".upper", c1, ext.M * c2, scale, SLACK),
    ])
