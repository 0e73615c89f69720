"""Probability vectors on the strictly positive simplex.

A :class:`Distribution` holds a read-only float64 vector with every entry
strictly positive and a sum within ``SUM_TOL`` of one. A
:class:`DistributionPair` caches the extremes of the likelihood ratio
``p_i / q_i``, which every interval bound in the package is built from.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    BadDimension,
    BadFloor,
    LengthMismatch,
    NonPositiveEntry,
    NotNormalized,
    ParseError,
    TooShort,
)

SUM_TOL = 1e-9
DEFAULT_FLOOR = 1e-6
FORMATS = ("lines", "json-array", "csv-column")


@dataclass(frozen=True, eq=False)
class Distribution:
    """A point of the open probability simplex.

    Construction validates the vector; use :func:`validate` to build one
    from raw numbers with optional rescaling.
    """

    probs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.probs, dtype=np.float64).ravel()
        if arr.size < 2:
            raise TooShort(f"need at least 2 entries, got {arr.size}")
        bad = ~(np.isfinite(arr) & (arr > 0))
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise NonPositiveEntry(f"entry {i} is {arr[i]!r}; entries must be finite and > 0")
        total = math.fsum(arr)
        if abs(total - 1.0) > SUM_TOL:
            raise NotNormalized(f"entries sum to {total!r}, not 1 (tolerance {SUM_TOL})")
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)

    @property
    def n(self) -> int:
        return self.probs.size

    def __len__(self):
        return self.probs.size

    def __iter__(self):
        return iter(self.probs.tolist())

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    def __hash__(self):
        return hash(self.probs.tobytes())

    def __repr__(self):
        return f"Distribution({', '.join(repr(x) for x in self)})"


@dataclass(frozen=True, eq=False)
class DistributionPair:
    """Two distributions on the same support with cached ratio extremes.

    ``r`` and ``R`` are the smallest and largest values of ``p_i / q_i``.
    """

    p: Distribution
    q: Distribution
    r: float
    R: float

    @property
    def n(self) -> int:
        return self.p.n

    def swapped(self) -> DistributionPair:
        """The pair (Q, P)."""
        return pair(self.q, self.p)

    def __eq__(self, other):
        if not isinstance(other, DistributionPair):
            return NotImplemented
        return self.p == other.p and self.q == other.q


def validate(raw: Sequence[float], normalize: bool = False) -> Distribution:
    """Build a :class:`Distribution` from raw numbers.

    Parameters
    ----------
    raw : sequence of float
        Candidate probabilities.
    normalize : bool
        Divide by the sum before checking. Positivity is still required:
        zero or negative entries are never clamped.

    Raises
    ------
    TooShort, NonPositiveEntry, NotNormalized
    """
    arr = np.array(raw, dtype=np.float64).ravel()
    if normalize and arr.size >= 2:
        bad = ~(np.isfinite(arr) & (arr > 0))
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise NonPositiveEntry(f"entry {i} is {arr[i]!r}; entries must be finite and > 0")
        arr = arr / math.fsum(arr)
    return Distribution(arr)


def pair(p: Distribution, q: Distribution) -> DistributionPair:
    """Pair two distributions and record ``r = min p/q`` and ``R = max p/q``."""
    if p.n != q.n:
        raise LengthMismatch(f"P has {p.n} entries, Q has {q.n}")
    ratio = p.probs / q.probs
    # Sums are 1 only up to rounding, so a near-equal pair can put both
    # extremes on the same side of 1. Widening to include 1 keeps every
    # interval bound valid.
    r = min(float(ratio.min()), 1.0)
    R = max(float(ratio.max()), 1.0)
    return DistributionPair(p, q, r, R)


def _draw(rng: np.random.Generator, n: int, floor: float) -> Distribution:
    x = rng.standard_exponential(n)
    x = x / x.sum()
    x = np.maximum(x, floor)
    return Distribution(x / x.sum())


def sample_pair(seed: int, n: int, floor: float = DEFAULT_FLOOR) -> DistributionPair:
    """Draw two independent uniform points of the simplex.

    Each vector is a normalized draw of ``n`` unit exponentials, clamped
    below at ``floor`` and renormalized. The result depends only on
    ``(seed, n, floor)``.
    """
    rng = np.random.default_rng(seed)
    p, q = sample_distributions(rng, n, 2, floor)
    return pair(p, q)


def sample_distributions(rng: np.random.Generator, n: int, k: int,
                         floor: float = DEFAULT_FLOOR) -> list[Distribution]:
    """Draw ``k`` independent distributions of size ``n`` from ``rng``."""
    if int(n) != n or n < 2:
        raise BadDimension(f"dimension must be an integer >= 2, got {n!r}")
    n = int(n)
    if not (0 < floor < 1.0 / n):
        raise BadFloor(f"floor must lie in (0, 1/n) = (0, {1.0 / n!r}), got {floor!r}")
    return [_draw(rng, n, floor) for _ in range(k)]


def _parse_number(token: str, where: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"{where}: cannot parse {token!r} as a number") from None


def read_values(path, fmt: str = "lines") -> list[float]:
    """Read a raw number sequence from ``path`` in one of :data:`FORMATS`."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if fmt == "lines":
        return [_parse_number(line.strip(), f"{path}:{i}")
                for i, line in enumerate(text.splitlines(), 1) if line.strip()]
    if fmt == "json-array":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON ({exc})") from None
        if not isinstance(data, list):
            raise ParseError(f"{path}: expected a JSON array")
        for v in data:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"{path}: non-numeric element {v!r}")
        return [float(v) for v in data]
    if fmt == "csv-column":
        rows = csv.reader(text.splitlines())
        return [_parse_number(row[0].strip(), f"{path}:{i}")
                for i, row in enumerate(rows, 1) if row and row[0].strip()]
    raise ParseError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def load(path, fmt: str = "lines", normalize: bool = False) -> Distribution:
    """Read a distribution from a file and validate it."""
    return validate(read_values(path, fmt), normalize=normalize)
