"""Inequality check records shared by every verifier."""

from __future__ import annotations

from dataclasses import dataclass

SLACK = 1e-9
IDENTITY_TOL = 1e-12


@dataclass(frozen=True)
class Check:
    """One assertion ``lhs <= rhs + slack``.

    Identity checks store the residual as ``lhs`` and 0 as ``rhs``, with
    the identity tolerance as ``slack``.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool

    @property
    def margin(self) -> float:
        """How far inside the bound the check landed (negative on failure)."""
        return self.rhs + self.slack - self.lhs

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "slack": self.slack, "passed": self.passed}

    @classmethod
    def from_dict(cls, d: dict) -> Check:
        return cls(d["name"], d["lhs"], d["rhs"], d["slack"], d["passed"])


def leq(name: str, lhs: float, rhs: float, scale: float | None = None,
        tol: float = SLACK) -> Check:
    """Check ``lhs <= rhs`` with slack ``tol * max(1, |scale|)``.

    ``scale`` defaults to the larger of the two sides.
    """
    if scale is None:
        scale = max(abs(lhs), abs(rhs))
    slack = tol * max(1.0, abs(scale))
    lhs, rhs = float(lhs), float(rhs)
    return Check(name, lhs, rhs, slack, lhs <= rhs + slack)


def identity(name: str, lhs: float, rhs: float, tol: float = IDENTITY_TOL) -> Check:
    """Check ``|lhs - rhs| <= tol * max(1, |lhs|)``."""
    residual = abs(float(lhs) - float(rhs))
    slack = tol * max(1.0, abs(float(lhs)))
    return Check(name, residual, 0.0, slack, residual <= slack)


def all_passed(checks) -> bool:
    return all(c.passed for c in checks)
