"""Closed-form Ricci components, Einstein residual, natural-reductivity test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import DegenerateMetricError, GroupSpec, MetricParams, RicciComponents

CASES = ("case1", "case2", "case3", "case4")


def ricci_formulas(k1: int, k2: int, k3: int, x1, x2, x3, x12, x13, x23) -> tuple:
    """The six closed-form components, written only with ``+ - * /`` and integer powers.

    Works for Fractions (exact), floats, and monomial-invertible polynomial
    objects alike; no positivity checks.
    """
    n = k1 + k2 + k3
    c = Fraction(1, 4 * (n - 2))
    r1 = (k1 - 2) * c / x1 + c * (k2 * x1 / x12**2 + k3 * x1 / x13**2)
    r2 = (k2 - 2) * c / x2 + c * (k1 * x2 / x12**2 + k3 * x2 / x23**2)
    r3 = (k3 - 2) * c / x3 + c * (k1 * x3 / x13**2 + k2 * x3 / x23**2)
    r12 = (Fraction(1, 2) / x12
           + k3 * c * (x12 / (x13 * x23) - x13 / (x12 * x23) - x23 / (x12 * x13))
           - c * ((k1 - 1) * x1 / x12**2 + (k2 - 1) * x2 / x12**2))
    r13 = (Fraction(1, 2) / x13
           + k2 * c * (x13 / (x12 * x23) - x12 / (x13 * x23) - x23 / (x12 * x13))
           - c * ((k1 - 1) * x1 / x13**2 + (k3 - 1) * x3 / x13**2))
    r23 = (Fraction(1, 2) / x23
           + k1 * c * (x23 / (x13 * x12) - x13 / (x12 * x23) - x12 / (x23 * x13))
           - c * ((k2 - 1) * x2 / x23**2 + (k3 - 1) * x3 / x23**2))
    return r1, r2, r3, r12, r13, r23


def ricci_closed(spec: GroupSpec, x: MetricParams) -> RicciComponents:
    """Ricci components of the metric ``x`` on SO(k1 + k2 + k3).

    Exact when every parameter is a Fraction or int.
    """
    vals = tuple(Fraction(v) if isinstance(v, int) else v for v in x)
    if not all(v > 0 for v in vals):
        raise DegenerateMetricError()
    return RicciComponents(*ricci_formulas(spec.k1, spec.k2, spec.k3, *vals))


@dataclass(frozen=True)
class EinsteinFit:
    lam: float
    residual: float
    zero_constant: bool = False


def einstein_residual(rc: RicciComponents, spec: GroupSpec) -> EinsteinFit:
    """Dimension-weighted mean ``lam`` of the components and max relative deviation from it."""
    r = [float(v) for v in rc]
    d = spec.dims
    lam = sum(di * ri for di, ri in zip(d, r)) / sum(d)
    if lam == 0.0:
        return EinsteinFit(0.0, max(abs(v) for v in r), zero_constant=True)
    return EinsteinFit(lam, max(abs(v - lam) for v in r) / abs(lam))


@dataclass(frozen=True)
class ReductivityVerdict:
    case_matched: str
    witness_tolerance: float

    @property
    def naturally_reductive(self) -> bool:
        return self.case_matched != "none"


def _close(a, b, tol: float) -> bool:
    a, b = float(a), float(b)
    return abs(a - b) <= tol * max(abs(a), abs(b))


def classify_reductive(x: MetricParams, tol: float = 1e-8) -> ReductivityVerdict:
    """First of the four naturally reductive parameter patterns that ``x`` matches, else ``none``."""
    if not x.is_positive():
        raise DegenerateMetricError()
    y = x.to_float().normalized()
    eq = lambda a, b: _close(a, b, tol)  # noqa: E731
    checks = (
        eq(y.x1, y.x2) and eq(y.x2, y.x12) and eq(y.x13, y.x23),
        eq(y.x2, y.x3) and eq(y.x3, y.x23) and eq(y.x12, y.x13),
        eq(y.x1, y.x3) and eq(y.x3, y.x13) and eq(y.x12, y.x23),
        eq(y.x12, y.x13) and eq(y.x13, y.x23),
    )
    for name, hit in zip(CASES, checks):
        if hit:
            return ReductivityVerdict(name, tol)
    return ReductivityVerdict("none", tol)
