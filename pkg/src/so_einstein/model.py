"""Shared value types: block sizes, metric parameters, Ricci components."""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields
from fractions import Fraction
from typing import Iterator

LABELS = (1, 2, 3, 12, 13, 23)
FIELD_NAMES = ("x1", "x2", "x3", "x12", "x13", "x23")


class InvalidSpecError(ValueError):
    pass


class DegenerateMetricError(ValueError):
    def __init__(self, msg: str = "degenerate metric"):
        super().__init__(msg)


@dataclass(frozen=True)
class GroupSpec:
    """Diagonal blocks SO(k1) x SO(k2) x SO(k3) inside SO(k1 + k2 + k3)."""

    k1: int
    k2: int
    k3: int

    def __post_init__(self):
        for k in (self.k1, self.k2, self.k3):
            if not isinstance(k, int) or k < 2:
                raise InvalidSpecError(f"block sizes must be integers >= 2, got {astuple(self)}")
        if self.n < 7:
            raise InvalidSpecError(f"n = {self.n} < 7")

    @property
    def blocks(self) -> tuple[int, int, int]:
        return (self.k1, self.k2, self.k3)

    @property
    def n(self) -> int:
        return self.k1 + self.k2 + self.k3

    @property
    def dims(self) -> tuple[int, int, int, int, int, int]:
        k1, k2, k3 = self.blocks
        return (k1 * (k1 - 1) // 2, k2 * (k2 - 1) // 2, k3 * (k3 - 1) // 2,
                k1 * k2, k1 * k3, k2 * k3)

    def block_of(self, index: int) -> int:
        """0, 1 or 2: which diagonal block the matrix row/column ``index`` falls in."""
        if index < self.k1:
            return 0
        if index < self.k1 + self.k2:
            return 1
        return 2

    def module_of(self, a: int, b: int) -> int:
        """Module label (1, 2, 3, 12, 13, 23) of the skew pair E_ab - E_ba."""
        i, j = sorted((self.block_of(a), self.block_of(b)))
        if i == j:
            return i + 1
        return 10 * (i + 1) + (j + 1)


class _SixTuple:
    def __iter__(self) -> Iterator:
        return iter(astuple(self))

    def as_tuple(self) -> tuple:
        return astuple(self)

    def map(self, fn):
        return type(self)(*(fn(v) for v in astuple(self)))


@dataclass(frozen=True)
class MetricParams(_SixTuple):
    """Scalings of -B on m1, m2, m3, m12, m13, m23 (floats or exact Fractions)."""

    x1: object
    x2: object
    x3: object
    x12: object
    x13: object
    x23: object

    def is_positive(self) -> bool:
        return all(v > 0 for v in astuple(self))

    def scaled(self, c) -> "MetricParams":
        return self.map(lambda v: v * c)

    def normalized(self) -> "MetricParams":
        """Divide all six by x13."""
        return self.map(lambda v: v / self.x13)

    def to_float(self) -> "MetricParams":
        return self.map(float)

    @classmethod
    def ones(cls, exact: bool = True) -> "MetricParams":
        one = Fraction(1) if exact else 1.0
        return cls(*([one] * 6))


@dataclass(frozen=True)
class RicciComponents(_SixTuple):
    r1: object
    r2: object
    r3: object
    r12: object
    r13: object
    r23: object


METRIC_FIELDS = tuple(f.name for f in fields(MetricParams))
