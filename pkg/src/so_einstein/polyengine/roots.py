"""Real-root counting, isolation and certified refinement via Sturm sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isfinite

from .unipoly import UniPoly, as_rational, cauchy_bound, is_squarefree

ENDPOINT_NUDGE = Fraction(1, 2**40)
NEWTON_STEPS = 3


class NotSquarefreeError(ValueError):
    def __init__(self, msg: str = "not squarefree"):
        super().__init__(msg)


@dataclass(frozen=True)
class RootInterval:
    """Half-open ``(lo, hi]`` holding exactly one root; ``parity`` is sign p(lo)."""

    lo: Fraction
    hi: Fraction
    parity: int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class RefinedRoot:
    value: float
    certified_lo: Fraction
    certified_hi: Fraction
    relative_width: float
    exact: Fraction | None = None
    newton_accepted: bool = False
    trace: tuple[float, ...] = field(default=(), repr=False, compare=False)

    @property
    def midpoint(self) -> Fraction:
        return (self.certified_lo + self.certified_hi) / 2

    @property
    def best_rational(self) -> Fraction:
        """Exact root if known, else the float value (inside the certificate) as a rational."""
        if self.exact is not None:
            return self.exact
        return Fraction(self.value)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


class SturmSequence:
    """Signed remainder chain ``p, p', -rem(p, p'), ...`` of a squarefree polynomial."""

    def __init__(self, p: UniPoly, check: bool = True):
        if p.is_zero():
            raise ValueError("Sturm sequence of the zero polynomial")
        if check and not is_squarefree(p):
            raise NotSquarefreeError()
        chain = [p, p.derivative()]
        while not chain[-1].is_zero() and chain[-1].degree > 0:
            r = -(chain[-2] % chain[-1])
            if r.is_zero():
                break
            chain.append(r / r.content())
        self.p = p
        self.chain = [q for q in chain if not q.is_zero()]

    def variations(self, x: Fraction) -> int:
        signs = [s for s in (q.sign_at(x) for q in self.chain) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def variations_at_infinity(self, positive: bool) -> int:
        signs = []
        for q in self.chain:
            s = _sign(q.leading)
            if not positive and q.degree % 2:
                s = -s
            signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count_half_open(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct roots in ``(lo, hi]``."""
        return self.variations(lo) - self.variations(hi)

    def count_real(self) -> int:
        return self.variations_at_infinity(False) - self.variations_at_infinity(True)


def _nudge_open(p: UniPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Move root endpoints inward by ``width / 2**40`` until neither is a root."""
    while p(lo) == 0 or p(hi) == 0:
        step = (hi - lo) * ENDPOINT_NUDGE
        if p(lo) == 0:
            lo += step
        if p(hi) == 0:
            hi -= step
    return lo, hi


def _check_range(lo, hi) -> tuple[Fraction, Fraction]:
    lo, hi = as_rational(lo), as_rational(hi)
    if not lo < hi:
        raise ValueError(f"empty interval ({lo}, {hi})")
    return lo, hi


def sturm_count(p: UniPoly, lo, hi, sturm: SturmSequence | None = None) -> int:
    """Exact number of distinct real roots of squarefree ``p`` in the open interval ``(lo, hi)``."""
    lo, hi = _check_range(lo, hi)
    sturm = sturm or SturmSequence(p)
    lo, hi = _nudge_open(p, lo, hi)
    return sturm.count_half_open(lo, hi)


def positive_root_bound(p: UniPoly) -> Fraction:
    """Upper end of the positive search range, ``1 + max(1, cauchy_bound(p))``."""
    return 1 + max(Fraction(1), cauchy_bound(p))


def isolate_roots(p: UniPoly, lo, hi, sturm: SturmSequence | None = None) -> list[RootInterval]:
    """Disjoint intervals, sorted, each holding exactly one root of ``p`` in ``(lo, hi)``.

    No returned endpoint is a root of ``p``, so endpoint signs always differ.
    """
    lo, hi = _check_range(lo, hi)
    sturm = sturm or SturmSequence(p)
    lo, hi = _nudge_open(p, lo, hi)
    out: list[RootInterval] = []
    stack = [(lo, hi, sturm.count_half_open(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(RootInterval(a, b, p.sign_at(a)))
            continue
        m = (a + b) / 2
        while p(m) == 0:
            m += (b - a) * ENDPOINT_NUDGE
        left = sturm.count_half_open(a, m)
        stack.append((m, b, n - left))
        stack.append((a, m, left))
    out.sort(key=lambda iv: iv.lo)
    return out


def simplest_rational(a: Fraction, b: Fraction) -> Fraction:
    """The rational with smallest denominator in ``[a, b]`` (continued-fraction descent)."""
    if a <= 0 <= b:
        return Fraction(0)
    if b < 0:
        return -simplest_rational(-b, -a)
    fl = a.numerator // a.denominator
    if fl == a:
        return a
    if fl + 1 <= b:
        return Fraction(fl + 1)
    return fl + 1 / simplest_rational(1 / (b - fl), 1 / (a - fl))


def _relative_width(lo: Fraction, hi: Fraction) -> Fraction:
    scale = max(abs(lo), abs(hi))
    return (hi - lo) / scale if scale else Fraction(0)


def refine_root(p: UniPoly, iv: RootInterval, rel_tol: float = 1e-12) -> RefinedRoot:
    """Shrink ``iv`` by exact bisection to relative width ``rel_tol``, then polish with Newton.

    Newton runs in floating point from the midpoint; any iterate leaving the
    certified interval is discarded and the midpoint is reported instead.
    """
    lo, hi = iv.lo, iv.hi
    tol = as_rational(rel_tol)
    if p(hi) == 0:
        return RefinedRoot(float(hi), hi, hi, 0.0, exact=hi)
    s_lo = p.sign_at(lo)
    if s_lo == 0 or s_lo == p.sign_at(hi):
        raise ValueError("interval does not bracket a sign change")
    if lo < 0 < hi and p(Fraction(0)) == 0:
        return RefinedRoot(0.0, Fraction(0), Fraction(0), 0.0, exact=Fraction(0))

    if p.degree == 1:
        r = -p[0] / p[1]
        return RefinedRoot(float(r), r, r, 0.0, exact=r)

    best = min(abs(float(p(lo))), abs(float(p(hi))))
    trace = [best]
    while _relative_width(lo, hi) > tol:
        m = (lo + hi) / 2
        vm = p(m)
        if vm == 0:
            trace.append(0.0)
            return RefinedRoot(float(m), m, m, 0.0, exact=m, trace=tuple(trace))
        if _sign(vm) == s_lo:
            lo = m
        else:
            hi = m
        best = min(best, abs(float(vm)))
        trace.append(best)

    q = simplest_rational(lo, hi)
    if p(q) == 0:
        return RefinedRoot(float(q), q, q, 0.0, exact=q, trace=tuple(trace + [0.0]))

    mid = (lo + hi) / 2
    value, accepted = float(mid), False
    dp = p.derivative()
    x = value
    for _ in range(NEWTON_STEPS):
        d = dp(x)
        if d == 0.0:
            break
        nx = x - p(x) / d
        if not isfinite(nx) or not lo <= Fraction(nx) <= hi:
            x, accepted = value, False
            break
        x, accepted = nx, True
    if accepted:
        value = x
    return RefinedRoot(value, lo, hi, float(_relative_width(lo, hi)),
                       newton_accepted=accepted, trace=tuple(trace))
