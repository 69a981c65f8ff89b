"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence


class ZeroDivisorError(ZeroDivisionError):
    """Division by the zero polynomial."""

    def __init__(self, msg: str = "zero divisor"):
        super().__init__(msg)


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions, floats (exactly) and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    """Immutable polynomial ``c[0] + c[1] x + ... + c[d] x**d`` over Q.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        self.coeffs: tuple[Fraction, ...] = _strip([as_rational(c) for c in coeffs])
        self.var = var

    # construction -------------------------------------------------------

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...], var: str) -> "UniPoly":
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj.var = var
        return obj

    @classmethod
    def constant(cls, c, var: str = "x") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def monomial(cls, degree: int, c=1, var: str = "x") -> "UniPoly":
        return cls([0] * degree + [c], var)

    @classmethod
    def from_roots(cls, roots: Sequence, var: str = "x") -> "UniPoly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-as_rational(r), 1], var)
        return p

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    # basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]}, var={self.var!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}" + (f"*{mono}" if mono else "")
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    # ring operations ------------------------------------------------------

    def __neg__(self) -> "UniPoly":
        return UniPoly._raw(tuple(-c for c in self.coeffs), self.var)

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[i] + other[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = as_rational(other)
            return UniPoly([a * c for a in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = UniPoly([1], self.var), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisorError()
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly((), self.var), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        db = other.degree
        for i in range(dq, -1, -1):
            c = rem[i + db] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return UniPoly(quot, self.var), UniPoly(rem[:db], self.var)

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __truediv__(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return self.exact_div(other)
        c = as_rational(other)
        if c == 0:
            raise ZeroDivisorError()
        return UniPoly([a / c for a in self.coeffs], self.var)

    # evaluation and calculus ---------------------------------------------

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``, floating for floats."""
        if isinstance(x, float):
            acc = 0.0
            for c in reversed(self.coeffs):
                acc = acc * x + float(c)
            return acc
        if isinstance(x, int):
            x = Fraction(x)
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        v = self(as_rational(x))
        return (v > 0) - (v < 0)

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly((), inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` integral and primitive."""
        if not self.coeffs:
            return Fraction(0)
        den = lcm(*(c.denominator for c in self.coeffs))
        num = 0
        for c in self.coeffs:
            num = gcd(num, c.numerator * (den // c.denominator))
        return Fraction(num, den)

    def primitive_part(self) -> "UniPoly":
        """Integer-coefficient primitive polynomial with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return UniPoly._raw(tuple(a / c for a in self.coeffs), self.var)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self / self.leading

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    while not b.is_zero():
        a, b = b, (a % b).primitive_part()
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """``p / gcd(p, p')`` made monic: same roots, each simple."""
    if p.is_constant():
        return p.monic() if not p.is_zero() else p
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: ``p = c * prod(f_i ** i)`` with each f_i squarefree, coprime.

    Returns the non-constant ``(f_i, i)`` pairs.
    """
    if p.is_constant():
        return []
    dp = p.derivative()
    g = poly_gcd(p, dp)
    b = p.exact_div(g)
    c = dp.exact_div(g)
    d = c - b.derivative()
    out = []
    i = 1
    while not b.is_constant():
        a = poly_gcd(b, d)
        if not a.is_constant():
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def is_squarefree(p: UniPoly) -> bool:
    if p.is_constant():
        return True
    return poly_gcd(p, p.derivative()).is_constant()


def cauchy_bound(p: UniPoly) -> Fraction:
    """``1 + max |c_i / c_deg|``: every complex root has modulus below this."""
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.leading)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])


def descartes_signs(p: UniPoly) -> tuple[int, ...]:
    """Sign (+1, -1, 0) of every coefficient, by ascending degree."""
    return tuple((c > 0) - (c < 0) for c in p.coeffs)


def sign_variations(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)
