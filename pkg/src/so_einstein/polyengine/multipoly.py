"""Sparse multivariate polynomials over Q.

Exponents may go negative after dividing by a monomial, which makes the
same class double as a Laurent polynomial while clearing denominators of
rational expressions; :meth:`MultiPoly.clear_monomial_denominator` brings
such a value back to an ordinary polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from .unipoly import UniPoly, ZeroDivisorError, as_rational

Exps = tuple[int, ...]


class MultiPoly:
    __slots__ = ("terms", "vars")

    def __init__(self, terms: Mapping[Exps, object] | Iterable = (), vars: Iterable[str] = ("x", "y")):
        self.vars: tuple[str, ...] = tuple(vars)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exps, Fraction] = {}
        nv = len(self.vars)
        for e, c in items:
            e = tuple(int(v) for v in e)
            if len(e) != nv:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            c = as_rational(c)
            if c:
                c = clean.get(e, 0) + c
                if c:
                    clean[e] = c
                else:
                    clean.pop(e, None)
        self.terms: dict[Exps, Fraction] = clean

    @classmethod
    def _raw(cls, terms: dict[Exps, Fraction], vars: tuple[str, ...]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.vars = vars
        return obj

    @classmethod
    def var(cls, name: str, vars: Iterable[str]) -> "MultiPoly":
        vars = tuple(vars)
        e = tuple(1 if v == name else 0 for v in vars)
        if sum(e) != 1:
            raise ValueError(f"{name!r} not among {vars}")
        return cls._raw({e: Fraction(1)}, vars)

    @classmethod
    def constant(cls, c, vars: Iterable[str]) -> "MultiPoly":
        vars = tuple(vars)
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def from_unipoly(cls, p: UniPoly, vars: Iterable[str]) -> "MultiPoly":
        vars = tuple(vars)
        idx = vars.index(p.var)
        terms = {}
        for d, c in enumerate(p.coeffs):
            if c:
                e = [0] * len(vars)
                e[idx] = d
                terms[tuple(e)] = c
        return cls._raw(terms, vars)

    def _new(self, terms: dict[Exps, Fraction]) -> "MultiPoly":
        return type(self)._raw(terms, self.vars)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, UniPoly):
            return MultiPoly.from_unipoly(other, self.vars)
        c = as_rational(other)
        return self._new({(0,) * len(self.vars): c} if c else {})

    # properties ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if None); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var: str) -> int:
        i = self.vars.index(var)
        return min(e[i] for e in self.terms) if self.terms else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self._coerce(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({len(self.terms)} terms in {self.vars})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(v if p == 1 else f"{v}^{p}" for v, p in zip(self.vars, e) if p)
            body = mono if mono and abs(c) == 1 else (f"{abs(c)}*{mono}" if mono else f"{abs(c)}")
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    # arithmetic ---------------------------------------------------------

    def __neg__(self) -> "MultiPoly":
        return self._new({e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, (MultiPoly, UniPoly)):
            c = as_rational(other)
            return self._new({e: a * c for e, a in self.terms.items()} if c else {})
        other = self._coerce(other)
        out: dict[Exps, Fraction] = {}
        for e1, a in self.terms.items():
            for e2, b in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + a * b
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only of monomials")
            (e, c), = self.terms.items()
            return self._new({tuple(n * x for x in e): 1 / c ** -n})
        result = self._coerce(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            other = self._coerce(other)
            if other.is_monomial():
                return self * other ** -1
            q, r = divmod(self, other)
            if not r.is_zero():
                raise ArithmeticError("inexact multivariate division")
            return q
        c = as_rational(other)
        if c == 0:
            raise ZeroDivisorError()
        return self._new({e: a / c for e, a in self.terms.items()})

    def __rtruediv__(self, other) -> "MultiPoly":
        if not self.is_monomial():
            raise ValueError("only monomials can be inverted")
        return self ** -1 * as_rational(other)

    def __divmod__(self, other) -> tuple["MultiPoly", "MultiPoly"]:
        """Multivariate division under lex order on ``self.vars``.

        ``self == q * other + r`` and no term of ``r`` is divisible by the
        leading term of ``other``. Exact whenever ``other`` divides ``self``.
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisorError()
        lt = max(other.terms)
        lc = other.terms[lt]
        rest = dict(self.terms)
        q: dict[Exps, Fraction] = {}
        r: dict[Exps, Fraction] = {}
        while rest:
            e = max(rest)
            c = rest[e]
            shift = tuple(a - b for a, b in zip(e, lt))
            if min(shift) < 0:
                r[e] = c
                del rest[e]
                continue
            f = c / lc
            q[shift] = q.get(shift, 0) + f
            for e2, c2 in other.terms.items():
                t = tuple(a + b for a, b in zip(e2, shift))
                s = rest.get(t, 0) - f * c2
                if s:
                    rest[t] = s
                else:
                    rest.pop(t, None)
        return self._new(q), self._new(r)

    # evaluation and structure ---------------------------------------------

    def __call__(self, *values):
        """Evaluate at a full point (exact for rationals, float for floats)."""
        if len(values) != len(self.vars):
            raise ValueError(f"expected {len(self.vars)} values")
        use_float = any(isinstance(v, float) for v in values)
        vals = [float(v) if use_float else as_rational(v) for v in values]
        acc = 0.0 if use_float else Fraction(0)
        for e, c in self.terms.items():
            t = float(c) if use_float else c
            for v, p in zip(vals, e):
                if p:
                    t *= v ** p
            acc += t
        return acc

    def subs(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Substitute rational constants for some variables; they disappear from ``vars``."""
        idx = [i for i, v in enumerate(self.vars) if v in mapping]
        keep = [i for i, v in enumerate(self.vars) if v not in mapping]
        vals = {i: as_rational(mapping[self.vars[i]]) for i in idx}
        out: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            for i in idx:
                c = c * vals[i] ** e[i]
            if not c:
                continue
            ne = tuple(e[i] for i in keep)
            s = out.get(ne, 0) + c
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        new_vars = tuple(self.vars[i] for i in keep)
        cls = BiPoly if len(new_vars) == 2 else MultiPoly
        return cls._raw(out, new_vars)

    def reorder(self, vars: Iterable[str]) -> "MultiPoly":
        """Same polynomial over a (super)set of variables in a new order."""
        vars = tuple(vars)
        missing = set(self.vars) - set(vars)
        if missing:
            raise ValueError(f"cannot drop variables {missing}")
        pos = [self.vars.index(v) if v in self.vars else None for v in vars]
        terms = {tuple(e[p] if p is not None else 0 for p in pos): c for e, c in self.terms.items()}
        cls = BiPoly if len(vars) == 2 else MultiPoly
        return cls._raw(terms, vars)

    def to_unipoly(self, var: str | None = None) -> UniPoly:
        """Convert when at most one variable actually occurs."""
        live = {v for e in self.terms for v, p in zip(self.vars, e) if p}
        if var is None:
            if len(live) > 1:
                raise ValueError(f"more than one live variable: {sorted(live)}")
            var = live.pop() if live else self.vars[0]
        elif live - {var}:
            raise ValueError(f"variables {sorted(live - {var})} still present")
        i = self.vars.index(var)
        deg = self.degree(var)
        coeffs = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            if e[i] < 0:
                raise ValueError("negative exponent")
            coeffs[e[i]] = c
        return UniPoly(coeffs, var)

    def coefficients_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Split as ``sum_j c_j * var**j``; each ``c_j`` keeps the full variable tuple."""
        i = self.vars.index(var)
        out: dict[int, dict[Exps, Fraction]] = {}
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(e[i], {})[ne] = c
        return {d: self._new(t) for d, t in out.items()}

    def derivative(self, var: str) -> "MultiPoly":
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return self._new(out)

    def monomial_content(self) -> Exps:
        """Componentwise minimum exponent over all terms."""
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self.terms))

    def shift_exponents(self, shift: Exps) -> "MultiPoly":
        return self._new({tuple(a + b for a, b in zip(e, shift)): c for e, c in self.terms.items()})

    def clear_monomial_denominator(self) -> "MultiPoly":
        """Divide out the monomial content, so every exponent is >= 0 and some is 0 per variable."""
        return self.shift_exponents(tuple(-m for m in self.monomial_content()))

    def content(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        den = lcm(*(c.denominator for c in self.terms.values()))
        num = 0
        for c in self.terms.values():
            num = gcd(num, c.numerator * (den // c.denominator))
        return Fraction(num, den)

    def primitive_part(self) -> "MultiPoly":
        """Integer primitive form with positive lex-leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.terms[max(self.terms)] < 0:
            c = -c
        return self._new({e: a / c for e, a in self.terms.items()})

    def proportionality(self, other: "MultiPoly") -> Fraction | None:
        """Return c with ``self == c * other`` exactly, or None."""
        other = self._coerce(other)
        if self.terms.keys() != other.terms.keys():
            return None
        if not self.terms:
            return Fraction(1)
        e = next(iter(self.terms))
        c = self.terms[e] / other.terms[e]
        if all(self.terms[t] == c * other.terms[t] for t in self.terms):
            return c
        return None


class BiPoly(MultiPoly):
    """A :class:`MultiPoly` in exactly two variables."""

    __slots__ = ()

    def __init__(self, terms=(), vars: Iterable[str] = ("x", "y")):
        super().__init__(terms, vars)
        if len(self.vars) != 2:
            raise ValueError("BiPoly needs exactly two variables")
