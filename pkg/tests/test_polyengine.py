import random
from fractions import Fraction as Q

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from so_einstein.polyengine import (
    BiPoly,
    MultiPoly,
    NothingToEliminate,
    NotSquarefreeError,
    RootInterval,
    UniPoly,
    ZeroDivisorError,
    descartes_signs,
    format_poly,
    isolate_roots,
    parse_poly,
    poly_gcd,
    positive_root_bound,
    refine_root,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    sturm_count,
)

X = UniPoly([0, 1])
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
unipolys = st.lists(rationals, max_size=7).map(UniPoly)
nonzero_unipolys = unipolys.filter(lambda p: not p.is_zero())


def rand_points(seed, n=20):
    rng = random.Random(seed)
    return [Q(rng.randint(-50, 50), rng.randint(1, 17)) for _ in range(n)]


def to_sympy(p: UniPoly, x):
    return sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], x)


# arithmetic ---------------------------------------------------------------

@given(unipolys, unipolys, st.integers(0, 2**16))
def test_ring_homomorphism_univariate(a, b, seed):
    for t in rand_points(seed):
        assert (a + b)(t) == a(t) + b(t)
        assert (a - b)(t) == a(t) - b(t)
        assert (a * b)(t) == a(t) * b(t)


@given(unipolys, nonzero_unipolys)
def test_divmod_reconstructs(a, b):
    quo, rem = divmod(a, b)
    assert quo * b + rem == a
    assert rem.degree < b.degree


def test_division_by_zero_polynomial():
    with pytest.raises(ZeroDivisorError, match="zero divisor"):
        divmod(X + 1, UniPoly([]))


@given(nonzero_unipolys, nonzero_unipolys)
def test_gcd_matches_sympy(a, b):
    x = sp.Symbol("x")
    ref = sp.gcd(to_sympy(a, x), to_sympy(b, x)).monic()
    assert sp.expand(to_sympy(poly_gcd(a, b), x).as_expr() - ref.as_expr()) == 0


def test_gcd_example():
    a = (X - 1) * (X - 2) * (X + 3)
    b = (X - 2) * (X + 3) * (X + 5)
    assert poly_gcd(a, b) == (X - 2) * (X + 3)


def test_squarefree_decomposition():
    p = 3 * (X - 1) ** 3 * (X + 2) ** 2 * (X - Q(1, 2))
    parts = dict((m, f) for f, m in squarefree_decomposition(p))
    assert parts[1] == X - Q(1, 2)
    assert parts[2] == X + 2
    assert parts[3] == X - 1
    assert squarefree_part(p) == ((X - 1) * (X + 2) * (X - Q(1, 2))).monic()


@given(st.lists(rationals, min_size=1, max_size=4), st.integers(0, 2**16))
def test_multivariate_ring_homomorphism(cs, seed):
    vars_ = ("x", "y", "z")
    x, y, z = (MultiPoly.var(v, vars_) for v in vars_)
    a = cs[0] * x**2 * y - z + 3
    b = sum((c * x ** i * z for i, c in enumerate(cs)), MultiPoly.constant(1, vars_))
    rng = random.Random(seed)
    for _ in range(20):
        pt = [Q(rng.randint(-9, 9), rng.randint(1, 5)) for _ in vars_]
        assert (a * b)(*pt) == a(*pt) * b(*pt)
        assert (a - b)(*pt) == a(*pt) - b(*pt)


def test_multipoly_exact_division():
    vars_ = ("x", "y")
    x, y = (MultiPoly.var(v, vars_) for v in vars_)
    f = (x - y) * (x**2 * y + 3 * x - 2)
    assert f / (x - y) == x**2 * y + 3 * x - 2


# roots --------------------------------------------------------------------

def test_sturm_examples():
    assert sturm_count(X**2 - 2, 1, 2) == 1
    assert sturm_count(X**2 + 1, -10, 10) == 0
    with pytest.raises(NotSquarefreeError, match="not squarefree"):
        sturm_count((X - 1) ** 2, 0, 2)


def test_isolation_examples():
    ivs = isolate_roots(X**2 - 2, -2, 2)
    assert len(ivs) == 2
    assert ivs[0].lo >= -2 and ivs[0].hi <= 0
    assert ivs[1].lo >= 0 and ivs[1].hi <= 2
    assert isolate_roots(X**2 + 1, -10, 10) == []


def test_isolation_with_root_at_midpoint():
    p = (X - 1) * (X - 3) * X
    ivs = isolate_roots(p, -2, 4)
    assert len(ivs) == 3
    for iv, r in zip(ivs, (0, 1, 3)):
        assert iv.lo < r <= iv.hi


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=1, max_size=6, unique=True))
def test_isolation_agrees_with_sturm_and_sympy(roots):
    p = UniPoly.from_roots(roots) * (X**2 + 1)
    bound = positive_root_bound(p)
    ivs = isolate_roots(p, -bound, bound)
    assert len(ivs) == sturm_count(p, -bound, bound) == len(roots)
    for a, b in zip(ivs, ivs[1:]):
        assert a.hi <= b.lo
    x = sp.Symbol("x")
    assert len(sp.real_roots(to_sympy(p, x))) == len(ivs)
    for iv in ivs:
        assert sturm_count(p, iv.lo, iv.hi) + (1 if p(iv.hi) == 0 else 0) == 1


def interval(p, lo, hi):
    return RootInterval(Q(lo), Q(hi), p.sign_at(Q(lo)))


def test_refine_sqrt2():
    r = refine_root(X**2 - 2, interval(X**2 - 2, 1, 2), 1e-12)
    assert abs(r.value - 2 ** 0.5) < 1e-12
    assert r.certified_lo <= Q(r.value) <= r.certified_hi
    assert r.relative_width <= 1e-12


def test_refine_exact_rational():
    r = refine_root(7 * X - 3, interval(7 * X - 3, 0, 1))
    assert r.exact == Q(3, 7)
    assert r.certified_lo == r.certified_hi == Q(3, 7)
    p = (X - Q(3, 7)) * (X**2 - 5)
    r = refine_root(p, interval(p, 0, 1))
    assert r.exact == Q(3, 7)


@given(st.integers(2, 40), st.integers(1, 9))
def test_refine_brackets_sign_change_and_trace_monotone(a, b):
    p = b * X**3 - a
    iv = isolate_roots(p, 0, positive_root_bound(p))[0]
    r = refine_root(p, iv, 1e-10)
    if r.exact is None:
        assert p(r.certified_lo) * p(r.certified_hi) < 0
    assert all(u >= v for u, v in zip(r.trace, r.trace[1:]))
    assert abs(r.value - (a / b) ** (1 / 3)) <= 1e-9 * (a / b) ** (1 / 3)


# resultant ----------------------------------------------------------------

def bivars():
    return tuple(MultiPoly.var(v, ("x", "y")) for v in ("x", "y"))


def test_resultant_linear():
    x, y = bivars()
    a, b = 3 * x**2 - 1, x + 7
    r = resultant(BiPoly((y - a).terms, ("x", "y")), BiPoly((y - b).terms, ("x", "y")), "y")
    diff = (b - a).to_unipoly("x")
    assert r == diff or r == -diff


def test_resultant_quadratic_linear():
    x, y = bivars()
    r = resultant(y**2 - x, y - 1, "y")
    assert r == 1 - X or r == X - 1


def test_resultant_nothing_to_eliminate():
    x, y = bivars()
    with pytest.raises(NothingToEliminate, match="nothing to eliminate"):
        resultant(x**2 + 1, y - x, "y")


@given(st.fractions(min_value=-4, max_value=4, max_denominator=5),
       st.fractions(min_value=-4, max_value=4, max_denominator=5),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_resultant_vanishes_at_common_root(xs, ys, c):
    x, y = bivars()
    f = (y - ys) * (y + c[0] * x + 1) + c[1] * (x - xs)
    g = (y - ys) ** 2 + (c[2] * y + c[3]) * (x - xs) * (x + 2)
    assert f(xs, ys) == 0 and g(xs, ys) == 0
    r = resultant(f, g, "y")
    assert r(xs) == 0


def test_resultant_matches_sympy():
    x, y = bivars()
    f = 2 * x * y**2 - y + x**3 - 1
    g = y**2 * x + 3 * y - x
    xs, ys = sp.symbols("x y")
    ref = sp.Poly(sp.resultant(2 * xs * ys**2 - ys + xs**3 - 1, ys**2 * xs + 3 * ys - xs, ys), xs)
    assert sp.expand(to_sympy(resultant(f, g, "y"), xs).as_expr() - ref.as_expr()) == 0


# descartes ----------------------------------------------------------------

def test_descartes_examples():
    assert descartes_signs(X**2 - 2 * X + 1) == (1, -1, 1)
    assert descartes_signs(UniPoly([])) == ()


@given(st.lists(st.fractions(min_value=Q(1, 10), max_value=10, max_denominator=10), min_size=1, max_size=8))
def test_alternating_signs_exclude_negative_roots(mags):
    p = UniPoly([m if i % 2 == 0 else -m for i, m in enumerate(mags)])
    p = squarefree_part(p)
    assert isolate_roots(p, -positive_root_bound(p), 0) == []


# text format --------------------------------------------------------------

@given(unipolys)
def test_text_roundtrip_unipoly(p):
    assert parse_poly(format_poly(p, provenance="unit test")) == p


def test_text_roundtrip_bipoly():
    x, y = bivars()
    p = Q(3, 7) * x**2 * y - y**3 + Q(-1, 2)
    back = parse_poly(format_poly(p))
    assert isinstance(back, BiPoly)
    assert back == p


def test_text_format_shape():
    text = format_poly(X**2 - Q(1, 3), provenance="demo")
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    assert sorted(lines) == ["0 -1/3", "2 1/1"]
