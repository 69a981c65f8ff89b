"""Einstein metrics on SO(2k + l) invariant under SO(k) x SO(k) x SO(l).

Ansatz: k1 = k2 = k, k3 = l, x1 = x2, x13 = x23 = 1. The pipeline

    build_system -> factor_f2 -> substitute_x2 -> eliminate
                 -> isolate/refine x12 -> back_substitute x3 -> certify

works in exact rational arithmetic up to root refinement. The published
elimination output (h, its x3-linear companion, p) is loaded from
``data/*.poly`` and cross-checked against an independent Sylvester
resultant of g1, g2; saturation away from x3 * x12 = 0 is replaced by
dropping non-positive roots and by the residual certificate.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, lru_cache
from math import sqrt
from pathlib import Path

from .model import GroupSpec, MetricParams
from .polyengine import (
    BiPoly,
    MultiPoly,
    RefinedRoot,
    UniPoly,
    descartes_signs,
    isolate_roots,
    poly_gcd,
    positive_root_bound,
    read_poly,
    refine_root,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    sturm_count,
)
from .ricci import ReductivityVerdict, classify_reductive, einstein_residual, ricci_closed, ricci_formulas

DATA_ENV = "SO_EINSTEIN_DATA_DIR"
DEFAULT_TOL = 1e-10
DEFAULT_REL_WIDTH = 1e-12
SYSTEM_VARS = ("x2", "x3", "x12")
ELIM_CHECK = 1e-6
X3_MATCH = 1e-8


class SolverError(Exception):
    pass


class OutOfRangeError(SolverError, ValueError):
    def __init__(self, msg: str = "out of supported range"):
        super().__init__(msg)


class FactorizationMismatch(SolverError):
    pass


class DerivationMismatch(SolverError):
    pass


class TranscriptionMismatch(SolverError):
    pass


class DegenerateElimination(SolverError):
    pass


class NoConsistentX3(SolverError):
    pass


class TheoremCheckFailed(SolverError):
    pass


class CountCheckFailed(SolverError):
    def __init__(self, msg: str, report: "EnumerationReport"):
        super().__init__(msg)
        self.report = report


# transcribed data -------------------------------------------------------

def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else Path(__file__).with_name("data")


@lru_cache(maxsize=None)
def _load(directory: str, name: str) -> MultiPoly:
    return read_poly(Path(directory) / f"{name}.poly")


def transcribed(name: str) -> MultiPoly:
    """Published polynomial ``name`` with symbolic k, l (see ``data/``)."""
    return _load(str(data_dir()), name)


def instantiate(name: str, k: int, l: int):
    """Published polynomial at integer (k, l); UniPoly when one variable remains."""
    p = transcribed(name).subs({"k": k, "l": l})
    if len(p.vars) == 1:
        return p.to_unipoly(p.vars[0])
    return p


def _check_range(k: int, l: int) -> None:
    if not (isinstance(k, int) and isinstance(l, int)) or k < 3 or l < 2:
        raise OutOfRangeError(f"out of supported range: need k >= 3, l >= 2 (got k={k}, l={l})")


# system -----------------------------------------------------------------

# f -> (Ricci components whose difference it is, monomial clearing the denominators)
RICCI_PAIRS = {
    "f1": ((0, 2), (1, 1, 2)),
    "f2": ((0, 3), (1, 0, 2)),
    "f3": ((2, 4), (0, 1, 0)),
}


def derive_system(k: int, l: int) -> dict[str, MultiPoly]:
    """Numerators of r1 - r3, r1 - r12, r3 - r13 under the ansatz, from the closed-form Ricci."""
    x2 = MultiPoly.var("x2", SYSTEM_VARS)
    x3 = MultiPoly.var("x3", SYSTEM_VARS)
    x12 = MultiPoly.var("x12", SYSTEM_VARS)
    one = MultiPoly.constant(1, SYSTEM_VARS)
    r = ricci_formulas(k, k, l, x2, x2, x3, x12, one, one)
    scale = 4 * (2 * k + l - 2)
    out = {}
    for name, ((a, b), mono) in RICCI_PAIRS.items():
        f = ((r[a] - r[b]) * scale).shift_exponents(mono)
        if min(f.monomial_content()) < 0:
            raise DerivationMismatch(f"{name}: denominator not cleared")
        out[name] = f
    return out


@dataclass(frozen=True)
class SystemKL:
    k: int
    l: int
    f1: MultiPoly
    f2: MultiPoly
    f3: MultiPoly
    # f_i(published) == derivation_constants[i] * f_i(derived from Ricci)
    derivation_constants: tuple[Fraction, Fraction, Fraction]

    @property
    def spec(self) -> GroupSpec:
        return GroupSpec(self.k, self.k, self.l)


def build_system(k: int, l: int) -> SystemKL:
    _check_range(k, l)
    derived = derive_system(k, l)
    fs, consts = [], []
    for name in ("f1", "f2", "f3"):
        f = instantiate(name, k, l).reorder(SYSTEM_VARS)
        c = f.proportionality(derived[name])
        if c is None or c == 0:
            raise DerivationMismatch(f"{name} is not proportional to its Ricci difference at k={k}, l={l}")
        fs.append(f)
        consts.append(c)
    return SystemKL(k, l, *fs, derivation_constants=tuple(consts))


def _drop_var(p: MultiPoly, var: str) -> MultiPoly:
    if p.degree(var) > 0:
        raise ValueError(f"{var} still occurs")
    return p.subs({var: 0})


@dataclass(frozen=True)
class X2ClosedForm:
    """x2 = numerator(x12) / denominator(x12) on the non-naturally-reductive branch."""

    numerator: UniPoly
    denominator: UniPoly

    def __call__(self, x12):
        return self.numerator(x12) / self.denominator(x12)


def factor_f2(sys: SystemKL) -> tuple[BiPoly, BiPoly]:
    """``f2 = (x2 - x12) * quad``; returns ``(x2 - x12, quad)`` as BiPolys in (x2, x12)."""
    linear = MultiPoly.var("x2", SYSTEM_VARS) - MultiPoly.var("x12", SYSTEM_VARS)
    quad, rem = divmod(sys.f2, linear)
    if not rem.is_zero():
        raise FactorizationMismatch(f"x2 - x12 does not divide f2 at k={sys.k}, l={sys.l}")
    published = instantiate("f2_quad", sys.k, sys.l).reorder(SYSTEM_VARS)
    if quad != published:
        raise FactorizationMismatch(f"cofactor of x2 - x12 differs from the published factor at k={sys.k}, l={sys.l}")
    return _drop_var(linear, "x3"), _drop_var(quad, "x3")


def x2_closed_form(quad: BiPoly) -> X2ClosedForm:
    """Solve ``quad`` (linear in x2) for x2."""
    if quad.degree("x2") != 1:
        raise FactorizationMismatch("cofactor is not linear in x2")
    parts = quad.coefficients_in("x2")
    c1 = parts[1].to_unipoly("x12")
    c0 = parts.get(0, quad._coerce(0)).to_unipoly("x12")
    return X2ClosedForm(-c0, c1)


@dataclass
class EliminationResult:
    k: int
    l: int
    x2_form: X2ClosedForm
    g1: BiPoly
    g2: BiPoly
    # published g_i == g_scale[i] * monomial * (substituted f, monomial content removed)
    g_scale: tuple[Fraction, Fraction]
    resultant_R: UniPoly | None = None
    published_h: UniPoly | None = None
    published_hlin: BiPoly | None = None
    published_p: UniPoly | None = None
    positive_roots_h: int | None = None
    positive_roots_shared: int | None = None

    @cached_property
    def p_positive_roots(self) -> list[RefinedRoot]:
        p = squarefree_part(self.published_p)
        ivs = isolate_roots(p, 0, positive_root_bound(p))
        return [refine_root(p, iv, DEFAULT_REL_WIDTH) for iv in ivs]


def _substitute_rational(f: MultiPoly, var: str, num: UniPoly, den: UniPoly) -> MultiPoly:
    """``den**d * f(var = num/den)`` with d the degree of ``f`` in ``var``."""
    d = f.degree(var)
    numm = MultiPoly.from_unipoly(num, f.vars)
    denm = MultiPoly.from_unipoly(den, f.vars)
    out = f._coerce(0)
    for j, c in f.coefficients_in(var).items():
        out = out + c * numm**j * denm ** (d - j)
    return out


def substitute_x2(sys: SystemKL) -> EliminationResult:
    """Eliminate x2 from f1 and f3 through the closed form; compare with the published g1, g2."""
    _, quad = factor_f2(sys)
    form = x2_closed_form(quad)
    gs, scales = [], []
    for fname, gname in (("f1", "g1"), ("f3", "g2")):
        f = getattr(sys, fname)
        sub = _substitute_rational(f, "x2", form.numerator, form.denominator)
        sub = _drop_var(sub, "x2").reorder(("x3", "x12")).clear_monomial_denominator()
        published = instantiate(gname, sys.k, sys.l).reorder(("x3", "x12"))
        # monomial factors only add roots on x3 = 0 or x12 = 0, which are discarded anyway
        c = published.clear_monomial_denominator().proportionality(sub)
        if c is None or c == 0:
            raise DerivationMismatch(f"{gname} does not match the substituted {fname} at k={sys.k}, l={sys.l}")
        g = (sub * c).shift_exponents(published.monomial_content())
        gs.append(BiPoly(dict(g.terms), ("x3", "x12")))
        scales.append(c)
    return EliminationResult(sys.k, sys.l, form, gs[0], gs[1], tuple(scales))


def eliminate(er: EliminationResult) -> EliminationResult:
    """Attach Res_x3(g1, g2) and the published h, hlin, p; check root-level agreement on (0, oo)."""
    # dividing out monomials is the part of the x3 * x12 saturation a resultant can see
    R = resultant(er.g1.clear_monomial_denominator(), er.g2.clear_monomial_denominator(), "x3")
    if R.is_zero():
        raise DegenerateElimination("g1, g2 share a factor")
    h = instantiate("h", er.k, er.l)
    hlin = instantiate("hlin", er.k, er.l).reorder(("x12", "x3"))
    p = instantiate("p", er.k, er.l)
    if h.degree != 8 or hlin.degree("x3") != 1 or p.degree != 8:
        raise TranscriptionMismatch(f"unexpected degrees at k={er.k}, l={er.l}")

    h_sf = squarefree_part(h)
    bound = positive_root_bound(h_sf)
    n_h = sturm_count(h_sf, 0, bound)
    shared = poly_gcd(h_sf, R)
    n_shared = 0 if shared.is_constant() else sturm_count(shared, 0, bound)
    if n_h != n_shared:
        raise TranscriptionMismatch(
            f"{n_h - n_shared} positive root(s) of h are not roots of Res_x3(g1, g2) at k={er.k}, l={er.l}")
    return replace(er, resultant_R=R, published_h=h, published_hlin=BiPoly(dict(hlin.terms), ("x12", "x3")),
                   published_p=p, positive_roots_h=n_h, positive_roots_shared=n_shared)


# back substitution ------------------------------------------------------

def hlin_linear_coefficient(k: int, l: int) -> int:
    return 2 * (l - 1) * (k - 1) * (k - 2) * (5 * k - 2) * (2 * k + l - 1) * (3 * k * k + (2 * k + l) * (l - 1))


def _x3_from_hlin(hlin: BiPoly, x12: Fraction) -> Fraction:
    parts = hlin.coefficients_in("x3")
    a = parts.get(0)
    b = parts[1]
    av = a(x12, Fraction(0)) if a is not None else Fraction(0)
    return -av / b(x12, Fraction(0))


def _x3_from_g(er: EliminationResult, x12: float) -> float:
    """Root of g2(x3, x12) (quadratic in x3) that also annihilates g1."""
    parts = er.g2.coefficients_in("x3")
    c = [parts[d](0.0, x12) if d in parts else 0.0 for d in (0, 1, 2)]
    if c[2] == 0.0:
        cands = [-c[0] / c[1]] if c[1] else []
    else:
        disc = c[1] ** 2 - 4 * c[2] * c[0]
        if disc < 0:
            cands = []
        else:
            s = sqrt(disc)
            q = -0.5 * (c[1] + (s if c[1] >= 0 else -s))
            cands = [q / c[2]] + ([c[0] / q] if q else [])
    scale = max(abs(float(v)) for v in er.g1.terms.values())
    best = None
    for t in cands:
        res = abs(er.g1(t, x12)) / scale
        if best is None or res < best[0]:
            best = (res, t)
    if best is None or best[0] > 1e-8:
        raise NoConsistentX3("both quadratic roots fail g1")
    return best[1]


def back_substitute(er: EliminationResult, x12_root: RefinedRoot, use_hlin: bool = True) -> RefinedRoot | None:
    """x3 for a certified x12, certified against a positive root of p; None if x3 <= 0."""
    if use_hlin and er.published_hlin is not None:
        t = _x3_from_hlin(er.published_hlin, x12_root.best_rational)
    else:
        t = Fraction(_x3_from_g(er, x12_root.value))
    if t <= 0:
        return None
    if er.published_p is None:
        return RefinedRoot(float(t), t, t, 0.0)
    tf = float(t)
    for root in er.p_positive_roots:
        lo, hi = float(root.certified_lo), float(root.certified_hi)
        gap = max(lo - tf, tf - hi, 0.0)
        if gap <= X3_MATCH * tf:
            return root
    raise NoConsistentX3(f"x3 = {tf!r} is not near any positive root of p at k={er.k}, l={er.l}")


# solving ----------------------------------------------------------------

@dataclass(frozen=True)
class EinsteinSolution:
    k: int
    l: int
    metric: MetricParams  # exact rationals, x13 = x23 = 1, x1 = x2
    x12_root: RefinedRoot
    x3_root: RefinedRoot
    branch: str
    lam: float
    residual: float
    reductivity: ReductivityVerdict
    separation: float  # |x2 - x12| / max(x2, x12)
    resultant_check: float  # |R(x12)| / max |coeff R|
    h_check: float  # |h(x12)| / max |coeff h|
    multiplicity: int = 1

    @property
    def x(self) -> MetricParams:
        return self.metric.to_float()

    def rescaled_to_unit_lambda(self) -> MetricParams:
        """Same metric scaled so the Einstein constant is 1."""
        return self.x.scaled(self.lam)

    @property
    def naturally_reductive(self) -> bool:
        return self.reductivity.naturally_reductive


@dataclass
class SolveReport:
    k: int
    l: int
    solutions: list[EinsteinSolution]
    filtered: list[tuple[float, str]] = field(default_factory=list)
    elimination: EliminationResult | None = None

    def branches(self) -> set[str]:
        return {s.branch for s in self.solutions}


def _rel_eval(p: UniPoly, x: Fraction) -> float:
    scale = max(abs(c) for c in p.coeffs)
    return float(abs(p(x)) / scale)


def _branch(h_sf: UniPoly, root: RefinedRoot) -> str:
    one = Fraction(1)
    if root.certified_hi < one:
        return "below_one"
    if root.certified_lo > one:
        return "above_one"
    if h_sf(one) == 0:
        # the root is 1 itself; side decided at a shifted point
        return "above_one" if h_sf.sign_at(one + Fraction(1, 2**40)) == h_sf.sign_at(root.certified_hi) else "below_one"
    return "below_one" if h_sf.sign_at(root.certified_lo) != h_sf.sign_at(one) else "above_one"


def solve_report(k: int, l: int, tol: float = DEFAULT_TOL, rel_width: float = DEFAULT_REL_WIDTH) -> SolveReport:
    """Run the full pipeline; returns certified solutions and what was filtered out and why."""
    sys = build_system(k, l)
    er = eliminate(substitute_x2(sys))
    spec = sys.spec
    h = er.published_h
    h_sf = squarefree_part(h)
    report = SolveReport(k, l, [], elimination=er)

    candidates = []
    for factor, mult in squarefree_decomposition(h):
        for iv in isolate_roots(factor, 0, positive_root_bound(factor)):
            candidates.append((refine_root(factor, iv, rel_width), mult))
    candidates.sort(key=lambda c: c[0].value)

    for x12_root, mult in candidates:
        x3_root = back_substitute(er, x12_root)
        if x3_root is None:
            report.filtered.append((x12_root.value, "x3 <= 0"))
            continue
        s = x12_root.best_rational
        x2 = er.x2_form(s)
        x3 = x3_root.best_rational
        metric = MetricParams(x2, x2, x3, s, Fraction(1), Fraction(1))
        if not metric.is_positive():
            report.filtered.append((x12_root.value, "non-positive parameter"))
            continue
        fit = einstein_residual(ricci_closed(spec, metric), spec)
        if fit.residual > tol:
            report.filtered.append((x12_root.value, f"residual {fit.residual:.3e} > {tol:g}"))
            continue
        verdict = classify_reductive(metric)
        if verdict.naturally_reductive:
            report.filtered.append((x12_root.value, f"naturally reductive ({verdict.case_matched})"))
            continue
        sep = float(abs(x2 - s) / max(x2, s))
        report.solutions.append(EinsteinSolution(
            k, l, metric, x12_root, x3_root, _branch(h_sf, x12_root), fit.lam, fit.residual, verdict,
            sep, _rel_eval(er.resultant_R, s), _rel_eval(h, s), mult,
        ))
    return report


def theorem_applies(k: int, l: int) -> bool:
    return l > k >= 3


def solve(k: int, l: int, tol: float = DEFAULT_TOL, rel_width: float = DEFAULT_REL_WIDTH) -> list[EinsteinSolution]:
    """Certified non-naturally-reductive Einstein metrics for (k, l).

    When l > k >= 3 at least two are guaranteed, one with x12 in (0, 1) and one
    with x12 > 1; falling short raises :class:`TheoremCheckFailed`.
    """
    report = solve_report(k, l, tol, rel_width)
    if theorem_applies(k, l):
        check_theorem(report)
    return report.solutions


def check_theorem(report: SolveReport) -> None:
    branches = report.branches()
    if len(report.solutions) < 2 or not {"below_one", "above_one"} <= branches:
        raise TheoremCheckFailed(
            f"theorem check failed at k={report.k}, l={report.l}: {len(report.solutions)} certified, "
            f"branches {sorted(branches)}, filtered {report.filtered}")


# sign facts -------------------------------------------------------------

def expected_h0(k: int, l: int) -> int:
    return 4 * (5 * k - 2) ** 2 * (k - 1) ** 2 * (l - 1 + 2 * k)


def expected_h1(k: int, l: int) -> int:
    return (k - 1) * (l - 1 + 2 * k) * (k - l) * (2 * k + l) ** 2


def expected_h_leading(k: int, l: int) -> int:
    return l * l * (k + l) * (2 * k * k + 2 * k * l + l * l - l)


@dataclass(frozen=True)
class SignFacts:
    k: int
    l: int
    h0: Fraction
    h1: Fraction
    leading: Fraction
    h0_positive: bool
    h1_negative: bool
    leading_positive: bool
    boundary: bool  # k == l, where h(1) vanishes

    @property
    def ok(self) -> bool:
        if theorem_applies(self.k, self.l):
            return self.h0_positive and self.h1_negative and self.leading_positive
        return True


def sign_facts(k: int, l: int) -> SignFacts:
    """Exact values of h at 0, at 1, and its leading coefficient, checked against closed forms."""
    _check_range(k, l)
    h = instantiate("h", k, l)
    h0, h1, lead = h(Fraction(0)), h(Fraction(1)), h.leading
    for name, got, want in (("h(0)", h0, expected_h0(k, l)), ("h(1)", h1, expected_h1(k, l)),
                            ("leading coefficient", lead, expected_h_leading(k, l))):
        if got != want:
            raise TranscriptionMismatch(f"transcription or theory mismatch: {name} = {got}, expected {want} "
                                        f"at k={k}, l={l}")
    facts = SignFacts(k, l, h0, h1, lead, h0 > 0, h1 < 0, lead > 0, k == l)
    if not facts.ok:
        raise TranscriptionMismatch(f"transcription or theory mismatch: sign facts fail at k={k}, l={l}")
    return facts


def descartes_check_p(k: int, l: int) -> bool:
    """Whether p has sign + at every even degree and - at every odd degree."""
    _check_range(k, l)
    p = instantiate("p", k, l)
    signs = descartes_signs(p)
    alternating = all(s == (1 if i % 2 == 0 else -1) for i, s in enumerate(signs))
    if alternating:
        p_sf = squarefree_part(p)
        negative = isolate_roots(p_sf, -positive_root_bound(p_sf), 0)
        if negative:
            raise TranscriptionMismatch(f"alternating p with negative roots at k={k}, l={l}")
    return alternating


# enumeration ------------------------------------------------------------

def theorem_bound(n: int) -> int:
    return 2 * ((n - 1) // 3 - 2)


@dataclass(frozen=True)
class EnumRow:
    k: int
    l: int
    count: int
    below_one: int
    above_one: int
    error: str | None = None


@dataclass(frozen=True)
class EnumerationReport:
    n: int
    bound: int
    rows: tuple[EnumRow, ...]

    @property
    def total(self) -> int:
        return sum(r.count for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.total >= self.bound


def _enum_row(args) -> EnumRow:
    k, l, tol = args
    try:
        report = solve_report(k, l, tol)
        check_theorem(report)
        error = None
    except TheoremCheckFailed as exc:
        error = str(exc)
    br = [s.branch for s in report.solutions]
    return EnumRow(k, l, len(br), br.count("below_one"), br.count("above_one"), error)


def enumerate_metrics(n: int, tol: float = DEFAULT_TOL, workers: int = 1) -> EnumerationReport:
    """Count certified metrics over SO(k) x SO(k) x SO(n - 2k), 3 <= k <= (n - 1) // 3."""
    if not isinstance(n, int) or n < 10:
        raise OutOfRangeError(f"out of supported range: n >= 10 required (got {n})")
    jobs = [(k, n - 2 * k, tol) for k in range(3, (n - 1) // 3 + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_enum_row, jobs))
    else:
        rows = [_enum_row(j) for j in jobs]
    report = EnumerationReport(n, theorem_bound(n), tuple(sorted(rows, key=lambda r: (r.k, r.l))))
    if not report.ok:
        detail = ", ".join(f"k={r.k}: {r.count}" for r in report.rows)
        raise CountCheckFailed(f"count check failed for n={n}: {report.total} < {report.bound} ({detail})", report)
    return report
