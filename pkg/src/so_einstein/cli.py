"""Command-line front end.

Exit codes: 0 success, 1 argument/range error, 2 verification or count
failure, 3 internal degeneracy (e.g. an identically zero resultant).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import einstein_solver as es
from .liestruct import ricci_general, triple_products
from .model import FIELD_NAMES, GroupSpec, InvalidSpecError, MetricParams
from .ricci import ricci_closed

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_INTERNAL = 0, 1, 2, 3
ORACLE_THRESHOLD = 1e-9
SOLVE_COLUMNS = ("k", "l", *FIELD_NAMES, "lambda", "residual", "branch", "naturally_reductive",
                 "x12_lo", "x12_hi", "x3_lo", "x3_hi", "multiplicity")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# output -------------------------------------------------------------------

def _rat(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _json_value(v) -> str:
    """JSON text with every float at 17 significant digits."""
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            return json.dumps(str(v))
        s = format(v, ".17g")
        return s if any(ch in s for ch in ".en") else s + ".0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    raise TypeError(f"cannot serialise {type(v).__name__}")


def render(command: str, params: dict, results: list[dict], checks: dict, fmt: str) -> str:
    if fmt == "json":
        doc = {"command": command, "params": params, "results": results, "checks": checks}
        return _json_value(doc) + "\n"
    cols = list(results[0]) if results else []
    cell = lambda v: format(v, ".17g") if isinstance(v, float) else str(v)  # noqa: E731
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in results:
            w.writerow([cell(row[c]) for c in cols])
        return buf.getvalue()
    table = [cols] + [[cell(row[c]) for c in cols] for row in results]
    widths = [max(len(r[i]) for r in table) for i in range(len(cols))]
    lines = ["  ".join(s.rjust(w) for s, w in zip(r, widths)) for r in table]
    lines += [f"# {k}: {v}" for k, v in checks.items()]
    return "\n".join(lines) + "\n"


def _emit(args, command: str, params: dict, results: list[dict], checks: dict) -> None:
    text = render(command, params, results, checks, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# commands -------------------------------------------------------------------

def solution_record(s: es.EinsteinSolution, normalize: str = "x13") -> dict:
    x = s.rescaled_to_unit_lambda() if normalize == "lambda" else s.x
    rec = {"k": s.k, "l": s.l}
    rec.update(zip(FIELD_NAMES, (float(v) for v in x)))
    rec.update({
        "lambda": 1.0 if normalize == "lambda" else s.lam,
        "residual": s.residual,
        "branch": s.branch,
        "naturally_reductive": s.naturally_reductive,
        "x12_lo": _rat(s.x12_root.certified_lo),
        "x12_hi": _rat(s.x12_root.certified_hi),
        "x3_lo": _rat(s.x3_root.certified_lo),
        "x3_hi": _rat(s.x3_root.certified_hi),
        "multiplicity": s.multiplicity,
    })
    return {c: rec[c] for c in SOLVE_COLUMNS}


def cmd_solve(args) -> int:
    k, l = args.k, args.l
    if k < 3 or l < 2:
        raise UsageError(f"solve needs k >= 3 and l >= 2 (got k={k}, l={l})")
    report = es.solve_report(k, l, args.tol)
    applies = es.theorem_applies(k, l)
    ok = True
    if applies:
        try:
            es.check_theorem(report)
        except es.TheoremCheckFailed:
            ok = False
    results = [solution_record(s, args.normalize) for s in report.solutions]
    checks = {
        "count": len(results),
        "branches": sorted(report.branches()),
        "theorem_applies": applies,
        "theorem_ok": ok if applies else None,
        "filtered": [f"x12={v!r}: {why}" for v, why in report.filtered],
    }
    _emit(args, "solve", {"k": k, "l": l, "tol": args.tol, "normalize": args.normalize}, results, checks)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_enumerate(args) -> int:
    if args.n < 10:
        raise UsageError(f"enumerate needs n >= 10 (got {args.n})")
    try:
        report = es.enumerate_metrics(args.n, args.tol, workers=args.workers)
    except es.CountCheckFailed as exc:
        report = exc.report
    results = [{"k": r.k, "l": r.l, "count": r.count, "below_one": r.below_one,
                "above_one": r.above_one, "error": r.error or ""} for r in report.rows]
    checks = {"total": report.total, "bound": report.bound, "ok": report.ok}
    _emit(args, "enumerate", {"n": args.n, "tol": args.tol}, results, checks)
    return EXIT_OK if report.ok else EXIT_CHECK


def random_metrics(trials: int, seed: int) -> list[MetricParams]:
    """Trial 0 is the bi-invariant metric; the rest are log-uniform on [1/4, 4] (numpy PCG64)."""
    rng = np.random.default_rng(seed)
    out = [MetricParams.ones(exact=False)]
    for _ in range(trials - 1):
        out.append(MetricParams(*np.exp(rng.uniform(math.log(0.25), math.log(4.0), 6)).tolist()))
    return out


def cmd_verify_oracle(args) -> int:
    try:
        spec = GroupSpec(args.k1, args.k2, args.k3)
    except InvalidSpecError as exc:
        raise UsageError(str(exc)) from exc
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    tp = triple_products(spec)
    if args.export_triples:
        tp.write_csv(args.export_triples)
    results = []
    worst = 0.0
    for i, x in enumerate(random_metrics(args.trials, args.seed)):
        a = ricci_general(spec, tp, x)
        b = ricci_closed(spec, x)
        dev = max(abs(float(u) - float(v)) for u, v in zip(a, b))
        worst = max(worst, dev)
        results.append({"trial": i, "max_deviation": dev})
    exact_ones = all(v == Fraction(1, 4) for v in ricci_closed(spec, MetricParams.ones()))
    ok = worst <= ORACLE_THRESHOLD and exact_ones
    checks = {"max_deviation": worst, "threshold": ORACLE_THRESHOLD, "bi_invariant_exact": exact_ones, "ok": ok}
    params = {"k1": spec.k1, "k2": spec.k2, "k3": spec.k3, "trials": args.trials, "seed": args.seed}
    _emit(args, "verify-oracle", params, results, checks)
    return EXIT_OK if ok else EXIT_CHECK


def cmd_sign_facts(args) -> int:
    if args.k_max < 3 or args.l_max <= 3:
        raise UsageError("sign-facts needs --k-max >= 3 and --l-max > 3")
    results = []
    all_ok = True
    for k in range(3, args.k_max + 1):
        for l in range(k + 1, args.l_max + 1):
            try:
                f = es.sign_facts(k, l)
                row_ok, h0, h1, lead = f.ok, f.h0, f.h1, f.leading
                note = ""
            except es.TranscriptionMismatch as exc:
                row_ok, note = False, str(exc)
                h = es.instantiate("h", k, l)
                h0, h1, lead = h(Fraction(0)), h(Fraction(1)), h.leading
            desc = es.descartes_check_p(k, l)
            row_ok = row_ok and desc
            all_ok = all_ok and row_ok
            results.append({"k": k, "l": l, "h0": int(h0), "h1": int(h1), "leading": int(lead),
                            "descartes": desc, "ok": row_ok, "note": note})
    checks = {"rows": len(results), "ok": all_ok}
    _emit(args, "sign-facts", {"k_max": args.k_max, "l_max": args.l_max}, results, checks)
    return EXIT_OK if all_ok else EXIT_CHECK


# entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="so-einstein", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, tol=True):
        if tol:
            sp.add_argument("--tol", type=float, default=es.DEFAULT_TOL, help="relative Einstein residual tolerance")
        sp.add_argument("--format", choices=("json", "csv", "table"), default="json")
        sp.add_argument("--output", "-o", help="write to this path instead of stdout")

    s = sub.add_parser("solve", help="certified Einstein metrics for SO(k) x SO(k) x SO(l) in SO(2k+l)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--normalize", choices=("x13", "lambda"), default="x13",
                   help="report with x13 = x23 = 1 (default) or rescaled to Einstein constant 1")
    common(s)
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("enumerate", help="count metrics on SO(n) against the lower bound")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--workers", type=int, default=1)
    common(e)
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify-oracle", help="closed-form Ricci vs structure constants on random metrics")
    v.add_argument("--k1", type=int, required=True)
    v.add_argument("--k2", type=int, required=True)
    v.add_argument("--k3", type=int, required=True)
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--export-triples", help="also write the (ijk) table as CSV rows i,j,k,value")
    common(v, tol=False)
    v.set_defaults(func=cmd_verify_oracle)

    f = sub.add_parser("sign-facts", help="exact sign checks of h and p over 3 <= k < l")
    f.add_argument("--k-max", type=int, required=True)
    f.add_argument("--l-max", type=int, required=True)
    common(f, tol=False)
    f.set_defaults(func=cmd_sign_facts)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0:
        parser.print_usage(sys.stderr)
        print("so-einstein: error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, es.OutOfRangeError) as exc:
        parser.print_usage(sys.stderr)
        print(f"so-einstein: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (es.DegenerateElimination, es.NoConsistentX3, es.DerivationMismatch,
            es.FactorizationMismatch, es.TranscriptionMismatch) as exc:
        print(f"so-einstein: internal: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
