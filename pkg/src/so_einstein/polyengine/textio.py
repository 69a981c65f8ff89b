"""Plain-text polynomial format.

One term per line, exponents then coefficient::

    # provenance: where the numbers came from
    # variables: x12 k l
    8 1 2 1/1

A UniPoly line is ``<deg> <num>/<den>``, a BiPoly line ``<a> <b> <num>/<den>``.
Other ``#`` lines are comments. Without a ``# variables:`` header the names
default to ``x`` (one column) or ``x y`` (two columns).
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .multipoly import BiPoly, MultiPoly
from .unipoly import UniPoly


class PolyFormatError(ValueError):
    pass


def format_poly(p: UniPoly | MultiPoly, provenance: str | None = None) -> str:
    lines = []
    if provenance:
        lines.append(f"# provenance: {provenance}")
    if isinstance(p, UniPoly):
        lines.append(f"# variables: {p.var}")
        for d, c in enumerate(p.coeffs):
            if c:
                lines.append(f"{d} {c.numerator}/{c.denominator}")
    else:
        lines.append("# variables: " + " ".join(p.vars))
        for e in sorted(p.terms):
            c = p.terms[e]
            lines.append(" ".join(map(str, e)) + f" {c.numerator}/{c.denominator}")
    return "\n".join(lines) + "\n"


def parse_poly(text: str) -> UniPoly | MultiPoly:
    names: list[str] | None = None
    rows: list[tuple[tuple[int, ...], Fraction]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("variables:"):
                names = body[len("variables:"):].split()
            continue
        fields = line.split()
        try:
            exps = tuple(int(f) for f in fields[:-1])
            coeff = Fraction(fields[-1])
        except (ValueError, ZeroDivisionError) as exc:
            raise PolyFormatError(f"line {lineno}: cannot parse {raw!r}") from exc
        if not exps or min(exps) < 0:
            raise PolyFormatError(f"line {lineno}: bad exponents in {raw!r}")
        if rows and len(exps) != len(rows[0][0]):
            raise PolyFormatError(f"line {lineno}: inconsistent column count")
        rows.append((exps, coeff))

    width = len(rows[0][0]) if rows else (len(names) if names else 1)
    if names is None:
        names = ["x"] if width == 1 else (["x", "y"] if width == 2 else [f"x{i}" for i in range(width)])
    if len(names) != width:
        raise PolyFormatError(f"header names {names} but terms have {width} exponents")

    if width == 1:
        deg = max((e[0] for e, _ in rows), default=-1)
        coeffs = [Fraction(0)] * (deg + 1)
        for (d,), c in rows:
            coeffs[d] += c
        return UniPoly(coeffs, names[0])
    cls = BiPoly if width == 2 else MultiPoly
    return cls(rows, names)


def read_poly(path: str | Path) -> UniPoly | MultiPoly:
    return parse_poly(Path(path).read_text())


def write_poly(path: str | Path, p: UniPoly | MultiPoly, provenance: str | None = None) -> None:
    Path(path).write_text(format_poly(p, provenance))
