"""Sylvester resultants with fraction-free (Bareiss) determinants."""

from __future__ import annotations

from .multipoly import MultiPoly
from .unipoly import UniPoly


class NothingToEliminate(ValueError):
    def __init__(self, msg: str = "nothing to eliminate"):
        super().__init__(msg)


def _coeff_polys(f: MultiPoly, eliminate: str, keep: str) -> list[UniPoly]:
    """Coefficients of ``f`` in ``eliminate`` as UniPolys in ``keep``, highest degree first."""
    parts = f.coefficients_in(eliminate)
    deg = f.degree(eliminate)
    out = []
    for d in range(deg, -1, -1):
        c = parts.get(d)
        out.append(c.to_unipoly(keep) if c is not None else UniPoly((), keep))
    return out


def sylvester_matrix(f: MultiPoly, g: MultiPoly, eliminate: str) -> list[list[UniPoly]]:
    if set(f.vars) != set(g.vars) or len(f.vars) != 2:
        raise ValueError("both operands must be bivariate in the same variables")
    if eliminate not in f.vars:
        raise ValueError(f"{eliminate!r} is not a variable of the operands")
    keep = next(v for v in f.vars if v != eliminate)
    g = g.reorder(f.vars)
    m, n = f.degree(eliminate), g.degree(eliminate)
    if m < 1 or n < 1:
        raise NothingToEliminate()
    fc, gc = _coeff_polys(f, eliminate, keep), _coeff_polys(g, eliminate, keep)
    zero = UniPoly((), keep)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - i - n - 1))
    return rows


def bareiss_det(matrix: list[list]) -> object:
    """Determinant over an integral domain using only exact divisions.

    Entries must support ``+ - *`` and exact ``/`` (UniPoly or Fraction).
    """
    a = [list(row) for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = None
    for k in range(size - 1):
        if a[k][k] == 0:
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        pivot = a[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                v = a[i][j] * pivot - a[i][k] * a[k][j]
                a[i][j] = v if prev is None else v / prev
        prev = pivot
    det = a[-1][-1]
    return -det if sign < 0 else det


def resultant(f: MultiPoly, g: MultiPoly, eliminate: str) -> UniPoly:
    """``Res_eliminate(f, g)``: a UniPoly in the surviving variable."""
    det = bareiss_det(sylvester_matrix(f, g, eliminate))
    keep = next(v for v in f.vars if v != eliminate)
    if not isinstance(det, UniPoly):
        return UniPoly([det], keep)
    return UniPoly(det.coeffs, keep)
