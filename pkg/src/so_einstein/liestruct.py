"""so(n) with its (-B)-orthonormal basis, the six-module split, and the
structure-constant route to the Ricci components.

Killing form normalisation: B(X, Y) = (n - 2) tr(XY), so the unit basis
elements are (E_ab - E_ba) / sqrt(2 (n - 2)).
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from math import sqrt
from pathlib import Path

import numpy as np

from . import _kernels
from .model import LABELS, DegenerateMetricError, GroupSpec, MetricParams, RicciComponents

LABEL_INDEX = {lab: i for i, lab in enumerate(LABELS)}


@dataclass(frozen=True)
class BasisElement:
    row: int
    col: int
    module_label: int
    norm_factor: float

    def matrix(self, n: int) -> np.ndarray:
        m = np.zeros((n, n))
        m[self.row, self.col] = self.norm_factor
        m[self.col, self.row] = -self.norm_factor
        return m


def norm_factor(n: int) -> float:
    return 1.0 / sqrt(2.0 * (n - 2))


def killing_form(x: np.ndarray, y: np.ndarray) -> float:
    n = x.shape[0]
    return float((n - 2) * np.trace(x @ y))


def build_basis(spec: GroupSpec) -> list[BasisElement]:
    c = norm_factor(spec.n)
    return [BasisElement(a, b, spec.module_of(a, b), c)
            for a, b in itertools.combinations(range(spec.n), 2)]


def basis_arrays(spec: GroupSpec, basis: list[BasisElement] | None = None):
    """``(matrices, label_indices)`` with shapes ``(N, n, n)`` and ``(N,)``."""
    basis = basis if basis is not None else build_basis(spec)
    mats = np.stack([e.matrix(spec.n) for e in basis])
    labels = np.array([LABEL_INDEX[e.module_label] for e in basis])
    return mats, labels


def bracket(e1: BasisElement, e2: BasisElement, spec: GroupSpec, atol: float = 1e-15) -> dict[BasisElement, float]:
    """Expansion coefficients of [e1, e2] in the basis (zero coefficients omitted)."""
    n = spec.n
    x, y = e1.matrix(n), e2.matrix(n)
    comm = x @ y - y @ x
    c = norm_factor(n)
    out = {}
    for a, b in zip(*np.nonzero(np.triu(np.abs(comm) > atol, 1))):
        out[BasisElement(int(a), int(b), spec.module_of(int(a), int(b)), c)] = float(comm[a, b] / c)
    return out


def structure_constants(mats: np.ndarray) -> np.ndarray:
    """Dense ``C[a, b, g] = -B([e_a, e_b], e_g)`` for an arbitrary basis of so(n)."""
    n = mats.shape[1]
    prod = np.einsum("aij,bjk->abik", mats, mats)
    comm = prod - prod.transpose(1, 0, 2, 3)
    return -(n - 2) * np.tensordot(comm, mats, axes=([2, 3], [2, 1]))


@dataclass(frozen=True)
class TripleProducts:
    """(ijk) for all 56 unordered label triples, keyed by the sorted triple."""

    table: dict[tuple[int, int, int], float]

    def __getitem__(self, key) -> float:
        return self.table[tuple(sorted(key))]

    @classmethod
    def from_ordered(cls, arr: np.ndarray) -> "TripleProducts":
        table = {}
        for i, j, k in itertools.combinations_with_replacement(range(6), 3):
            table[(LABELS[i], LABELS[j], LABELS[k])] = float(arr[i, j, k])
        return cls(table)

    def ordered_array(self) -> np.ndarray:
        arr = np.empty((6, 6, 6))
        for i, j, k in itertools.product(range(6), repeat=3):
            arr[i, j, k] = self[(LABELS[i], LABELS[j], LABELS[k])]
        return arr

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "k", "value"])
        for key in sorted(self.table, key=lambda t: tuple(LABEL_INDEX[v] for v in t)):
            w.writerow([*key, repr(self.table[key])])
        return buf.getvalue()

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv())


def _pair_labels(spec: GroupSpec) -> np.ndarray:
    n = spec.n
    out = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            out[a, b] = LABEL_INDEX[spec.module_of(a, b)]
    return out


def triple_products(spec: GroupSpec, use_numba: bool | None = None) -> TripleProducts:
    """Triple products of the elementary basis via the sparse bracket kernel."""
    basis = build_basis(spec)
    rows = np.array([e.row for e in basis])
    cols = np.array([e.col for e in basis])
    labels = np.array([LABEL_INDEX[e.module_label] for e in basis])
    weight = norm_factor(spec.n) ** 2
    arr = _kernels.triple_table(rows, cols, labels, _pair_labels(spec), weight, use_numba=use_numba)
    return TripleProducts.from_ordered(arr)


def ordered_triple_array(mats: np.ndarray, labels: np.ndarray) -> np.ndarray:
    onehot = np.eye(6)[labels]
    c2 = structure_constants(mats) ** 2
    return np.einsum("abg,ai,bj,gk->ijk", c2, onehot, onehot, onehot, optimize=True)


def triple_products_from_basis(mats: np.ndarray, labels: np.ndarray) -> TripleProducts:
    """Triple products from any (-B)-orthonormal module-adapted basis (dense, small n only)."""
    return TripleProducts.from_ordered(ordered_triple_array(mats, labels))


def ricci_general(spec: GroupSpec, tp: TripleProducts, x: MetricParams) -> RicciComponents:
    """Ricci components from triple products, for any diagonal metric on the six modules."""
    xv = np.array([float(v) for v in x], dtype=float)
    if not np.all(xv > 0):
        raise DegenerateMetricError()
    t = tp.ordered_array()
    d = np.array(spec.dims, dtype=float)
    inv = 1.0 / xv
    # first sum: sum_{j,i} x_k / (x_j x_i) (kji)
    s1 = xv * np.einsum("kji,j,i->k", t, inv, inv)
    # second sum: sum_{j,i} x_j / (x_k x_i) (jki)
    s2 = inv * np.einsum("jki,j,i->k", t, xv, inv)
    r = 0.5 * inv + s1 / (4 * d) - s2 / (2 * d)
    return RicciComponents(*(float(v) for v in r))
