"""Hot loop for the triple-product table of the elementary so(n) basis.

Two implementations with one contract: a numba ``@njit`` kernel and a
vectorised numpy fallback. Set ``SO_EINSTEIN_DISABLE_NUMBA=1`` (or run
without numba installed) to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("SO_EINSTEIN_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

HAVE_NUMBA = njit is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


def triple_table_numpy(rows, cols, labels, pair_label, weight):
    """Accumulate ``weight`` into T[label(a), label(b), label([a, b])] for every bracketing pair.

    For skew pairs sharing exactly one index the bracket is a single basis
    element (the two unshared indices) with coefficient of modulus
    ``sqrt(weight)``; every other pair commutes.
    """
    rows = np.asarray(rows)
    cols = np.asarray(cols)
    labels = np.asarray(labels)
    a, b = rows[:, None], cols[:, None]
    c, d = rows[None, :], cols[None, :]
    ac, ad, bc, bd = a == c, a == d, b == c, b == d
    shared = ac.astype(np.int8) + ad + bc + bd
    hit = shared == 1
    # unshared index from each side
    p = np.where(ac | ad, b, a)
    q = np.where(ac | bc, d, c)
    ia, ib = np.nonzero(hit)
    lg = pair_label[p[ia, ib], q[ia, ib]]
    table = np.zeros((6, 6, 6))
    np.add.at(table, (labels[ia], labels[ib], lg), weight)
    return table


def _triple_table_loops(rows, cols, labels, pair_label, weight):
    m = rows.shape[0]
    table = np.zeros((6, 6, 6))
    for i in range(m):
        a = rows[i]
        b = cols[i]
        for j in range(m):
            c = rows[j]
            d = cols[j]
            shared = 0
            if a == c:
                shared += 1
            if a == d:
                shared += 1
            if b == c:
                shared += 1
            if b == d:
                shared += 1
            if shared != 1:
                continue
            p = b if (a == c or a == d) else a
            q = d if (a == c or b == c) else c
            table[labels[i], labels[j], pair_label[p, q]] += weight
    return table


if HAVE_NUMBA:
    triple_table_numba = njit(cache=True)(_triple_table_loops)
else:  # pragma: no cover
    triple_table_numba = None


def triple_table(rows, cols, labels, pair_label, weight, use_numba: bool | None = None):
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        if triple_table_numba is None:
            raise RuntimeError("numba is not available")
        return triple_table_numba(np.ascontiguousarray(rows, dtype=np.int64),
                                  np.ascontiguousarray(cols, dtype=np.int64),
                                  np.ascontiguousarray(labels, dtype=np.int64),
                                  np.ascontiguousarray(pair_label, dtype=np.int64),
                                  float(weight))
    return triple_table_numpy(rows, cols, labels, pair_label, weight)
