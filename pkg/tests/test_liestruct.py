import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from so_einstein.liestruct import (
    LABEL_INDEX,
    BasisElement,
    basis_arrays,
    bracket,
    build_basis,
    killing_form,
    norm_factor,
    ricci_general,
    triple_products,
    triple_products_from_basis,
)
from so_einstein.model import LABELS, DegenerateMetricError, GroupSpec, InvalidSpecError, MetricParams
from so_einstein.ricci import ricci_closed

log_metric = st.lists(st.floats(math.log(0.25), math.log(4.0)), min_size=6, max_size=6).map(
    lambda v: MetricParams(*np.exp(v).tolist()))


def module_sizes(spec):
    basis = build_basis(spec)
    return tuple(sum(e.module_label == lab for e in basis) for lab in LABELS)


def test_basis_sizes():
    assert len(build_basis(GroupSpec(2, 2, 3))) == 21
    assert module_sizes(GroupSpec(2, 2, 3)) == (1, 1, 3, 4, 6, 6)
    assert len(build_basis(GroupSpec(3, 3, 4))) == 45
    assert module_sizes(GroupSpec(3, 3, 4)) == (3, 3, 6, 9, 12, 12)


def test_dimension_bookkeeping():
    for blocks in itertools.product(range(2, 9), repeat=3):
        if sum(blocks) < 7:
            continue
        spec = GroupSpec(*blocks)
        assert sum(spec.dims) == spec.n * (spec.n - 1) // 2


@pytest.mark.parametrize("blocks", [(1, 3, 4), (2, 2, 2), (2.0, 3, 4)])
def test_invalid_specs(blocks):
    with pytest.raises(InvalidSpecError):
        GroupSpec(*blocks)


def test_basis_is_minus_killing_orthonormal():
    spec = GroupSpec(3, 3, 4)
    mats, _ = basis_arrays(spec)
    gram = -(spec.n - 2) * np.einsum("aij,bji->ab", mats, mats)
    np.testing.assert_allclose(gram, np.eye(len(mats)), atol=1e-14)
    assert all(abs(-killing_form(m, m) - 1) < 1e-14 for m in mats)


def test_bracket_self_is_empty():
    spec = GroupSpec(2, 2, 3)
    for e in build_basis(spec):
        assert bracket(e, e, spec) == {}


def test_so3_relation():
    spec = GroupSpec(2, 2, 3)
    c = norm_factor(spec.n)
    e01 = BasisElement(0, 1, spec.module_of(0, 1), c)
    e12 = BasisElement(1, 2, spec.module_of(1, 2), c)
    out = bracket(e01, e12, spec)
    assert list(out) == [BasisElement(0, 2, spec.module_of(0, 2), c)]
    assert out[BasisElement(0, 2, 12, c)] == pytest.approx(c, abs=1e-15)
    back = bracket(e12, e01, spec)
    assert {k: -v for k, v in back.items()} == pytest.approx(out)


def _br(u: dict, v: dict, spec) -> dict:
    out = {}
    for a, ca in u.items():
        for b, cb in v.items():
            for g, cg in bracket(a, b, spec).items():
                out[g] = out.get(g, 0.0) + ca * cb * cg
    return out


def test_jacobi_on_random_triples():
    spec = GroupSpec(2, 3, 3)
    basis = build_basis(spec)
    rng = random.Random(11)
    for _ in range(200):
        a, b, c = ({e: 1.0} for e in rng.sample(basis, 3))
        total = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for g, v in _br(x, _br(y, z, spec), spec).items():
                total[g] = total.get(g, 0.0) + v
        assert all(abs(v) < 1e-12 for v in total.values())


def test_triple_product_table_shape_and_symmetry():
    tp = triple_products(GroupSpec(3, 3, 4))
    assert len(tp.table) == 56
    assert all(v >= 0 for v in tp.table.values())
    for key in itertools.permutations((12, 13, 23)):
        assert tp[key] == tp[(12, 13, 23)]
    assert tp[(12, 13, 23)] > 0
    # module 1 acts trivially on m23
    assert tp[(1, 23, 12)] == 0.0
    assert tp[(1, 23, 23)] == 0.0


def test_kernel_matches_dense_structure_constants():
    spec = GroupSpec(2, 3, 3)
    mats, labels = basis_arrays(spec)
    dense = triple_products_from_basis(mats, labels).ordered_array()
    np.testing.assert_allclose(triple_products(spec).ordered_array(), dense, atol=1e-12)


def _random_orthogonal(n, rng):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


@pytest.mark.parametrize("label", [3, 12, 23])
def test_basis_independence_within_module(label):
    spec = GroupSpec(2, 3, 3)
    mats, labels = basis_arrays(spec)
    before = triple_products_from_basis(mats, labels).ordered_array()
    idx = np.flatnonzero(labels == LABEL_INDEX[label])
    rot = _random_orthogonal(len(idx), np.random.default_rng(label))
    mats = mats.copy()
    mats[idx] = np.einsum("ab,bij->aij", rot, mats[idx])
    after = triple_products_from_basis(mats, labels).ordered_array()
    assert np.max(np.abs(after - before)) <= 1e-10


def test_bi_invariant_metric():
    spec = GroupSpec(3, 3, 4)
    r = ricci_general(spec, triple_products(spec), MetricParams.ones(exact=False))
    assert all(abs(v - 0.25) < 1e-13 for v in r)


@given(log_metric)
def test_agrees_with_closed_form_223(x):
    spec = GroupSpec(2, 2, 3)
    a = ricci_general(spec, triple_products(spec), x)
    b = ricci_closed(spec, x)
    assert max(abs(u - v) for u, v in zip(a, b)) <= 1e-10


@given(log_metric)
def test_scaling(x):
    spec = GroupSpec(3, 3, 4)
    tp = triple_products(spec)
    a = ricci_general(spec, tp, x.scaled(3))
    b = ricci_general(spec, tp, x)
    assert all(abs(u - v / 3) <= 1e-12 * max(1.0, abs(v)) for u, v in zip(a, b))


@given(log_metric)
def test_block_swap(x):
    spec = GroupSpec(3, 3, 5)
    tp = triple_products(spec)
    swapped = MetricParams(x.x2, x.x1, x.x3, x.x12, x.x23, x.x13)
    r, s = ricci_general(spec, tp, x), ricci_general(spec, tp, swapped)
    for u, v in ((r.r1, s.r2), (r.r2, s.r1), (r.r3, s.r3), (r.r12, s.r12), (r.r13, s.r23), (r.r23, s.r13)):
        assert abs(u - v) <= 1e-12


def test_degenerate_metric():
    spec = GroupSpec(2, 2, 3)
    with pytest.raises(DegenerateMetricError, match="degenerate metric"):
        ricci_general(spec, triple_products(spec), MetricParams(1, 1, 0, 1, 1, 1))


def test_csv_export(tmp_path):
    tp = triple_products(GroupSpec(2, 2, 3))
    path = tmp_path / "t.csv"
    tp.write_csv(path)
    rows = path.read_text().splitlines()
    assert rows[0] == "i,j,k,value"
    assert len(rows) == 57
    i, j, k, v = rows[-1].split(",")
    assert {int(i), int(j), int(k)} <= set(LABELS)
    assert float(v) == tp[(int(i), int(j), int(k))]
