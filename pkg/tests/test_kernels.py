"""Kernel-level tests: both backends against the table/embedding oracles and
against each other."""

import numpy as np
import pytest

from schubertcells import _kernels_py as kpy
from schubertcells import backend
from schubertcells.fields import FIELDS

from oracles import left_rank, random_entries, spans_equal, table_inner, table_mul, to_block

BACKENDS = [("numpy", kpy)]
try:
    from schubertcells import _kernels_c as kc

    BACKENDS.append(("cython", kc))
except ImportError:
    pass


@pytest.fixture(params=BACKENDS, ids=[name for name, _ in BACKENDS])
def kernels(request):
    return request.param[1]


def test_oracles_selfcheck(rng):
    # embedding is multiplicative
    for _ in range(20):
        a = rng.standard_normal(4)
        b = rng.standard_normal(4)
        prod = table_mul(tuple(a), tuple(b))
        assert np.allclose(to_block(prod), to_block(a) @ to_block(b))
    # the worked example where left and right column ranks differ:
    # columns (1, j) and (i, k): i*(1, j) = (i, ij) = (i, k), so the LEFT
    # rank is 1 even though no right multiple of (1, j) gives (i, k)
    entries = np.zeros((2, 2, 4))
    entries[0, 0] = (1, 0, 0, 0)
    entries[1, 0] = (0, 0, 1, 0)
    entries[0, 1] = (0, 1, 0, 0)
    entries[1, 1] = (0, 0, 0, 1)
    assert left_rank(entries) == 1


def test_compose_matches_pointwise_formula(kernels, rng):
    outer = rng.standard_normal((4, 3, 4))
    inner = rng.standard_normal((3, 2, 4))
    got = kernels.compose(outer, inner)
    for i in range(4):
        for k in range(2):
            want = (0.0, 0.0, 0.0, 0.0)
            for j in range(3):
                term = table_mul(tuple(inner[j, k]), tuple(outer[i, j]))
                want = tuple(w + t for w, t in zip(want, term))
            assert np.allclose(got[i, k], want, atol=1e-12)


def test_gram_matches_inner_oracle(kernels, rng):
    a = rng.standard_normal((5, 3, 4))
    b = rng.standard_normal((5, 2, 4))
    got = kernels.gram(a, b)
    for i in range(3):
        for j in range(2):
            want = table_inner(a[:, i, :], b[:, j, :])
            assert np.allclose(got[i, j], want, atol=1e-12)


def test_compose_shape_mismatch(kernels):
    with pytest.raises(ValueError):
        kernels.compose(np.zeros((2, 2, 4)), np.zeros((3, 1, 4)))


@pytest.mark.parametrize("field", FIELDS, ids=[f.letter for f in FIELDS])
def test_mgs_random_full_rank(kernels, field, rng):
    for _ in range(10):
        entries = random_entries(field, 6, 4, rng)
        q, rank, min_a, max_r = kernels.mgs(entries, 1e-9)
        assert rank == left_rank(entries) == 4
        assert min_a > 1e-3 and max_r == 0.0
        # orthonormal columns per the table oracle
        for i in range(rank):
            for j in range(rank):
                ip = table_inner(q[:, i, :], q[:, j, :])
                want = (1.0, 0, 0, 0) if i == j else (0.0, 0, 0, 0)
                assert np.allclose(ip, want, atol=1e-12)
        assert spans_equal(q, entries)


@pytest.mark.parametrize("field", FIELDS, ids=[f.letter for f in FIELDS])
def test_mgs_rank_deficient(kernels, field, rng):
    base = random_entries(field, 5, 2, rng)
    # third column = left combination of the first two
    lam = random_entries(field, 1, 1, rng)[0, 0]
    extra = kpy.qmul(lam[None, :], base[:, 0, :]) + base[:, 1, :]
    entries = np.concatenate([base, extra[:, None, :]], axis=1)
    q, rank, min_a, max_r = kernels.mgs(entries, 1e-9)
    assert rank == 2 == left_rank(entries)
    assert max_r < 1e-12
    assert spans_equal(q, entries)


def test_mgs_zero_and_empty(kernels):
    q, rank, min_a, max_r = kernels.mgs(np.zeros((3, 2, 4)), 1e-9)
    assert rank == 0 and q.shape == (3, 0, 4)
    assert min_a == np.inf and max_r == 0.0
    q, rank, _, _ = kernels.mgs(np.zeros((3, 0, 4)), 1e-9)
    assert rank == 0 and q.shape == (3, 0, 4)
    q, rank, _, _ = kernels.mgs(np.zeros((0, 2, 4)), 1e-9)
    assert rank == 0


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
@pytest.mark.parametrize("field", FIELDS, ids=[f.letter for f in FIELDS])
def test_backend_parity(field, rng):
    for _ in range(10):
        outer = random_entries(field, 5, 3, rng)
        inner = random_entries(field, 3, 2, rng)
        assert np.allclose(kc.compose(outer, inner), kpy.compose(outer, inner), atol=1e-13)
        assert np.allclose(kc.gram(outer, outer), kpy.gram(outer, outer), atol=1e-13)
        qc_, rc_, minc, maxc = kc.mgs(outer, 1e-9)
        qp_, rp_, minp, maxp = kpy.mgs(outer, 1e-9)
        assert rc_ == rp_
        assert np.allclose(qc_, qp_, atol=1e-12)
        assert minc == pytest.approx(minp)
        assert maxc == pytest.approx(maxp)


def test_backend_module_exposes_kernels():
    assert backend.BACKEND in ("c", "python")
    for name in ("compose", "gram", "mgs", "qmul", "qconj"):
        assert hasattr(backend, name)
