import numpy as np
import pytest

from schubertcells import (
    Field,
    FieldMismatchError,
    KMatrix,
    KScalar,
    KVector,
    ShapeMismatchError,
    StiefelElement,
    Subspace,
    ToleranceError,
    coordinate_subspace,
    inner_product,
    intersection_basis,
    intersection_dim_with_coordinate_flag,
    orthonormalize,
    span,
)
from schubertcells.linalg import (
    null_space,
    orthonormality_residual,
    projection_residual,
    rank_of_columns,
)

from oracles import left_rank, random_entries, spans_equal, table_inner

H = Field.QUATERNION
C = Field.COMPLEX
R = Field.REAL


def random_vector(field, n, rng):
    return KVector(field, random_entries(field, n, 1, rng)[:, 0, :])


def random_scalar(field, rng):
    return KScalar(field, tuple(random_entries(field, 1, 1, rng)[0, 0]))


# ---------------------------------------------------------------------------
# inner product

def test_inner_product_trivial_cases():
    x = KVector.from_scalars(R, [1, 0])
    y = KVector.from_scalars(R, [0, 1])
    assert abs(inner_product(x, y)) == 0.0

    i = KScalar(H, (0, 1, 0, 0))
    j = KScalar(H, (0, 0, 1, 0))
    got = inner_product(KVector.from_scalars(H, [i]), KVector.from_scalars(H, [j]))
    assert got == KScalar(H, (0, 0, 0, -1))  # i * conj(j) = -k
    unit = inner_product(KVector.from_scalars(H, [i]), KVector.from_scalars(H, [i]))
    assert unit == KScalar(H, (1, 0, 0, 0))


def test_inner_product_mismatches():
    with pytest.raises(ShapeMismatchError):
        inner_product(KVector.from_scalars(R, [1]), KVector.from_scalars(R, [1, 2]))
    with pytest.raises(FieldMismatchError):
        inner_product(KVector.from_scalars(R, [1]), KVector.from_scalars(C, [1]))


def test_inner_product_axioms(field, rng):
    for _ in range(50):
        x = random_vector(field, 5, rng)
        y = random_vector(field, 5, rng)
        lam = random_scalar(field, rng)
        left = inner_product(x.left_mul(lam), y)
        right_scalar = inner_product(x, y)
        from schubertcells import scalar_mul

        right = scalar_mul(lam, right_scalar)
        assert np.allclose(left.components, right.components, atol=1e-12)
        # conjugate symmetry
        assert np.allclose(
            inner_product(y, x).components,
            right_scalar.conj().components,
            atol=1e-12,
        )
        # positivity
        selfpair = inner_product(x, x)
        assert selfpair.real >= 0
        assert np.allclose(selfpair.components[1:], 0.0, atol=1e-12)


def test_inner_product_matches_oracle(field, rng):
    for _ in range(20):
        x = random_vector(field, 4, rng)
        y = random_vector(field, 4, rng)
        want = table_inner(x.entries, y.entries)
        assert np.allclose(inner_product(x, y).components, want, atol=1e-12)


# ---------------------------------------------------------------------------
# orthonormalize

def test_orthonormalize_scaling():
    mat = KMatrix.from_columns(R, [[2, 0, 0]])
    st, rank = orthonormalize(mat)
    assert rank == 1
    assert np.allclose(st.entries[:, 0, 0], [1, 0, 0])


def test_orthonormalize_dependent_columns():
    mat = KMatrix.from_columns(R, [[1, 0], [1, 0]])
    st, rank = orthonormalize(mat)
    assert rank == 1
    assert st.num_cols == 1


def test_orthonormalize_span_preserved():
    mat = KMatrix.from_columns(R, [[1, 1, 0], [0, 1, 0]])
    st, rank = orthonormalize(mat)
    assert rank == 2
    assert spans_equal(st.entries[:, :rank, :], mat.entries)


def test_orthonormalize_zero_matrix():
    mat = KMatrix(R, np.zeros((3, 2, 4)))
    st, rank = orthonormalize(mat)
    assert rank == 0
    assert st.num_cols == 0


def test_orthonormalize_random_dims_up_to_12(field, rng):
    for m, n in [(12, 7), (9, 9), (5, 2)]:
        entries = random_entries(field, m, n, rng)
        st, rank = orthonormalize(KMatrix(field, entries))
        assert rank == n == left_rank(entries)
        assert orthonormality_residual(st.entries) <= 1e-10


# ---------------------------------------------------------------------------
# coordinate-flag intersections

def test_intersection_dim_examples():
    x = Subspace.from_columns(R, [[1, 0, 1]])  # span{h1 + h3} in K^3
    assert intersection_dim_with_coordinate_flag(x, 2) == 0
    assert intersection_dim_with_coordinate_flag(x, 3) == 1
    y = Subspace.from_columns(R, [[0, 1, 0, 0], [0, 0, 1, 0]])
    assert intersection_dim_with_coordinate_flag(y, 2) == 1


def test_intersection_dim_profile_properties(field, rng):
    for _ in range(10):
        entries = random_entries(field, 6, 3, rng)
        st, rank = orthonormalize(KMatrix(field, entries))
        x = span(st)
        profile = [intersection_dim_with_coordinate_flag(x, k) for k in range(7)]
        assert profile[0] == 0 and profile[-1] == x.dim
        assert all(0 <= b - a <= 1 for a, b in zip(profile, profile[1:]))


# ---------------------------------------------------------------------------
# intersections of general subspaces

def test_intersection_idempotent():
    x = Subspace.from_columns(R, [[1, 1, 0], [0, 0, 1]])
    got = intersection_basis(x, x)
    assert got.dim == x.dim and got == x


def test_intersection_orthogonal_is_zero():
    x = Subspace.from_columns(R, [[1, 0, 0, 0]])
    y = Subspace.from_columns(R, [[0, 1, 0, 0]])
    assert intersection_basis(x, y).dim == 0


def test_intersection_coordinate_example(field):
    x = coordinate_subspace(field, 4, 2)  # span{h1, h2}
    y = Subspace.from_columns(
        field, [[0, 1, 0, 0], [0, 0, 1, 0]]
    )  # span{h2, h3}
    got = intersection_basis(x, y)
    assert got.dim == 1
    h2 = Subspace.from_columns(field, [[0, 1, 0, 0]])
    assert got == h2
    # rank oracle on concatenated bases: dim(X) + dim(Y) - dim(X + Y)
    stacked = np.concatenate([x.basis.entries, y.basis.entries], axis=1)
    assert got.dim == x.dim + y.dim - left_rank(stacked)


def test_intersection_random_dims(field, rng):
    for _ in range(5):
        xe = random_entries(field, 5, 3, rng)
        ye = random_entries(field, 5, 3, rng)
        x = Subspace.from_columns(field, KMatrix(field, xe))
        y = Subspace.from_columns(field, KMatrix(field, ye))
        got = intersection_basis(x, y)
        stacked = np.concatenate([x.basis.entries, y.basis.entries], axis=1)
        assert got.dim == x.dim + y.dim - left_rank(stacked)
        if got.dim:
            assert x.contains(got) and y.contains(got)


# ---------------------------------------------------------------------------
# types and guards

def test_subspace_equality_is_span_equality():
    a = Subspace.from_columns(R, [[1, 0, 0], [0, 1, 0]])
    b = Subspace.from_columns(R, [[1, 1, 0], [1, -1, 0]])
    c = Subspace.from_columns(R, [[1, 0, 0], [0, 0, 1]])
    assert a == b
    assert a != c


def test_subspace_rejects_rank_deficient_basis():
    with pytest.raises(ValueError):
        Subspace.from_columns(R, [[1, 0], [2, 0]])


def test_stiefel_rejects_non_orthonormal():
    entries = np.zeros((2, 2, 4))
    entries[:, :, 0] = 0.5
    with pytest.raises(ToleranceError):
        StiefelElement(R, entries)


def test_stiefel_immutable():
    st = StiefelElement.standard_inclusion(R, 2, 3)
    with pytest.raises(ValueError):
        st.entries[0, 0, 0] = 5.0


def test_rank_guard_raises_in_ambiguous_band():
    entries = np.zeros((3, 2, 4))
    entries[0, 0, 0] = 1.0
    entries[1, 1, 0] = 1e-9  # right at the default tolerance scale
    with pytest.raises(ToleranceError):
        rank_of_columns(entries, 1e-9, guard=10.0)
    # far from the boundary: fine
    assert rank_of_columns(entries, 1e-3, guard=10.0) == 1


def test_null_space_matches_oracle(field, rng):
    for _ in range(10):
        entries = random_entries(field, 3, 5, rng)
        kernel = null_space(entries, 1e-9)
        assert kernel.shape[1] == 5 - left_rank(entries)
        # every kernel vector really kills the combination
        from schubertcells import backend

        combo = backend.compose(entries, kernel)
        assert np.abs(combo).max() < 1e-10


def test_projection_residual_detects_containment(field, rng):
    frame = random_entries(field, 6, 3, rng)
    st, _ = orthonormalize(KMatrix(field, frame))
    inside = st.entries[:, :1, :]
    outside = random_entries(field, 6, 1, rng)
    assert projection_residual(inside, st.entries) < 1e-12
    assert projection_residual(outside, st.entries) > 1e-3
