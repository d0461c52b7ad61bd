"""Numerical linear algebra over R, C and H with left-module conventions.

Everything is coordinate-based: the ambient space is K^m with the standard
basis, and the reference complete flag is the coordinate flag (the span of
the first k basis vectors for each k).  Scalars multiply vectors on the left,
the inner product <x, y> = sum_n x_n * conj(y_n) is linear in x, and the
matrix of a composed map multiplies the inner map's entries on the left (see
`backend.compose`).

Rank decisions use a pivoted modified Gram–Schmidt with an explicit tolerance
(default 1e-9 times the largest column norm) and report how close the
decision came to the threshold, so callers can refuse to guess.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

from . import backend
from .errors import FieldMismatchError, ShapeMismatchError, ToleranceError
from .fields import Field, KScalar

DEFAULT_RANK_RTOL = 1e-9
DEFAULT_ORTH_TOL = 1e-10
#: rank decisions closer than this factor to the tolerance raise ToleranceError
AMBIGUITY_GUARD = 10.0


def rank_rtol() -> float:
    """Relative rank tolerance; SCHUBERT_TOL overrides the default."""
    value = os.environ.get("SCHUBERT_TOL")
    return float(value) if value else DEFAULT_RANK_RTOL


def orth_tol() -> float:
    """Orthonormality tolerance; SCHUBERT_TOL overrides the default."""
    value = os.environ.get("SCHUBERT_TOL")
    return float(value) if value else DEFAULT_ORTH_TOL


# ---------------------------------------------------------------------------
# component helpers (raw (..., 4) float arrays)

def as_components(field: Field, value) -> tuple[float, float, float, float]:
    """Coerce a float / complex / sequence / KScalar into 4 components."""
    if isinstance(value, KScalar):
        if value.field is not field:
            raise FieldMismatchError(
                f"scalar over {value.field.letter} used in {field.letter} context"
            )
        return value.components
    if isinstance(value, complex):
        comps = (value.real, value.imag, 0.0, 0.0)
    elif isinstance(value, (int, float, np.floating, np.integer)):
        comps = (float(value), 0.0, 0.0, 0.0)
    else:
        seq = [float(c) for c in value]
        if len(seq) > 4:
            raise ValueError(f"scalar needs at most 4 components, got {len(seq)}")
        comps = tuple(seq + [0.0] * (4 - len(seq)))
    if any(c != 0.0 for c in comps[field.real_dim:]):
        raise FieldMismatchError(
            f"nonzero component beyond real dimension of {field.letter}"
        )
    return comps


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _check_components(field: Field, entries: np.ndarray):
    if entries.shape[-1] != 4:
        raise ShapeMismatchError("component axis must have length 4")
    if field.real_dim < 4 and np.any(entries[..., field.real_dim:] != 0.0):
        raise FieldMismatchError(
            f"nonzero components beyond real dimension of {field.letter}"
        )


def col_norms(entries: np.ndarray) -> np.ndarray:
    """Euclidean norms of the columns of a (rows, cols, 4) array."""
    return np.sqrt(np.sum(entries ** 2, axis=(0, 2)))


def conj_transpose(entries: np.ndarray) -> np.ndarray:
    """Conjugate transpose of a (rows, cols, 4) array."""
    return np.ascontiguousarray(np.swapaxes(backend.qconj(entries), 0, 1))


def identity_entries(field: Field, n: int) -> np.ndarray:
    out = np.zeros((n, n, 4), dtype=np.float64)
    out[np.arange(n), np.arange(n), 0] = 1.0
    return out


def project_onto_frame(cols: np.ndarray, frame: np.ndarray) -> np.ndarray:
    """Orthogonal projection of each column of `cols` onto the left span of
    the orthonormal columns of `frame`."""
    if frame.shape[1] == 0:
        return np.zeros_like(cols)
    coeffs = backend.gram(cols, frame)  # <col_i, frame_j>
    return backend.compose(frame, np.ascontiguousarray(np.swapaxes(coeffs, 0, 1)))


def projection_residual(cols: np.ndarray, frame: np.ndarray) -> float:
    """Largest column norm of cols - proj_frame(cols)."""
    resid = cols - project_onto_frame(cols, frame)
    if resid.shape[1] == 0:
        return 0.0
    return float(col_norms(resid).max())


def rank_of_columns(entries: np.ndarray, tol: float, guard: float | None = None) -> int:
    """Numerical rank of the left column span.

    With `guard` set, raises ToleranceError if any accepted pivot norm is
    below guard*tol or any rejected one above tol/guard — i.e. whenever the
    rank decision is not comfortably clear of the threshold.
    """
    _, rank, min_accept, max_reject = backend.mgs(entries, tol)
    if guard is not None:
        if min_accept < guard * tol or max_reject > tol / guard:
            raise ToleranceError(
                f"rank decision within {guard}x of tolerance "
                f"(accepted >= {min_accept:.3e}, rejected <= {max_reject:.3e}, tol {tol:.3e})"
            )
    return rank


def null_space(entries: np.ndarray, tol: float, guard: float | None = None) -> np.ndarray:
    """Orthonormal basis of the kernel of lam -> sum_i lam_i * column_i.

    The kernel equals the orthogonal complement of the left span of the
    conjugated rows, so two Gram–Schmidt passes suffice.  Returns an
    (n, kernel_dim, 4) array.
    """
    n = entries.shape[1]
    row_span = conj_transpose(entries)
    q, rank, min_a, max_r = backend.mgs(row_span, tol)
    if guard is not None and (min_a < guard * tol or max_r > tol / guard):
        raise ToleranceError(
            f"null-space rank decision within {guard}x of tolerance (tol {tol:.3e})"
        )
    eye = identity_entries(Field.QUATERNION, n)
    resid = eye - project_onto_frame(eye, q)
    kernel, kdim, min_a2, max_r2 = backend.mgs(resid, tol)
    if guard is not None and (min_a2 < guard * tol or max_r2 > tol / guard):
        raise ToleranceError(
            f"null-space complement decision within {guard}x of tolerance (tol {tol:.3e})"
        )
    if kdim != n - rank:
        raise ToleranceError(
            f"null-space dimension mismatch: complement rank {kdim} vs expected {n - rank}"
        )
    return kernel


# ---------------------------------------------------------------------------
# value types

class KVector:
    """A vector in K^n, stored as an immutable (n, 4) component array."""

    __slots__ = ("field", "entries")

    def __init__(self, field: Field, entries):
        arr = np.array(entries, dtype=np.float64)
        if arr.ndim != 2:
            raise ShapeMismatchError(f"vector entries must be (n, 4), got {arr.shape}")
        _check_components(field, arr)
        self.field = field
        self.entries = _freeze(arr)

    @classmethod
    def from_scalars(cls, field: Field, values: Iterable) -> "KVector":
        return cls(field, [as_components(field, v) for v in values])

    @classmethod
    def zeros(cls, field: Field, n: int) -> "KVector":
        return cls(field, np.zeros((n, 4)))

    @classmethod
    def basis_vector(cls, field: Field, n: int, index: int) -> "KVector":
        """Standard basis vector with 1-based index."""
        arr = np.zeros((n, 4))
        arr[index - 1, 0] = 1.0
        return cls(field, arr)

    def __len__(self):
        return self.entries.shape[0]

    def entry(self, index: int) -> KScalar:
        """1-based entry access."""
        return KScalar(self.field, tuple(self.entries[index - 1]))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.entries ** 2)))

    def __add__(self, other: "KVector") -> "KVector":
        self._check(other)
        return KVector(self.field, self.entries + other.entries)

    def __sub__(self, other: "KVector") -> "KVector":
        self._check(other)
        return KVector(self.field, self.entries - other.entries)

    def left_mul(self, scalar) -> "KVector":
        comps = np.asarray(as_components(self.field, scalar))
        return KVector(self.field, backend.qmul(comps[None, :], self.entries))

    def _check(self, other):
        if not isinstance(other, KVector):
            raise TypeError(f"expected KVector, got {type(other).__name__}")
        if other.field is not self.field:
            raise FieldMismatchError(
                f"field mismatch: {self.field.letter} vs {other.field.letter}"
            )
        if len(other) != len(self):
            raise ShapeMismatchError(f"length mismatch: {len(self)} vs {len(other)}")

    def __repr__(self):
        return f"KVector({self.field.letter}, n={len(self)})"


def inner_product(x: KVector, y: KVector) -> KScalar:
    """<x, y> = sum_n x_n * conj(y_n): left-linear, conjugate-symmetric,
    positive-definite."""
    x._check(y)
    comps = backend.qmul(x.entries, backend.qconj(y.entries)).sum(axis=0)
    return KScalar(x.field, tuple(comps))


class KMatrix:
    """A rows×cols matrix over K; column k holds the image of the k-th basis
    vector when the matrix represents a linear map."""

    __slots__ = ("field", "entries")

    def __init__(self, field: Field, entries):
        arr = np.array(entries, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ShapeMismatchError(
                f"matrix entries must be (rows, cols, 4), got {arr.shape}"
            )
        _check_components(field, arr)
        self.field = field
        self.entries = _freeze(arr)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence) -> "KMatrix":
        """Build from a sequence of columns, each a sequence of scalar-likes
        (or a KVector)."""
        cols = []
        for col in columns:
            if isinstance(col, KVector):
                cols.append(col.entries)
            else:
                cols.append(np.array([as_components(field, v) for v in col]))
        if not cols:
            raise ValueError("need at least one column")
        return cls(field, np.stack(cols, axis=1))

    @classmethod
    def identity(cls, field: Field, n: int) -> "KMatrix":
        return cls(field, identity_entries(field, n))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def column(self, index: int) -> KVector:
        """1-based column access."""
        return KVector(self.field, self.entries[:, index - 1, :])

    def __repr__(self):
        return f"KMatrix({self.field.letter}, {self.rows}x{self.cols})"


class StiefelElement:
    """An inner-product-preserving map K^n -> K^m: a matrix with pairwise
    orthonormal columns (within the orthonormality tolerance)."""

    __slots__ = ("field", "entries")

    def __init__(self, field: Field, entries, tol: float | None = None):
        arr = np.array(entries, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ShapeMismatchError(
                f"Stiefel entries must be (rows, cols, 4), got {arr.shape}"
            )
        _check_components(field, arr)
        if arr.shape[1] > arr.shape[0]:
            raise ShapeMismatchError(
                f"more columns ({arr.shape[1]}) than ambient dimension ({arr.shape[0]})"
            )
        tol = orth_tol() if tol is None else tol
        resid = orthonormality_residual(arr)
        if resid > tol:
            raise ToleranceError(
                f"columns not orthonormal: residual {resid:.3e} > {tol:.3e}"
            )
        self.field = field
        self.entries = _freeze(arr)

    @classmethod
    def standard_inclusion(cls, field: Field, n: int, m: int) -> "StiefelElement":
        if n > m:
            raise ShapeMismatchError(f"inclusion needs n <= m, got {n} > {m}")
        arr = np.zeros((m, n, 4))
        arr[np.arange(n), np.arange(n), 0] = 1.0
        return cls(field, arr)

    @property
    def ambient_dim(self) -> int:
        return self.entries.shape[0]

    @property
    def num_cols(self) -> int:
        return self.entries.shape[1]

    def column(self, index: int) -> KVector:
        """1-based column access."""
        return KVector(self.field, self.entries[:, index - 1, :])

    def to_matrix(self) -> KMatrix:
        return KMatrix(self.field, self.entries)

    def frobenius_distance(self, other: "StiefelElement") -> float:
        return float(np.sqrt(np.sum((self.entries - other.entries) ** 2)))

    def __repr__(self):
        return f"StiefelElement({self.field.letter}, {self.ambient_dim}x{self.num_cols})"


def orthonormality_residual(entries: np.ndarray) -> float:
    """max |<col_i, col_j> - delta_ij| over all column pairs."""
    n = entries.shape[1]
    if n == 0:
        return 0.0
    g = backend.gram(entries, entries)
    g = g - identity_entries(Field.QUATERNION, n)
    return float(np.sqrt(np.sum(g ** 2, axis=2)).max())


def compose_maps(outer: StiefelElement, inner: StiefelElement) -> StiefelElement:
    """Matrix of outer∘inner; composition of inner-product-preserving maps is
    again inner-product preserving."""
    if inner.field is not outer.field:
        raise FieldMismatchError("compose_maps: field mismatch")
    if inner.ambient_dim != outer.num_cols:
        raise ShapeMismatchError(
            f"compose_maps: inner lands in K^{inner.ambient_dim} but outer "
            f"starts from K^{outer.num_cols}"
        )
    return StiefelElement(outer.field, backend.compose(outer.entries, inner.entries))


def apply_map(u: StiefelElement, x: KVector) -> KVector:
    """Image of x under the map represented by u."""
    if x.field is not u.field:
        raise FieldMismatchError("apply_map: field mismatch")
    if len(x) != u.num_cols:
        raise ShapeMismatchError(f"apply_map: vector length {len(x)} != {u.num_cols}")
    out = backend.compose(u.entries, np.ascontiguousarray(x.entries[:, None, :]))
    return KVector(u.field, out[:, 0, :])


class Subspace:
    """A point of the Grassmannian: the left K-span of orthonormal columns.

    Equality is span equality (mutual projection residual within the rank
    tolerance), never entrywise equality of bases.
    """

    __slots__ = ("basis",)

    def __init__(self, basis: StiefelElement):
        self.basis = basis

    @classmethod
    def from_columns(cls, field: Field, columns, tol: float | None = None) -> "Subspace":
        """Span of the given columns; rejects rank-deficient claimed bases
        instead of silently repairing them."""
        mat = columns if isinstance(columns, KMatrix) else KMatrix.from_columns(field, columns)
        stiefel, rank = orthonormalize(mat, tol)
        if rank != mat.cols:
            raise ValueError(
                f"claimed basis is rank-deficient: {mat.cols} columns, rank {rank}"
            )
        return cls(stiefel)

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.num_cols

    @property
    def ambient_dim(self) -> int:
        return self.basis.ambient_dim

    def contains(self, other: "Subspace", tol: float | None = None) -> bool:
        tol = rank_rtol() if tol is None else tol
        return projection_residual(other.basis.entries, self.basis.entries) <= tol

    def spans_equal(self, other: "Subspace", tol: float | None = None) -> bool:
        if other.field is not self.field or other.ambient_dim != self.ambient_dim:
            return False
        if other.dim != self.dim:
            return False
        return self.contains(other, tol) and other.contains(self, tol)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.spans_equal(other)

    __hash__ = None  # tolerance-based equality is not hashable

    def __repr__(self):
        return f"Subspace({self.field.letter}, dim {self.dim} in K^{self.ambient_dim})"


def span(u: StiefelElement) -> Subspace:
    """The quotient map Stiefel -> Grassmannian (a map goes to its image)."""
    return Subspace(u)


def coordinate_subspace(field: Field, ambient: int, k: int) -> Subspace:
    """Span of the first k standard basis vectors (the reference flag's k-th
    stage)."""
    if not 0 <= k <= ambient:
        raise ShapeMismatchError(f"flag stage {k} outside 0..{ambient}")
    return Subspace(StiefelElement.standard_inclusion(field, k, ambient))


# ---------------------------------------------------------------------------
# operations

def orthonormalize(cols: KMatrix, tol: float | None = None) -> tuple[StiefelElement, int]:
    """Pivoted modified Gram–Schmidt.

    Returns an orthonormal basis of the left span of the input columns plus
    the numerical rank.  `tol` is the absolute residual-norm threshold; by
    default it is rank_rtol() times the largest input column norm, so a zero
    matrix yields rank 0 and an empty element.
    """
    entries = cols.entries
    if tol is None:
        scale = float(col_norms(entries).max()) if cols.cols else 0.0
        tol = rank_rtol() * scale
    elif tol <= 0:
        raise ValueError("tol must be positive")
    q, rank, _, _ = backend.mgs(entries, tol)
    return StiefelElement(cols.field, q), rank


def intersection_dim_with_coordinate_flag(x: Subspace, k: int) -> int:
    """dim(X ∩ H_k) for the coordinate flag: the number of basis combinations
    supported on the first k coordinates, i.e. dim X minus the rank of the
    rows below k."""
    if not 0 <= k <= x.ambient_dim:
        raise ShapeMismatchError(f"flag index {k} outside 0..{x.ambient_dim}")
    lower = np.ascontiguousarray(x.basis.entries[k:, :, :])
    return x.dim - rank_of_columns(lower, rank_rtol())


def intersection_basis(x: Subspace, y: Subspace, guard: float | None = None) -> Subspace:
    """Orthonormal basis of X ∩ Y via the null space of the stacked
    orthogonal-projection residuals (a vector is in both spans iff both
    residuals vanish)."""
    if y.field is not x.field:
        raise FieldMismatchError("intersection: field mismatch")
    if y.ambient_dim != x.ambient_dim:
        raise ShapeMismatchError(
            f"intersection: ambient {x.ambient_dim} vs {y.ambient_dim}"
        )
    m = x.ambient_dim
    eye = identity_entries(x.field, m)
    resid_x = eye - project_onto_frame(eye, x.basis.entries)
    resid_y = eye - project_onto_frame(eye, y.basis.entries)
    stacked = np.ascontiguousarray(np.concatenate([resid_x, resid_y], axis=0))
    kernel = null_space(stacked, rank_rtol(), guard=guard)
    return Subspace(StiefelElement(x.field, kernel))


def express_in_frame(cols: np.ndarray, frame: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Coordinates of each column of `cols` w.r.t. the orthonormal columns of
    `frame`, assuming the columns lie in the frame's span (checked)."""
    coords = np.ascontiguousarray(np.swapaxes(backend.gram(cols, frame), 0, 1))
    recon = backend.compose(frame, coords)
    resid = cols - recon
    tol = orth_tol() if tol is None else tol
    if cols.shape[1] and float(col_norms(resid).max()) > tol * 100:
        raise ToleranceError("columns do not lie in the frame's span")
    return coords
