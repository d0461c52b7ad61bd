"""Schubert symbols of concrete subspaces and flags, cell membership,
canonical representatives, rotations and seeded cell samplers.

All coordinates are taken against the standard basis, so the reference
complete flag is the coordinate flag: stage k is the span of the first k
basis vectors.  The jump profile of a subspace against that flag (its
Schubert function) determines its symbol; a flag of subspaces gets a general
symbol computed two independent ways and cross-checked.

Rank decisions inside these operations are guarded: a pivot norm within a
factor of 10 of the tolerance raises ToleranceError instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import backend
from .errors import SchubertError, ShapeMismatchError, ToleranceError
from .fields import Field, KScalar
from .linalg import (
    AMBIGUITY_GUARD,
    KVector,
    StiefelElement,
    Subspace,
    compose_maps,
    express_in_frame,
    inner_product,
    null_space,
    orth_tol,
    project_onto_frame,
    projection_residual,
    rank_of_columns,
    rank_rtol,
    span,
)
from .symbols import ElementarySymbol, FlagSignature, GeneralSymbol, factor_tower

SAMPLER_MAX_RETRIES = 64


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class FlagPoint:
    """A nested chain of subspaces matching a flag signature."""

    signature: FlagSignature
    subspaces: tuple[Subspace, ...]

    def __post_init__(self):
        object.__setattr__(self, "subspaces", tuple(self.subspaces))
        if len(self.subspaces) != self.signature.length:
            raise ShapeMismatchError(
                f"signature has {self.signature.length} stages, got "
                f"{len(self.subspaces)} subspaces"
            )
        for sub, expected in zip(self.subspaces, self.signature.dims):
            if sub.dim != expected:
                raise ShapeMismatchError(
                    f"stage of dimension {sub.dim} where signature wants {expected}"
                )
            if sub.ambient_dim != self.signature.ambient:
                raise ShapeMismatchError(
                    f"subspace lives in K^{sub.ambient_dim}, signature ambient is "
                    f"{self.signature.ambient}"
                )
        fields = {sub.field for sub in self.subspaces}
        if len(fields) != 1:
            raise ShapeMismatchError("subspaces over different fields")
        for inner, outer in zip(self.subspaces, self.subspaces[1:]):
            if not outer.contains(inner):
                raise ToleranceError("flag stages are not nested within tolerance")

    @property
    def field(self) -> Field:
        return self.subspaces[0].field


@dataclass(frozen=True)
class GeneralStiefelPoint:
    """A chain of inner-product-preserving maps into the ambient space with
    nested images."""

    signature: FlagSignature
    maps: tuple[StiefelElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.maps) != self.signature.length:
            raise ShapeMismatchError(
                f"signature has {self.signature.length} stages, got {len(self.maps)} maps"
            )
        for u, expected in zip(self.maps, self.signature.dims):
            if u.num_cols != expected:
                raise ShapeMismatchError(
                    f"map with {u.num_cols} columns where signature wants {expected}"
                )
            if u.ambient_dim != self.signature.ambient:
                raise ShapeMismatchError(
                    f"map lands in K^{u.ambient_dim}, signature ambient is "
                    f"{self.signature.ambient}"
                )
        for inner, outer in zip(self.maps, self.maps[1:]):
            if projection_residual(inner.entries, outer.entries) > rank_rtol():
                raise ToleranceError("images are not nested within tolerance")

    @property
    def field(self) -> Field:
        return self.maps[0].field

    def to_flag(self) -> FlagPoint:
        return FlagPoint(self.signature, tuple(span(u) for u in self.maps))


# ---------------------------------------------------------------------------
# symbols of subspaces

def schubert_function(x: Subspace) -> tuple[int, ...]:
    """The jump profile (dim X ∩ H_k) for k = 0..m against the coordinate
    flag: nondecreasing, steps of at most 1, from 0 up to dim X."""
    m, n = x.ambient_dim, x.dim
    entries = x.basis.entries
    profile = []
    for k in range(m + 1):
        lower = np.ascontiguousarray(entries[k:, :, :])
        rank = rank_of_columns(lower, rank_rtol(), guard=AMBIGUITY_GUARD)
        profile.append(n - rank)
    if profile[0] != 0 or profile[-1] != n:
        raise ToleranceError(f"inconsistent jump profile {profile}")
    for a, b in zip(profile, profile[1:]):
        if not 0 <= b - a <= 1:
            raise ToleranceError(f"inconsistent jump profile {profile}")
    return tuple(profile)


def schubert_symbol_subspace(x: Subspace) -> ElementarySymbol:
    """The symbol sigma(k) = first flag stage whose intersection with X
    reaches dimension k."""
    profile = schubert_function(x)
    values = []
    for k in range(1, x.dim + 1):
        values.append(next(i for i, w in enumerate(profile) if w == k))
    return ElementarySymbol(tuple(values), x.ambient_dim)


def induced_flag(x: Subspace) -> list[Subspace]:
    """The complete flag X ∩ H_{sigma(k)} inside X inherited from the
    coordinate flag; stage k has dimension exactly k."""
    sigma = schubert_symbol_subspace(x)
    entries = x.basis.entries
    stages = []
    for k in range(1, x.dim + 1):
        cut = sigma(k)
        lower = np.ascontiguousarray(entries[cut:, :, :])
        kernel = null_space(lower, rank_rtol(), guard=AMBIGUITY_GUARD)
        if kernel.shape[1] != k:
            raise ToleranceError(
                f"induced flag stage {k} has dimension {kernel.shape[1]}"
            )
        basis = backend.compose(entries, kernel)
        stages.append(Subspace(StiefelElement(x.field, basis)))
    return stages


def canonical_representative(x: Subspace) -> StiefelElement:
    """The unique element of the subspace's open cell whose image is X:
    column k is the unit vector of (X ∩ H_{sigma(k)}) orthogonal to the
    previous stage, with its pivot coordinate made a positive real."""
    sigma = schubert_symbol_subspace(x)
    stages = induced_flag(x)
    m = x.ambient_dim
    cols = np.zeros((m, 0, 4), dtype=np.float64)
    tol = orth_tol()
    for k in range(1, x.dim + 1):
        stage = stages[k - 1].basis.entries
        resid = stage - project_onto_frame(stage, cols)
        q, rank, min_a, _ = backend.mgs(resid, rank_rtol())
        if rank != 1 or min_a < AMBIGUITY_GUARD * rank_rtol():
            raise ToleranceError(f"stage {k} residual is not one-dimensional")
        vec = q[:, 0, :].copy()
        cut = sigma(k)
        spill = float(np.sqrt(np.sum(vec[cut:] ** 2)))
        if spill > tol:
            raise ToleranceError(f"column {k} leaks past flag stage {cut}")
        vec[cut:] = 0.0
        pivot = vec[cut - 1]
        pivot_norm = float(np.sqrt(np.sum(pivot ** 2)))
        if pivot_norm <= 10 * tol:
            raise ToleranceError(f"pivot coordinate of column {k} is at tolerance")
        phase = np.array([pivot[0], -pivot[1], -pivot[2], -pivot[3]]) / pivot_norm
        vec = backend.qmul(phase[None, :], vec)
        cols = np.concatenate([cols, vec[:, None, :]], axis=1)
    return StiefelElement(x.field, cols)


def membership_V_sigma(u: StiefelElement, sigma: ElementarySymbol, closed: bool = False) -> bool:
    """Whether u lies in the (open or closed) cell labelled by sigma: column k
    supported on the first sigma(k) coordinates with a positive-real pivot
    (nonnegative in the closed cell)."""
    if u.num_cols != sigma.source or u.ambient_dim != sigma.target:
        raise ShapeMismatchError(
            f"element of shape {u.ambient_dim}x{u.num_cols} vs symbol of type "
            f"({sigma.source},{sigma.target})"
        )
    tol = orth_tol()
    entries = u.entries
    for k in range(1, u.num_cols + 1):
        col = entries[:, k - 1, :]
        cut = sigma(k)
        beyond = col[cut:]
        if beyond.size and float(np.sqrt(np.sum(beyond ** 2, axis=1)).max()) > tol:
            return False
        pivot = col[cut - 1]
        imag = float(np.sqrt(np.sum(pivot[1:] ** 2)))
        if imag > tol:
            return False
        if closed:
            if pivot[0] < -tol:
                return False
        elif pivot[0] <= tol:
            return False
    return True


# ---------------------------------------------------------------------------
# rotation

def rotation_apply(u: KVector, v: KVector, x: KVector) -> KVector:
    """The inner-product-preserving rotation taking u to v, applied to x:

        T(x) = x - (<x, u+v> / (1 + <u, v>)) (u+v) + 2 <x, u> v

    defined for unit u, v whose pairing <u, v> is a positive real number.
    """
    u._check(v)
    u._check(x)
    tol = orth_tol()
    if abs(u.norm() - 1.0) > 100 * tol or abs(v.norm() - 1.0) > 100 * tol:
        raise ValueError("rotation needs unit vectors")
    pairing = inner_product(u, v)
    imag = float(np.sqrt(sum(c * c for c in pairing.components[1:])))
    if imag > tol or pairing.real <= tol:
        raise ValueError("pairing <u, v> must be a positive real number")
    uv = u + v
    coeff = inner_product(x, uv).components
    denom = 1.0 + pairing.real
    scale = KScalar(u.field, tuple(c / denom for c in coeff))
    xu = inner_product(x, u)
    twice = KScalar(u.field, tuple(2.0 * c for c in xu.components))
    return x - uv.left_mul(scale) + v.left_mul(twice)


# ---------------------------------------------------------------------------
# samplers

def _random_supported_column(field: Field, ambient: int, support: int,
                             frame: np.ndarray, rng: np.random.Generator):
    """Draw a unit vector in the span of the first `support` coordinates,
    orthogonal to the columns of `frame`; returns None on a degenerate draw."""
    raw = np.zeros((ambient, 4), dtype=np.float64)
    raw[:support, :field.real_dim] = rng.standard_normal((support, field.real_dim))
    resid = raw[:, None, :] - project_onto_frame(raw[:, None, :], frame)
    resid = resid - project_onto_frame(resid, frame)  # second pass for hygiene
    nrm = float(np.sqrt(np.sum(resid ** 2)))
    if nrm < 1e-6:
        return None
    return resid[:, 0, :] / nrm


def _sample_cell_columns(field: Field, sigma: ElementarySymbol,
                         rng: np.random.Generator, skip_pivot: int | None = None) -> np.ndarray:
    """Shared sampler core: columns of a (closed-)cell element; column
    `skip_pivot` (1-based), if given, is drawn one flag stage lower so its
    pivot vanishes (a boundary point)."""
    m = sigma.target
    cols = np.zeros((m, 0, 4), dtype=np.float64)
    for k in range(1, sigma.source + 1):
        support = sigma(k) - 1 if k == skip_pivot else sigma(k)
        vec = None
        for _ in range(SAMPLER_MAX_RETRIES):
            cand = _random_supported_column(field, m, support, cols, rng)
            if cand is None:
                continue
            if k != skip_pivot:
                pivot = cand[sigma(k) - 1]
                if float(np.sqrt(np.sum(pivot ** 2))) < 1e-6:
                    continue
            vec = cand
            break
        if vec is None:
            raise SchubertError(
                f"resampling limit reached for column {k} of {sigma.values}"
            )
        if k != skip_pivot:
            pivot = vec[sigma(k) - 1]
            pnorm = float(np.sqrt(np.sum(pivot ** 2)))
            phase = np.array([pivot[0], -pivot[1], -pivot[2], -pivot[3]]) / pnorm
            vec = backend.qmul(phase[None, :], vec)
        cols = np.concatenate([cols, vec[:, None, :]], axis=1)
    return cols


def sample_V_sigma(field: Field, sigma: ElementarySymbol, seed) -> StiefelElement:
    """A random element of the open cell of sigma: column k is drawn in the
    span of the first sigma(k) coordinates, orthogonalized against the
    previous columns, and left-multiplied by the unit scalar conj(p)/|p| so
    its pivot coordinate p becomes a positive real."""
    rng = _rng(seed)
    return StiefelElement(field, _sample_cell_columns(field, sigma, rng))


def sample_closure_boundary(field: Field, sigma: ElementarySymbol, seed) -> StiefelElement:
    """A point of the closed cell outside the open cell: one column whose
    flag stage has slack is drawn one stage lower, so its pivot vanishes and
    the resulting subspace has a strictly smaller symbol."""
    if sigma.dim() == 0:
        raise SchubertError("cell has empty boundary contribution")
    rng = _rng(seed)
    eligible = [k for k in range(1, sigma.source + 1) if sigma(k) > k]
    k0 = int(eligible[rng.integers(len(eligible))])
    return StiefelElement(field, _sample_cell_columns(field, sigma, rng, skip_pivot=k0))


def assemble_flag(field: Field, factors: Sequence[StiefelElement],
                  sig: FlagSignature) -> GeneralStiefelPoint:
    """Compose a chain of factors (each mapping one signature stage into the
    next, the last into the ambient space) into the nested-image point
    (v_k = last∘...∘(k+1)∘k)."""
    chain = sig.dims + (sig.ambient,)
    if len(factors) != sig.length:
        raise ShapeMismatchError(
            f"signature has {sig.length} stages, got {len(factors)} factors"
        )
    for u, dom, cod in zip(factors, chain[:-1], chain[1:]):
        if u.field is not field:
            raise ShapeMismatchError("factor over the wrong field")
        if (u.num_cols, u.ambient_dim) != (dom, cod):
            raise ShapeMismatchError(
                f"factor of shape {u.ambient_dim}x{u.num_cols} does not map "
                f"K^{dom} into K^{cod}"
            )
    maps = [factors[-1]]
    for u in reversed(factors[:-1]):
        maps.append(compose_maps(maps[-1], u))
    maps.reverse()
    return GeneralStiefelPoint(sig, tuple(maps))


def sample_flag_stiefel(field: Field, sym: GeneralSymbol, seed) -> GeneralStiefelPoint:
    """Sample each factor from its elementary cell and assemble."""
    rng = _rng(seed)
    factors = [sample_V_sigma(field, part, rng) for part in sym.parts]
    return assemble_flag(field, factors, sym.signature)


def sample_flag_cell(field: Field, sym: GeneralSymbol, seed) -> FlagPoint:
    """A random flag whose Schubert symbol is the requested one."""
    return sample_flag_stiefel(field, sym, seed).to_flag()


# ---------------------------------------------------------------------------
# flag symbols

def _symbols_recursive(field: Field, bases: list[np.ndarray], ambient: int
                       ) -> list[ElementarySymbol]:
    top = Subspace(StiefelElement(field, bases[-1]))
    sigma_top = schubert_symbol_subspace(top)
    if len(bases) == 1:
        return [sigma_top]
    frame = canonical_representative(top).entries
    adapted = [express_in_frame(b, frame) for b in bases[:-1]]
    return _symbols_recursive(field, adapted, frame.shape[1]) + [sigma_top]


def schubert_symbol_flag(flag: FlagPoint) -> GeneralSymbol:
    """The general symbol of a flag, computed two independent ways.

    Route one follows the definition: the top stage gets its ambient symbol,
    the remaining stages are re-expressed in the top stage's canonical basis
    (whose column prefixes span the induced flag) and the computation recurses.
    Route two computes ambient symbols of every stage and factors the tower.
    Disagreement means the numerics cannot be trusted, so it raises.
    """
    bases = [sub.basis.entries for sub in flag.subspaces]
    recursive = _symbols_recursive(flag.field, bases, flag.signature.ambient)
    ambient_symbols = [schubert_symbol_subspace(sub) for sub in flag.subspaces]
    factored = factor_tower(ambient_symbols, flag.signature)
    candidate = GeneralSymbol(flag.signature, tuple(recursive))
    if candidate != factored:
        raise ToleranceError(
            "tolerance breakdown: flag symbol routes disagree "
            f"({candidate} vs {factored})"
        )
    return candidate
