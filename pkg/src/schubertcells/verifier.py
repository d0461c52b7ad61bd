"""Seeded property-suite runner: every structural property of the cell
decomposition becomes a pass/fail check with counts, worst residuals and
reproduction seeds.

Combinatorial suites are exhaustive up to the configured ambient dimension;
numerical suites run `trials` seeded trials per field.  Each trial derives
its own RNG from the entropy tuple (seed, suite index, field index, trial
index), so any failure can be reproduced in isolation and the report is
deterministic regardless of execution order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from . import geometry
from .cells import cell_polynomial, euler_characteristic, manifold_dimension
from .errors import SchubertError
from .fields import FIELDS, Field, KScalar
from .linalg import (
    KVector,
    StiefelElement,
    Subspace,
    compose_maps,
    express_in_frame,
    inner_product,
    projection_residual,
    span,
)
from .symbols import (
    FlagSignature,
    all_signatures,
    compose,
    composed_tower,
    d_decomposition,
    enumerate_elementary,
    enumerate_general,
    factor_tower,
    is_boundary_candidate,
    top_symbol,
)

SUITE_ORDER = (
    "counting",
    "decomposition",
    "boundary_order",
    "factorization",
    "correspondence",
    "dimensions",
    "functoriality",
    "roundtrip",
    "towers",
    "boundary",
    "rotation",
)

MAX_AMBIENT_BOUNDARY_ORDER = 5  # pair count grows quadratically in the cell count


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple[str, ...] = SUITE_ORDER
    seed: int = 42
    trials: int = 1000
    fields: tuple[Field, ...] = FIELDS
    max_dim: int = 6

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 2 <= self.max_dim <= 12:
            raise ValueError("max_dim must be between 2 and 12")
        unknown = set(self.suites) - set(SUITE_ORDER)
        if unknown:
            raise ValueError(f"unknown suite(s): {sorted(unknown)}")


@dataclass
class CheckRecord:
    name: str
    trials: int = 0
    failures: int = 0
    worst_residual: float | None = None
    first_failing_seed: tuple | None = None

    def observe(self, ok: bool, residual: float | None = None, entropy: tuple | None = None):
        self.trials += 1
        if residual is not None:
            if self.worst_residual is None or residual > self.worst_residual:
                self.worst_residual = residual
        if not ok:
            self.failures += 1
            if self.first_failing_seed is None:
                self.first_failing_seed = entropy

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "failures": self.failures,
            "worst_residual": self.worst_residual,
            "first_failing_seed": (
                list(self.first_failing_seed) if self.first_failing_seed else None
            ),
        }


@dataclass
class SuiteReport:
    config: SuiteConfig
    records: list[CheckRecord] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.failures == 0 for r in self.records)

    def to_json(self) -> dict:
        return {
            "config": {
                "suites": list(self.config.suites),
                "seed": self.config.seed,
                "trials": self.config.trials,
                "fields": [f.letter for f in self.config.fields],
                "max_dim": self.config.max_dim,
            },
            "checks": [r.to_json() for r in self.records],
            "passed": self.passed,
        }

    def to_table(self) -> str:
        lines = [f"{'check':<14} {'trials':>8} {'failures':>9} {'worst residual':>16}"]
        for r in self.records:
            resid = "-" if r.worst_residual is None else f"{r.worst_residual:.3e}"
            lines.append(f"{r.name:<14} {r.trials:>8} {r.failures:>9} {resid:>16}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _entropy(cfg: SuiteConfig, suite: str, *extra: int) -> tuple:
    return (cfg.seed, SUITE_ORDER.index(suite)) + tuple(int(e) for e in extra)


def _signatures_up_to(max_ambient: int) -> list[FlagSignature]:
    sigs = []
    for n in range(2, max_ambient + 1):
        sigs.extend(all_signatures(n))
    return sigs


def _random_signature(rng: np.random.Generator, max_ambient: int) -> FlagSignature:
    ambient = int(rng.integers(2, max_ambient + 1))
    size = int(rng.integers(1, ambient))
    dims = np.sort(rng.choice(np.arange(1, ambient), size=size, replace=False))
    return FlagSignature(tuple(int(d) for d in dims), ambient)


def _random_elementary(rng: np.random.Generator, n: int, m: int):
    pool = enumerate_elementary(n, m)
    return pool[int(rng.integers(len(pool)))]


def _random_general(rng: np.random.Generator, sig: FlagSignature):
    from .symbols import GeneralSymbol

    parts = tuple(_random_elementary(rng, a, b) for a, b in sig.part_types())
    return GeneralSymbol(sig, parts)


def _random_unit(field: Field, m: int, rng: np.random.Generator):
    arr = np.zeros((m, 4))
    arr[:, : field.real_dim] = rng.standard_normal((m, field.real_dim))
    nrm = float(np.sqrt(np.sum(arr ** 2)))
    return KVector(field, arr / nrm)


# ---------------------------------------------------------------------------
# combinatorial suites (exhaustive)

@lru_cache(maxsize=None)
def _partitions_in_box(rows: int, width: int, total: int) -> int:
    """Number of partitions of `total` with at most `rows` parts, each at
    most `width` (counted recursively on the largest part)."""
    if total == 0:
        return 1
    if rows == 0 or width == 0:
        return 0
    return sum(
        _partitions_in_box(rows - 1, part, total - part)
        for part in range(1, min(width, total) + 1)
    )


def _suite_counting(cfg: SuiteConfig) -> CheckRecord:
    rec = CheckRecord("counting")
    for m in range(1, 9):
        for n in range(1, m + 1):
            syms = enumerate_elementary(n, m)
            rec.observe(len(syms) == math.comb(m, n))
            by_dim: dict[int, int] = {}
            for s in syms:
                by_dim[s.dim()] = by_dim.get(s.dim(), 0) + 1
            for d in range(n * (m - n) + 1):
                rec.observe(by_dim.get(d, 0) == _partitions_in_box(n, m - n, d))
    return rec


def _suite_decomposition(cfg: SuiteConfig) -> CheckRecord:
    rec = CheckRecord("decomposition")
    for sig in _signatures_up_to(cfg.max_dim):
        for sym in enumerate_general(sig):
            rec.observe(d_decomposition(sym) == sym.dim())
    return rec


def _suite_boundary_order(cfg: SuiteConfig) -> CheckRecord:
    rec = CheckRecord("boundary_order")
    for sig in _signatures_up_to(min(cfg.max_dim, MAX_AMBIENT_BOUNDARY_ORDER)):
        syms = list(enumerate_general(sig))
        dims = [s.dim() for s in syms]
        for i, tau in enumerate(syms):
            for j, sigma in enumerate(syms):
                if is_boundary_candidate(tau, sigma):
                    rec.observe(dims[i] < dims[j])
    return rec


def _suite_factorization(cfg: SuiteConfig) -> CheckRecord:
    rec = CheckRecord("factorization")
    for sig in _signatures_up_to(cfg.max_dim):
        for sym in enumerate_general(sig):
            rec.observe(factor_tower(composed_tower(sym), sig) == sym)
    return rec


def _suite_correspondence(cfg: SuiteConfig) -> CheckRecord:
    rec = CheckRecord("correspondence")
    for sig in _signatures_up_to(cfg.max_dim):
        pc = cell_polynomial(sig, Field.COMPLEX)
        ph = cell_polynomial(sig, Field.QUATERNION)
        stretched = [0] * (2 * pc.degree + 1)
        for j, c in enumerate(pc.coefficients):
            stretched[2 * j] = c
        rec.observe(list(ph.coefficients) == stretched)
        rec.observe(
            euler_characteristic(sig, Field.COMPLEX)
            == euler_characteristic(sig, Field.QUATERNION)
        )
        rec.observe(pc.total_cells() == sig.count_symbols())
    return rec


def _suite_dimensions(cfg: SuiteConfig) -> CheckRecord:
    rec = CheckRecord("dimensions")
    for sig in _signatures_up_to(cfg.max_dim):
        top_dim = top_symbol(sig).dim()
        max_dim = max(s.dim() for s in enumerate_general(sig))
        for fld in cfg.fields:
            value = manifold_dimension(sig, fld)
            rec.observe(value == fld.real_dim * top_dim)
            rec.observe(value == fld.real_dim * max_dim)
            rec.observe(value == cell_polynomial(sig, fld).degree)
    return rec


# ---------------------------------------------------------------------------
# numerical suites (seeded trials)

def _functoriality_trial(field: Field, entropy: tuple, max_dim: int):
    rng = np.random.default_rng(entropy)
    big = int(rng.integers(2, max_dim + 1))
    mid = int(rng.integers(1, big + 1))
    small = int(rng.integers(1, mid + 1))
    sigma_y = _random_elementary(rng, mid, big)
    basis_y = geometry.sample_V_sigma(field, sigma_y, rng)
    inner_map = geometry.sample_V_sigma(field, _random_elementary(rng, small, mid), rng)
    basis_x = compose_maps(basis_y, inner_map)
    x, y = span(basis_x), span(basis_y)
    sym_xz = geometry.schubert_symbol_subspace(x)
    sym_yz = geometry.schubert_symbol_subspace(y)
    frame = geometry.canonical_representative(y).entries
    adapted = Subspace(StiefelElement(field, express_in_frame(basis_x.entries, frame)))
    sym_xy = geometry.schubert_symbol_subspace(adapted)
    ok = compose(sym_yz, sym_xy) == sym_xz
    residual = projection_residual(basis_x.entries, basis_y.entries)
    return ok, residual


def _suite_functoriality(cfg: SuiteConfig) -> CheckRecord:
    rec = CheckRecord("functoriality")
    for fi, fld in enumerate(cfg.fields):
        for t in range(cfg.trials):
            entropy = _entropy(cfg, "functoriality", fi, t)
            try:
                ok, residual = _functoriality_trial(fld, entropy, cfg.max_dim)
            except SchubertError:
                ok, residual = False, None
            rec.observe(ok, residual, entropy)
    return rec


def _roundtrip_trial(field: Field, entropy: tuple):
    rng = np.random.default_rng(entropy)
    n = int(rng.integers(1, 5))
    m = int(rng.integers(n, 8))
    sigma = _random_elementary(rng, n, m)
    sample = geometry.sample_V_sigma(field, sigma, rng)
    x = span(sample)
    ok = geometry.schubert_symbol_subspace(x) == sigma
    rep = geometry.canonical_representative(x)
    residual = rep.frobenius_distance(sample)
    return ok and residual <= 1e-9, residual


def _suite_roundtrip(cfg: SuiteConfig) -> CheckRecord:
    rec = CheckRecord("roundtrip")
    for fi, fld in enumerate(cfg.fields):
        for t in range(cfg.trials):
            entropy = _entropy(cfg, "roundtrip", fi, t)
            try:
                ok, residual = _roundtrip_trial(fld, entropy)
            except SchubertError:
                ok, residual = False, None
            rec.observe(ok, residual, entropy)
    return rec


def _towers_trial(field: Field, entropy: tuple, max_dim: int):
    rng = np.random.default_rng(entropy)
    sig = _random_signature(rng, max_dim)
    sym = _random_general(rng, sig)
    point = geometry.sample_flag_stiefel(field, sym, rng)
    tower = composed_tower(sym)
    ok = True
    residual = 0.0
    for u, level in zip(point.maps, tower):
        ok = ok and geometry.membership_V_sigma(u, level)
        ok = ok and geometry.schubert_symbol_subspace(span(u)) == level
    for inner, outer in zip(point.maps, point.maps[1:]):
        residual = max(residual, projection_residual(inner.entries, outer.entries))
    ok = ok and geometry.schubert_symbol_flag(point.to_flag()) == sym
    return ok, residual


def _suite_towers(cfg: SuiteConfig) -> CheckRecord:
    rec = CheckRecord("towers")
    for fi, fld in enumerate(cfg.fields):
        for t in range(cfg.trials):
            entropy = _entropy(cfg, "towers", fi, t)
            try:
                ok, residual = _towers_trial(fld, entropy, cfg.max_dim)
            except SchubertError:
                ok, residual = False, None
            rec.observe(ok, residual, entropy)
    return rec


def _boundary_trial(field: Field, entropy: tuple, max_dim: int):
    rng = np.random.default_rng(entropy)
    # elementary half
    n = int(rng.integers(1, 5))
    m = int(rng.integers(n + 1, 8))
    sigma = _random_elementary(rng, n, m)
    while sigma.dim() == 0:
        sigma = _random_elementary(rng, n, m)
    u = geometry.sample_closure_boundary(field, sigma, rng)
    ok = not geometry.membership_V_sigma(u, sigma)
    ok = ok and geometry.membership_V_sigma(u, sigma, closed=True)
    sym_y = geometry.schubert_symbol_subspace(span(u))
    ok = ok and sym_y.lt(sigma) and sym_y.dim() < sigma.dim()
    # flag half: degrade one factor with positive dimension
    sig = _random_signature(rng, max_dim)
    gen = _random_general(rng, sig)
    while gen.dim() == 0:
        gen = _random_general(rng, sig)
    eligible = [i for i, part in enumerate(gen.parts) if part.dim() > 0]
    idx = int(eligible[rng.integers(len(eligible))])
    factors = []
    for i, part in enumerate(gen.parts):
        if i == idx:
            factors.append(geometry.sample_closure_boundary(field, part, rng))
        else:
            factors.append(geometry.sample_V_sigma(field, part, rng))
    point = geometry.assemble_flag(field, factors, sig)
    tau = geometry.schubert_symbol_flag(point.to_flag())
    ok = ok and tau != gen
    ok = ok and is_boundary_candidate(tau, gen)
    ok = ok and tau.dim() < gen.dim()
    return ok, None


def _suite_boundary(cfg: SuiteConfig) -> CheckRecord:
    rec = CheckRecord("boundary")
    for fi, fld in enumerate(cfg.fields):
        for t in range(cfg.trials):
            entropy = _entropy(cfg, "boundary", fi, t)
            try:
                ok, residual = _boundary_trial(fld, entropy, cfg.max_dim)
            except SchubertError:
                ok, residual = False, None
            rec.observe(ok, residual, entropy)
    return rec


def _rotation_trial(field: Field, entropy: tuple):
    rng = np.random.default_rng(entropy)
    m = int(rng.integers(2, 9))
    u = _random_unit(field, m, rng)
    pairing_norm = 0.0
    while pairing_norm < 1e-3:
        w = _random_unit(field, m, rng)
        pairing = inner_product(w, u)
        pairing_norm = abs(pairing)
    phase = KScalar(field, tuple(c / pairing_norm for c in pairing.conj().components))
    v = w.left_mul(phase)
    x = _random_unit(field, m, rng)
    y = _random_unit(field, m, rng)
    tx = geometry.rotation_apply(u, v, x)
    ty = geometry.rotation_apply(u, v, y)
    iso = abs(inner_product(tx, ty) - inner_product(x, y))
    maps_to = (geometry.rotation_apply(u, v, u) - v).norm()
    residual = max(iso, maps_to)
    return residual <= 1e-12, residual


def _suite_rotation(cfg: SuiteConfig) -> CheckRecord:
    rec = CheckRecord("rotation")
    for fi, fld in enumerate(cfg.fields):
        for t in range(cfg.trials):
            entropy = _entropy(cfg, "rotation", fi, t)
            try:
                ok, residual = _rotation_trial(fld, entropy)
            except SchubertError:
                ok, residual = False, None
            rec.observe(ok, residual, entropy)
    return rec


_SUITES = {
    "counting": _suite_counting,
    "decomposition": _suite_decomposition,
    "boundary_order": _suite_boundary_order,
    "factorization": _suite_factorization,
    "correspondence": _suite_correspondence,
    "dimensions": _suite_dimensions,
    "functoriality": _suite_functoriality,
    "roundtrip": _suite_roundtrip,
    "towers": _suite_towers,
    "boundary": _suite_boundary,
    "rotation": _suite_rotation,
}


def run_suites(cfg: SuiteConfig) -> SuiteReport:
    """Run the configured suites; deterministic given the config."""
    report = SuiteReport(cfg)
    for name in SUITE_ORDER:
        if name in cfg.suites:
            report.records.append(_SUITES[name](cfg))
    return report


def report_to_json_str(report: SuiteReport) -> str:
    return json.dumps(report.to_json(), indent=2)
