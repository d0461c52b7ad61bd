"""Combinatorics of elementary and general Schubert symbols.

An elementary symbol of type (n, m) is a strictly increasing map
{1..n} -> {1..m}, stored as its value tuple.  A general symbol is a tuple of
elementary symbols chained along a flag signature (n_1 < ... < n_q < n):
part k has type (n_k, n_{k+1}) and the last part lands in the ambient
dimension.  Everything here is exact integer combinatorics; the geometry
module attaches these labels to actual subspaces and flags.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CoherenceError, ShapeMismatchError


@dataclass(frozen=True)
class ElementarySymbol:
    """Strictly increasing map {1..n} -> {1..target}, stored 1-based."""

    values: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if not self.values:
            raise ValueError("symbol needs at least one value")
        if self.values[0] < 1 or self.values[-1] > self.target:
            raise ValueError(f"values {self.values} outside 1..{self.target}")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"values {self.values} not strictly increasing")

    @classmethod
    def identity(cls, n: int, target: int | None = None) -> "ElementarySymbol":
        return cls(tuple(range(1, n + 1)), n if target is None else target)

    @property
    def source(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __call__(self, k: int) -> int:
        """1-based evaluation."""
        return self.values[k - 1]

    def image(self) -> frozenset[int]:
        return frozenset(self.values)

    def dim(self) -> int:
        return sum(v - k for k, v in enumerate(self.values, start=1))

    def leq(self, other: "ElementarySymbol") -> bool:
        """Componentwise partial order: self(k) <= other(k) for all k."""
        self._check_type(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def lt(self, other: "ElementarySymbol") -> bool:
        return self.leq(other) and self.values != other.values

    def _check_type(self, other):
        if not isinstance(other, ElementarySymbol):
            raise TypeError(f"expected ElementarySymbol, got {type(other).__name__}")
        if (self.source, self.target) != (other.source, other.target):
            raise ShapeMismatchError(
                f"type mismatch: ({self.source},{self.target}) vs "
                f"({other.source},{other.target})"
            )

    def to_json(self) -> list[int]:
        return list(self.values)

    def __repr__(self):
        return f"ElementarySymbol({self.values}, target={self.target})"


def enumerate_elementary(n: int, m: int) -> list[ElementarySymbol]:
    """All C(m, n) symbols of type (n, m) in lexicographic order of values."""
    if n < 1:
        raise ValueError(f"domain size must be >= 1, got {n}")
    if n > m:
        return []
    return [ElementarySymbol(vals, m) for vals in itertools.combinations(range(1, m + 1), n)]


def dim_elementary(sym: ElementarySymbol) -> int:
    return sym.dim()


def leq_elementary(a: ElementarySymbol, b: ElementarySymbol) -> bool:
    return a.leq(b)


def compose(outer: ElementarySymbol, inner: ElementarySymbol) -> ElementarySymbol:
    """(outer∘inner)(k) = outer(inner(k)); needs inner's codomain to equal
    outer's domain."""
    if inner.target != outer.source:
        raise ShapeMismatchError(
            f"cannot compose: inner lands in {inner.target} but outer starts "
            f"from {outer.source}"
        )
    return ElementarySymbol(tuple(outer.values[i - 1] for i in inner.values), outer.target)


@dataclass(frozen=True)
class FlagSignature:
    """Proper flag signature 1 <= n_1 < ... < n_q < ambient (0 and the
    ambient dimension are omitted)."""

    dims: tuple[int, ...]
    ambient: int

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if not self.dims:
            raise ValueError("signature needs at least one stage")
        if self.dims[0] < 1:
            raise ValueError(f"stages must be >= 1, got {self.dims[0]}")
        if any(a >= b for a, b in zip(self.dims, self.dims[1:])):
            raise ValueError(f"stages {self.dims} not strictly increasing")
        if self.dims[-1] >= self.ambient:
            raise ValueError(
                f"last stage {self.dims[-1]} must be below ambient {self.ambient}"
            )

    @classmethod
    def complete(cls, ambient: int) -> "FlagSignature":
        return cls(tuple(range(1, ambient)), ambient)

    @property
    def length(self) -> int:
        return len(self.dims)

    def part_types(self) -> list[tuple[int, int]]:
        """(domain, codomain) of each symbol slot; the last lands in ambient."""
        chain = self.dims + (self.ambient,)
        return list(zip(chain[:-1], chain[1:]))

    def count_symbols(self) -> int:
        return math.prod(math.comb(b, a) for a, b in self.part_types())

    def __repr__(self):
        return f"FlagSignature({self.dims}, ambient={self.ambient})"


def all_signatures(ambient: int) -> list[FlagSignature]:
    """Every proper flag signature in a given ambient dimension."""
    sigs = []
    for r in range(1, ambient):
        for dims in itertools.combinations(range(1, ambient), r):
            sigs.append(FlagSignature(dims, ambient))
    return sigs


@dataclass(frozen=True)
class GeneralSymbol:
    """Tuple of elementary symbols chained along a flag signature."""

    signature: FlagSignature
    parts: tuple[ElementarySymbol, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        types = self.signature.part_types()
        if len(self.parts) != len(types):
            raise ShapeMismatchError(
                f"signature has {len(types)} slots but got {len(self.parts)} parts"
            )
        for part, (dom, cod) in zip(self.parts, types):
            if (part.source, part.target) != (dom, cod):
                raise ShapeMismatchError(
                    f"part of type ({part.source},{part.target}) does not fit "
                    f"slot ({dom},{cod})"
                )

    def dim(self) -> int:
        return sum(p.dim() for p in self.parts)

    def leq(self, other: "GeneralSymbol") -> bool:
        if other.signature != self.signature:
            raise ShapeMismatchError("signature mismatch")
        return all(a.leq(b) for a, b in zip(self.parts, other.parts))

    def to_json(self) -> dict:
        return {
            "signature": list(self.signature.dims),
            "ambient": self.signature.ambient,
            "parts": [p.to_json() for p in self.parts],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GeneralSymbol":
        sig = FlagSignature(tuple(obj["signature"]), int(obj["ambient"]))
        types = sig.part_types()
        parts = tuple(
            ElementarySymbol(tuple(vals), cod)
            for vals, (_, cod) in zip(obj["parts"], types)
        )
        return cls(sig, parts)

    def __repr__(self):
        vals = ", ".join(str(p.values) for p in self.parts)
        return f"GeneralSymbol({vals}; ambient={self.signature.ambient})"


def enumerate_general(sig: FlagSignature) -> Iterator[GeneralSymbol]:
    """All general symbols of a signature, lazily: the cartesian product of
    the per-slot enumerations (counts grow as products of binomials)."""
    pools = [enumerate_elementary(a, b) for a, b in sig.part_types()]
    for combo in itertools.product(*pools):
        yield GeneralSymbol(sig, combo)


def dim_general(sym: GeneralSymbol) -> int:
    return sym.dim()


def composed_tower(sym: GeneralSymbol) -> list[ElementarySymbol]:
    """The chain c_k = last∘...∘(k+1)∘k of compositions, one per part; every
    c_k is an elementary symbol into the ambient dimension."""
    parts = sym.parts
    tower = [parts[-1]]
    for part in reversed(parts[:-1]):
        tower.append(compose(tower[-1], part))
    tower.reverse()
    return tower


def factor_tower(tower: Sequence[ElementarySymbol], sig: FlagSignature) -> GeneralSymbol:
    """Inverse of `composed_tower`: recover the parts from a coherent chain
    of ambient symbols (Im c_k contained in Im c_{k+1})."""
    types = sig.part_types()
    if len(tower) != len(types):
        raise ShapeMismatchError(
            f"tower has {len(tower)} levels but signature needs {len(types)}"
        )
    for level, (dom, _) in zip(tower, types):
        if level.source != dom or level.target != sig.ambient:
            raise ShapeMismatchError(
                f"tower level of type ({level.source},{level.target}) does not "
                f"match slot domain {dom} / ambient {sig.ambient}"
            )
    parts = []
    for k in range(len(tower) - 1):
        position = {v: j for j, v in enumerate(tower[k + 1].values, start=1)}
        try:
            vals = tuple(position[v] for v in tower[k].values)
        except KeyError as exc:
            raise CoherenceError("not a coherent tower") from exc
        parts.append(ElementarySymbol(vals, types[k][1]))
    parts.append(tower[-1])
    return GeneralSymbol(sig, tuple(parts))


def d_decomposition(sym: GeneralSymbol) -> int:
    """Dimension recomputed from the composed tower: the displacement of the
    fully composed symbol plus, for each later level, the displacement over
    the complement of the previous part's image."""
    tower = composed_tower(sym)
    n1 = sym.parts[0].source
    total = sum(tower[0](k) - k for k in range(1, n1 + 1))
    for j in range(1, len(sym.parts)):
        prev_image = sym.parts[j - 1].image()
        dom = sym.parts[j].source
        total += sum(tower[j](k) - k for k in range(1, dom + 1) if k not in prev_image)
    return total


def is_boundary_candidate(tau: GeneralSymbol, sigma: GeneralSymbol) -> bool:
    """Necessary conditions for the tau-cell to meet the boundary of the
    sigma-cell: composed towers componentwise <= with strict inequality at
    some level.  Not claimed sufficient for actual incidence."""
    if tau.signature != sigma.signature:
        raise ShapeMismatchError("signature mismatch")
    tower_t = composed_tower(tau)
    tower_s = composed_tower(sigma)
    if not all(t.leq(s) for t, s in zip(tower_t, tower_s)):
        return False
    return any(t.values != s.values for t, s in zip(tower_t, tower_s))


def top_symbol(sig: FlagSignature) -> GeneralSymbol:
    """The unique symbol of maximal dimension: each part sits as high as its
    codomain allows."""
    parts = []
    for dom, cod in sig.part_types():
        parts.append(ElementarySymbol(tuple(cod - dom + i for i in range(1, dom + 1)), cod))
    return GeneralSymbol(sig, tuple(parts))
