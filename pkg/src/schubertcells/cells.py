"""Enumerative output of the cell structure: cell-count polynomials indexed
by real dimension, Betti numbers over C/H, Euler characteristics, manifold
dimensions, and a DOT export of the boundary-candidate poset.

Over C and H every cell is even-dimensional, so the cell-count polynomial is
the Poincaré polynomial and its coefficients are the Betti numbers.  Over R
the counts are still valid cells but carry no homology claim, so the Betti
accessor refuses the real field.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field
from .symbols import (
    FlagSignature,
    composed_tower,
    enumerate_elementary,
    enumerate_general,
)


@dataclass(frozen=True)
class CellPolynomial:
    """Integer polynomial in t whose coefficient at t^j counts the cells of
    real dimension j; evaluating at 1 gives the total cell count."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if not self.coefficients:
            raise ValueError("polynomial needs at least one coefficient")
        if self.coefficients[-1] == 0 and len(self.coefficients) > 1:
            raise ValueError("trailing coefficient must be nonzero")
        if any(c < 0 for c in self.coefficients):
            raise ValueError("cell counts cannot be negative")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def total_cells(self) -> int:
        return sum(self.coefficients)

    def coefficient(self, j: int) -> int:
        return self.coefficients[j] if 0 <= j <= self.degree else 0

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                base = "t" if j == 1 else f"t^{j}"
                terms.append(base if c == 1 else f"{c}{base}")
        return " + ".join(terms) if terms else "0"


def _dim_distribution(n: int, m: int) -> list[int]:
    """Counts of elementary symbols of type (n, m) by dimension."""
    counts = [0] * (n * (m - n) + 1)
    for sym in enumerate_elementary(n, m):
        counts[sym.dim()] += 1
    return counts


def _convolve(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def cell_polynomial(sig: FlagSignature, field: Field) -> CellPolynomial:
    """Cell counts by real dimension: the per-slot dimension distributions
    convolve (dimensions add across slots) and the result is stretched by the
    field's real dimension."""
    dist = [1]
    for dom, cod in sig.part_types():
        dist = _convolve(dist, _dim_distribution(dom, cod))
    coeffs = [0] * ((len(dist) - 1) * field.real_dim + 1)
    for d, c in enumerate(dist):
        coeffs[d * field.real_dim] = c
    return CellPolynomial(tuple(coeffs))


def betti_numbers(sig: FlagSignature, field: Field) -> tuple[int, ...]:
    """Betti numbers read off the cell counts; only valid over C and H where
    all cells are even-dimensional and the boundary maps vanish."""
    if field is Field.REAL:
        raise ValueError("Betti numbers not derivable from cell counts over ℝ")
    return cell_polynomial(sig, field).coefficients


def euler_characteristic(sig: FlagSignature, field: Field) -> int:
    """Alternating sum of cell counts; over C/H this equals the total cell
    count since every cell is even-dimensional."""
    return cell_polynomial(sig, field).evaluate(-1)


def manifold_dimension(sig: FlagSignature, field: Field) -> int:
    """Closed form for the manifold dimension:
    real_dim * ((n_1 n_2 + ... + n_{q-1} n_q + n_q n) - (n_1^2 + ... + n_q^2)),
    which equals the real dimension of the top cell."""
    chain = sig.dims + (sig.ambient,)
    cross = sum(a * b for a, b in zip(chain[:-1], chain[1:]))
    squares = sum(d * d for d in sig.dims)
    return field.real_dim * (cross - squares)


def export_poset(sig: FlagSignature, max_cells: int = 10_000) -> str:
    """DOT digraph of the boundary-candidate order on a signature's symbols:
    one node per symbol (labelled with its dimension), one edge per covering
    pair, drawn from the higher cell to the lower one."""
    total = sig.count_symbols()
    if total > max_cells:
        raise ValueError(f"{total} cells exceed the cap of {max_cells}")
    syms = list(enumerate_general(sig))
    towers = [tuple(level.values for level in composed_tower(s)) for s in syms]
    dims = [s.dim() for s in syms]

    def below(i: int, j: int) -> bool:
        """tower i strictly below tower j, componentwise."""
        ti, tj = towers[i], towers[j]
        ok = all(a <= b for la, lb in zip(ti, tj) for a, b in zip(la, lb))
        return ok and ti != tj

    related = {
        (i, j)
        for i in range(len(syms))
        for j in range(len(syms))
        if i != j and below(i, j)
    }
    lines = ["digraph schubert_poset {"]
    for idx, sym in enumerate(syms):
        label = "".join("(" + ",".join(map(str, p.values)) + ")" for p in sym.parts)
        lines.append(f'  s{idx} [label="{label} d={dims[idx]}"];')
    for i, j in sorted(related):
        if any((i, k) in related and (k, j) in related for k in range(len(syms))):
            continue  # not a covering pair
        lines.append(f"  s{j} -> s{i};")
    lines.append("}")
    return "\n".join(lines)
