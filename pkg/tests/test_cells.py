import pytest

from schubertcells import (
    CellPolynomial,
    Field,
    FlagSignature,
    all_signatures,
    betti_numbers,
    cell_polynomial,
    enumerate_general,
    euler_characteristic,
    export_poset,
    manifold_dimension,
)

from oracles import box_partitions

R, C, H = Field.REAL, Field.COMPLEX, Field.QUATERNION


def brute_polynomial(sig, field):
    """Independent route: enumerate every symbol and bin by real dimension."""
    dims = [field.real_dim * s.dim() for s in enumerate_general(sig)]
    coeffs = [0] * (max(dims) + 1)
    for d in dims:
        coeffs[d] += 1
    return tuple(coeffs)


def test_cell_polynomial_examples():
    assert cell_polynomial(FlagSignature((1,), 2), C).coefficients == (1, 0, 1)
    assert cell_polynomial(FlagSignature((1, 2), 3), C).coefficients == (1, 0, 2, 0, 2, 0, 1)
    assert cell_polynomial(FlagSignature((2,), 4), C).coefficients == (1, 0, 1, 0, 2, 0, 1, 0, 1)


def test_cell_polynomial_matches_enumeration():
    for n in range(2, 6):
        for sig in all_signatures(n):
            for field in (R, C, H):
                assert cell_polynomial(sig, field).coefficients == brute_polynomial(sig, field)


def test_cell_polynomial_total_and_degree():
    for n in range(2, 7):
        for sig in all_signatures(n):
            poly = cell_polynomial(sig, C)
            assert poly.total_cells() == sig.count_symbols()
            assert poly.evaluate(1) == poly.total_cells()
            assert poly.degree == manifold_dimension(sig, C)


def test_gaussian_binomial_coefficients_for_grassmannians():
    # q = 1: over C the coefficient of t^(2d) counts partitions in an
    # n x (m - n) box
    for n, m in [(1, 4), (2, 4), (2, 5), (3, 6)]:
        poly = cell_polynomial(FlagSignature((n,), m), C)
        for d in range(n * (m - n) + 1):
            assert poly.coefficient(2 * d) == len(box_partitions(n, m - n, d))
            assert poly.coefficient(2 * d + 1) == 0


def test_complex_quaternion_correspondence_exhaustive():
    for n in range(2, 7):
        for sig in all_signatures(n):
            pc = cell_polynomial(sig, C)
            ph = cell_polynomial(sig, H)
            assert ph.degree == 2 * pc.degree
            for j, c in enumerate(pc.coefficients):
                assert ph.coefficient(2 * j) == c
            for j in range(ph.degree + 1):
                if j % 2 == 1 or (j // 2) % 2 == 1:
                    assert ph.coefficient(j) == 0
            assert euler_characteristic(sig, C) == euler_characteristic(sig, H)


def test_betti_numbers():
    assert betti_numbers(FlagSignature((1,), 2), C) == (1, 0, 1)
    got = betti_numbers(FlagSignature((1, 2), 3), H)
    assert got == (1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 1)
    with pytest.raises(ValueError):
        betti_numbers(FlagSignature((1, 2), 3), R)


def test_euler_examples():
    assert euler_characteristic(FlagSignature((2,), 4), C) == 6
    assert euler_characteristic(FlagSignature((1, 2), 3), R) == 0  # 1 - 2 + 2 - 1
    sig = FlagSignature((1, 3), 5)
    assert euler_characteristic(sig, C) == euler_characteristic(sig, H)


def test_manifold_dimension_examples():
    assert manifold_dimension(FlagSignature((2,), 4), C) == 8
    assert manifold_dimension(FlagSignature((1, 2), 3), R) == 3
    assert manifold_dimension(FlagSignature((1, 2), 3), H) == 12


def test_manifold_dimension_closed_form_cross_checks():
    from schubertcells import top_symbol

    for n in range(2, 7):
        for sig in all_signatures(n):
            for field in (R, C, H):
                value = manifold_dimension(sig, field)
                assert value == field.real_dim * top_symbol(sig).dim()
                assert value == field.real_dim * max(
                    s.dim() for s in enumerate_general(sig)
                )


def test_cell_polynomial_validation():
    with pytest.raises(ValueError):
        CellPolynomial((1, 2, 0))
    with pytest.raises(ValueError):
        CellPolynomial(())
    with pytest.raises(ValueError):
        CellPolynomial((1, -1, 2))
    assert str(CellPolynomial((1, 0, 2, 1))) == "1 + 2t^2 + t^3"


def test_export_poset_two_cells():
    dot = export_poset(FlagSignature((1,), 2))
    assert dot.startswith("digraph")
    assert dot.count("label=") == 2
    assert dot.count("->") == 1


def test_export_poset_flags_c3():
    dot = export_poset(FlagSignature((1, 2), 3))
    assert dot.count("label=") == 6
    edges = [line for line in dot.splitlines() if "->" in line]
    sources = {e.split("->")[0].strip() for e in edges}
    targets = {e.split("->")[1].strip(" ;") for e in edges}
    # unique sink (the zero cell receives only) and unique source (the top)
    only_sources = sources - targets
    only_targets = targets - sources
    assert len(only_sources) == 1
    assert len(only_targets) == 1


def test_export_poset_is_acyclic():
    sig = FlagSignature((1, 2), 4)
    dot = export_poset(sig)
    syms = list(enumerate_general(sig))
    dims = {f"s{i}": s.dim() for i, s in enumerate(syms)}
    for line in dot.splitlines():
        if "->" in line:
            a, b = line.strip(" ;").split(" -> ")
            assert dims[a.strip()] > dims[b.strip()]


def test_export_poset_cap():
    with pytest.raises(ValueError):
        export_poset(FlagSignature((1, 2), 3), max_cells=5)
