"""Command-line front door.

Subcommands: cells, poincare, euler, dim, symbol, sample, poset, verify.
Exit codes: 0 success, 1 malformed input, 2 verification failure.
"""

from __future__ import annotations

import json
import sys

import click

from .cells import cell_polynomial, euler_characteristic, export_poset, manifold_dimension
from .errors import SchubertError
from .fields import FIELDS, Field
from .geometry import sample_flag_cell, schubert_symbol_flag
from .jsonio import flag_from_json, flag_to_json
from .symbols import ElementarySymbol, FlagSignature, GeneralSymbol, enumerate_general
from .verifier import SUITE_ORDER, SuiteConfig, run_suites


def _parse_signature(text: str, ambient: int) -> FlagSignature:
    try:
        dims = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise click.UsageError(f"cannot parse signature {text!r}") from exc
    try:
        return FlagSignature(dims, ambient)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _parse_symbol(text: str, sig: FlagSignature) -> GeneralSymbol:
    """Compact symbol syntax: colon-separated parts, comma-separated values,
    e.g. "2:2,3" for the parts (2) and (2, 3)."""
    chunks = text.split(":")
    types = sig.part_types()
    if len(chunks) != len(types):
        raise click.UsageError(
            f"symbol has {len(chunks)} parts but signature needs {len(types)}"
        )
    parts = []
    for chunk, (_, cod) in zip(chunks, types):
        try:
            values = tuple(int(v) for v in chunk.split(","))
            parts.append(ElementarySymbol(values, cod))
        except ValueError as exc:
            raise click.UsageError(f"bad symbol part {chunk!r}: {exc}") from exc
    try:
        return GeneralSymbol(sig, tuple(parts))
    except SchubertError as exc:
        raise click.UsageError(str(exc)) from exc


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w") as handle:
            handle.write(text + "\n")
    else:
        click.echo(text)


def _summary_json(field: Field, sig: FlagSignature) -> dict:
    poly = cell_polynomial(sig, field)
    return {
        "field": field.letter,
        "signature": list(sig.dims),
        "ambient": sig.ambient,
        "coefficients": list(poly.coefficients),
        "euler": euler_characteristic(sig, field),
        "dimension": manifold_dimension(sig, field),
    }


field_option = click.option(
    "--field", "field_letter", default="R", show_default=True,
    type=click.Choice([f.letter for f in FIELDS], case_sensitive=False),
    help="ground field",
)
signature_option = click.option(
    "--signature", required=True,
    help="comma-separated flag signature, e.g. 1,2 (0 and the ambient "
         "dimension are implied)",
)
ambient_option = click.option("--ambient", required=True, type=int,
                              help="ambient dimension")
format_option = click.option(
    "--format", "fmt", default="text", show_default=True,
    type=click.Choice(["text", "json"]),
)
output_option = click.option("--output", default=None, help="write to a file "
                             "instead of stdout")


@click.group()
def cli():
    """Schubert cells on Grassmann and flag manifolds over R, C and H."""


@cli.command("cells")
@field_option
@signature_option
@ambient_option
@format_option
@output_option
def cells_cmd(field_letter, signature, ambient, fmt, output):
    """List every cell of a signature with its real dimension."""
    field = Field.from_letter(field_letter)
    sig = _parse_signature(signature, ambient)
    rows = [
        {"parts": [list(p.values) for p in sym.parts],
         "dim": field.real_dim * sym.dim()}
        for sym in enumerate_general(sig)
    ]
    if fmt == "json":
        payload = {
            "field": field.letter,
            "signature": list(sig.dims),
            "ambient": sig.ambient,
            "cells": rows,
        }
        _emit(json.dumps(payload, indent=2), output)
    else:
        lines = [
            "(" + ")(".join(",".join(map(str, p)) for p in row["parts"]) + ")"
            + f"  dim {row['dim']}"
            for row in rows
        ]
        _emit("\n".join(lines), output)


@cli.command("poincare")
@field_option
@signature_option
@ambient_option
@format_option
@output_option
def poincare_cmd(field_letter, signature, ambient, fmt, output):
    """Cell-count polynomial coefficients by real dimension (the Poincaré
    polynomial over C/H)."""
    field = Field.from_letter(field_letter)
    sig = _parse_signature(signature, ambient)
    if fmt == "json":
        _emit(json.dumps(_summary_json(field, sig), indent=2), output)
    else:
        poly = cell_polynomial(sig, field)
        _emit(json.dumps(list(poly.coefficients)), output)


@cli.command("euler")
@field_option
@signature_option
@ambient_option
@format_option
@output_option
def euler_cmd(field_letter, signature, ambient, fmt, output):
    """Euler characteristic (alternating sum of cell counts)."""
    field = Field.from_letter(field_letter)
    sig = _parse_signature(signature, ambient)
    if fmt == "json":
        _emit(json.dumps(_summary_json(field, sig), indent=2), output)
    else:
        _emit(str(euler_characteristic(sig, field)), output)


@cli.command("dim")
@field_option
@signature_option
@ambient_option
@format_option
@output_option
def dim_cmd(field_letter, signature, ambient, fmt, output):
    """Real manifold dimension of the flag manifold."""
    field = Field.from_letter(field_letter)
    sig = _parse_signature(signature, ambient)
    if fmt == "json":
        _emit(json.dumps(_summary_json(field, sig), indent=2), output)
    else:
        _emit(str(manifold_dimension(sig, field)), output)


@cli.command("symbol")
@click.option("--input", "input_path", required=True,
              help="flag file (see README for the JSON schema)")
@format_option
@output_option
def symbol_cmd(input_path, fmt, output):
    """Schubert symbol of a concrete flag read from a JSON file."""
    with open(input_path) as handle:
        payload = json.load(handle)
    flag = flag_from_json(payload)
    sym = schubert_symbol_flag(flag)
    if fmt == "json":
        _emit(json.dumps(sym.to_json(), indent=2), output)
    else:
        parts = ", ".join("(" + ",".join(map(str, p.values)) + ")" for p in sym.parts)
        _emit(f"({parts})", output)


@cli.command("sample")
@field_option
@signature_option
@ambient_option
@click.option("--symbol", "symbol_text", required=True,
              help='cell to sample, colon-separated parts, e.g. "2:2,3"')
@click.option("--seed", default=0, show_default=True, type=int)
@output_option
def sample_cmd(field_letter, signature, ambient, symbol_text, seed, output):
    """Sample a random flag from a given cell and emit it as a flag file."""
    field = Field.from_letter(field_letter)
    sig = _parse_signature(signature, ambient)
    sym = _parse_symbol(symbol_text, sig)
    flag = sample_flag_cell(field, sym, seed)
    _emit(json.dumps(flag_to_json(flag), indent=2), output)


@cli.command("poset")
@signature_option
@ambient_option
@click.option("--max-cells", default=10_000, show_default=True, type=int,
              help="refuse signatures with more cells than this")
@output_option
def poset_cmd(signature, ambient, max_cells, output):
    """DOT digraph of the boundary-candidate order on a signature's cells."""
    sig = _parse_signature(signature, ambient)
    _emit(export_poset(sig, max_cells=max_cells), output)


@cli.command("verify")
@click.option("--suite", "suites", default="all", show_default=True,
              help='comma-separated suite names, or "all"; known: '
                   + ", ".join(SUITE_ORDER))
@click.option("--seed", default=42, show_default=True, type=int)
@click.option("--trials", default=1000, show_default=True, type=int)
@click.option("--fields", "fields_text", default="R,C,H", show_default=True,
              help="comma-separated subset of R,C,H for the numerical suites")
@click.option("--max-dim", default=6, show_default=True, type=int)
@format_option
@output_option
def verify_cmd(suites, seed, trials, fields_text, max_dim, fmt, output):
    """Run the property suites; exits 2 if any check fails."""
    if suites == "all":
        names = SUITE_ORDER
    else:
        names = tuple(s.strip() for s in suites.split(","))
    fields = tuple(Field.from_letter(f.strip()) for f in fields_text.split(","))
    try:
        cfg = SuiteConfig(suites=names, seed=seed, trials=trials,
                          fields=fields, max_dim=max_dim)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    report = run_suites(cfg)
    if fmt == "json":
        _emit(json.dumps(report.to_json(), indent=2), output)
    else:
        _emit(report.to_table(), output)
    return 0 if report.passed else 2


def main(argv=None) -> int:
    """Entry point with the documented exit codes (1 = malformed input,
    2 = verification failure)."""
    try:
        result = cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except (SchubertError, ValueError, OSError, json.JSONDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return int(result) if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(main())
