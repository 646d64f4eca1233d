"""Command-line front end.

Subcommands compose through files: ``build`` turns a graph document into a
matrix document, ``check`` runs purity / PSD / discord batteries, ``gate``
applies a gate word to a state, and ``oracle`` estimates two-qubit discord
numerically.

Exit codes: 0 verdict true or success, 1 verdict false, 2 input error,
3 numerical validity error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .discord import (
    CertificateOutcome,
    CertificateReport,
    normalize_side,
    zero_discord_verdict,
)
from .gates import GateSyntaxError, PartialGateSpec, apply_gate, apply_partial_gate, parse_gate_word
from .graphs import (
    ConventionError,
    DensityOperator,
    NormalizationError,
    ValidityError,
    density_operator,
    laplacian,
    pure_by_component,
    pure_by_entries,
    resolve_convention,
)
from .io import (
    ParseError,
    document_kind,
    graph_document,  # noqa: F401  (re-exported for scripting convenience)
    matrix_document,
    parse_graph_document,
    parse_matrix_document,
    report_document,
)
from .linalg import (
    ContractViolation,
    DimensionError,
    Tolerance,
    is_hermitian,
    is_psd,
    maxnorm,
    psd_necessary_minors,
    psd_sufficient_split,
    purity,
)
from .oracle import discord_estimate

ORACLE_PASS_BOUND = 2e-3

INPUT_ERRORS = (ParseError, GateSyntaxError, ConventionError, DimensionError, OSError, ValueError)
VALIDITY_ERRORS = (ValidityError, NormalizationError, ContractViolation)


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def _read(path: str) -> str:
    return Path(path).read_text()


def _tol(args) -> Tolerance:
    return Tolerance(abs_eps=args.tol, rel_eps=args.tol)


def _structured(pairs: list[tuple[str, str]]) -> str:
    body = ", ".join(f'"{k}": {v}' for k, v in pairs)
    return "{" + body + "}\n"


def _print_report(report: CertificateReport, fmt: str) -> None:
    if fmt == "structured":
        sys.stdout.write(report_document(report))
        return
    print(f"verdict        {report.verdict}")
    print(f"measured_side  {report.measured_side}")
    print(f"convention     {report.convention or '-'}")
    for c in report.certificates:
        flag = "pass" if c.passed else "fail"
        print(f"  {c.name:<26} {flag:<5} residual {_fmt(c.residual)}")
    for note in report.notes:
        print(f"note: {note}")


def _load_state(path: str, tol: Tolerance, convention: str | None):
    """Return (graph_or_None, DensityOperator) from either document kind."""
    text = _read(path)
    kind = document_kind(text)
    if kind == "graph":
        g = parse_graph_document(text)
        return g, density_operator(g, convention, tol)
    m = parse_matrix_document(text)
    return None, DensityOperator.from_matrix(m, tol=tol)


def cmd_build(args) -> int:
    tol = _tol(args)
    g = parse_graph_document(_read(args.graph_file))
    conv = None if args.convention == "auto" else args.convention
    rho = density_operator(g, conv, tol)
    evals = np.linalg.eigvalsh(rho.matrix)
    if args.out:
        Path(args.out).write_text(matrix_document(rho.matrix))
    trace = float(rho.matrix.trace().real)
    if args.format == "structured":
        sys.stdout.write(
            _structured(
                [
                    ("trace", _fmt(trace)),
                    ("min_eigenvalue", _fmt(float(evals[0]))),
                    ("purity", _fmt(purity(rho.matrix))),
                    ("convention", f'"{rho.convention}"'),
                ]
            )
        )
    else:
        print(f"trace           {_fmt(trace)}")
        print(f"min_eigenvalue  {_fmt(float(evals[0]))}")
        print(f"purity          {_fmt(purity(rho.matrix))}")
        print(f"convention      {rho.convention}")
    return 0


def cmd_check(args) -> int:
    tol = _tol(args)
    conv = None if args.convention == "auto" else args.convention
    side = normalize_side(args.measured)

    if args.which == "discord":
        text = _read(args.file)
        if document_kind(text) == "graph":
            source = parse_graph_document(text)
            if conv is not None:
                source = replace(source, convention=conv)
        else:
            source = DensityOperator.from_matrix(parse_matrix_document(text), tol=tol)
        report = zero_discord_verdict(source, measured=side, tol=tol)
        _print_report(report, args.format)
        return 0 if report.verdict == "certified_zero" else 1

    if args.which == "pure":
        g, rho = _load_state(args.file, tol, conv)
        certs = [
            CertificateOutcome("entries_uniform", pure_by_entries(rho, tol), abs(purity(rho.matrix) - 1.0))
        ]
        if g is not None:
            certs.append(CertificateOutcome("component_uniform", pure_by_component(g, conv, tol), 0.0))
        certified = any(c.passed for c in certs)
        report = CertificateReport(
            verdict="certified_pure" if certified else "not_certified",
            certificates=tuple(certs),
            convention=rho.convention,
            measured_side=side,
            tolerance=tol,
        )
        _print_report(report, args.format)
        return 0 if certified else 1

    # psd: matrices are tested directly, graphs through their raw Laplacian.
    text = _read(args.file)
    if document_kind(text) == "graph":
        g = parse_graph_document(text)
        m = laplacian(g, resolve_convention(g, conv))
        convention = resolve_convention(g, conv)
    else:
        m = parse_matrix_document(text)
        convention = None
    if not is_hermitian(m, tol):
        raise ContractViolation("PSD battery requires a Hermitian input")
    evals = np.linalg.eigvalsh(m)
    psd = is_psd(m, tol)
    minors = psd_necessary_minors(m, tol)
    split = psd_sufficient_split(m, tol)
    certs = (
        CertificateOutcome("eigenvalue_nonneg", psd, max(0.0, -float(evals[0]))),
        CertificateOutcome("minors_nonneg", minors.all_minors_nonneg, max(0.0, -minors.worst_minor)),
        CertificateOutcome("diag_dominance", minors.diag_dominance, 0.0),
        CertificateOutcome(
            "sufficient_split", split.satisfied, max(0.0, -float(np.min(split.per_row_slack)))
        ),
        CertificateOutcome("sign_gauge", split.sign_gauge_consistent, 0.0),
    )
    report = CertificateReport(
        verdict="certified_psd" if psd else "not_certified",
        certificates=certs,
        convention=convention,
        measured_side=side,
        tolerance=tol,
    )
    _print_report(report, args.format)
    return 0 if psd else 1


def cmd_gate(args) -> int:
    tol = _tol(args)
    specs = parse_gate_word(args.word)
    m = parse_matrix_document(_read(args.matrix_file))
    state = DensityOperator.from_matrix(m, tol=tol)
    for spec in specs:
        if isinstance(spec, PartialGateSpec):
            state = apply_partial_gate(state, spec.q)
        else:
            state = apply_gate(state, spec, tol)
    doc = matrix_document(state.matrix)
    if args.out:
        Path(args.out).write_text(doc)
        if args.format == "structured":
            sys.stdout.write(_structured([("out", f'"{args.out}"'), ("dim", str(state.dim))]))
        else:
            print(f"wrote {args.out}")
    else:
        sys.stdout.write(doc)
    return 0


def cmd_oracle(args) -> int:
    tol = _tol(args)
    m = parse_matrix_document(_read(args.matrix_file))
    if m.shape != (4, 4):
        raise DimensionError(f"oracle requires a 4x4 matrix, got {m.shape}")
    state = DensityOperator.from_matrix(m, tol=tol)
    try:
        n_theta, n_phi = (int(x) for x in args.grid.split(","))
    except ValueError as exc:
        raise ParseError(f"grid must be 'ntheta,nphi', got {args.grid!r}") from exc
    est = discord_estimate(state, measured=args.measured, grid=(n_theta, n_phi), passes=args.passes)
    if args.format == "structured":
        sys.stdout.write(
            _structured(
                [
                    ("discord", _fmt(est.value)),
                    ("theta", _fmt(est.argmin.theta)),
                    ("phi", _fmt(est.argmin.phi)),
                    ("grid", "[%d, %d]" % est.grid),
                    ("passes", str(est.refinement_passes)),
                ]
            )
        )
    else:
        print(f"discord  {_fmt(est.value)}")
        print(f"theta    {_fmt(est.argmin.theta)}")
        print(f"phi      {_fmt(est.argmin.phi)}")
        print(f"grid     {est.grid[0]}x{est.grid[1]} passes {est.refinement_passes}")
    return 0 if est.value <= ORACLE_PASS_BOUND else 1


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-9, help="absolute and relative tolerance")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--measured", choices=("A", "B"), default="A", help="measured subsystem")
    p.add_argument(
        "--convention", choices=("auto", "magnitude", "signed"), default="auto",
        help="Laplacian convention override",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphdiscord",
        description="Graph-built density operators, gates, purity/PSD checks, and discord certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a density operator from a graph document")
    p.add_argument("graph_file")
    p.add_argument("-o", "--out", help="write the matrix document here")
    _add_common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="run a certificate battery")
    p.add_argument("which", choices=("pure", "psd", "discord"))
    p.add_argument("file", help="graph or matrix document")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gate", help="apply a gate word to a matrix document")
    p.add_argument("matrix_file")
    p.add_argument("word", help="e.g. 'H(0),CX(0,1),partial(q=1)'")
    p.add_argument("-o", "--out", help="write the transformed matrix here")
    _add_common(p)
    p.set_defaults(func=cmd_gate)

    p = sub.add_parser("oracle", help="numerical discord estimate for a two-qubit state")
    p.add_argument("matrix_file")
    p.add_argument("--grid", default="64,128", help="ntheta,nphi")
    p.add_argument("--passes", type=int, default=3)
    _add_common(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VALIDITY_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
