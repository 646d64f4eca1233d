"""Text document formats for matrices, graphs, and certificate reports.

All documents are JSON with a fixed field order and numbers printed with 17
significant digits, so serialization is canonical: writing, re-reading, and
writing again is byte-identical.  Readers accept any finite decimal and
reject NaN or infinite values.
"""

from __future__ import annotations

import json

import numpy as np

from .discord import CertificateReport
from .graphs import WeightedGraph
from .linalg import as_matrix


class ParseError(ValueError):
    """A document does not parse or fails schema validation."""


def _fmt(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("cannot serialize non-finite number")
    return "%.17g" % float(x)


def _load(text: str) -> dict:
    def reject(token: str):
        raise ParseError(f"non-finite number {token!r} not allowed")

    try:
        doc = json.loads(text, parse_constant=reject)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document root must be an object")
    return doc


def _field(doc: dict, name: str, kind, where: str = "document"):
    if name not in doc:
        raise ParseError(f"{where} is missing field {name!r}")
    value = doc[name]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(f"field {name!r} has wrong type")
    return value


def matrix_document(matrix) -> str:
    """Canonical matrix document: dim plus row-major [re, im] pairs."""
    m = as_matrix(matrix)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix document requires a square matrix, got {m.shape}")
    dim = m.shape[0]
    rows = []
    for i in range(dim):
        pairs = ", ".join(f"[{_fmt(z.real)}, {_fmt(z.imag)}]" for z in m[i])
        rows.append("    " + pairs)
    body = ",\n".join(rows)
    return '{\n  "dim": %d,\n  "entries": [\n%s\n  ]\n}\n' % (dim, body)


def parse_matrix_document(text: str) -> np.ndarray:
    doc = _load(text)
    dim = _field(doc, "dim", int)
    if dim < 1:
        raise ParseError(f"dim must be positive, got {dim}")
    entries = _field(doc, "entries", list)
    if len(entries) != dim * dim:
        raise ParseError(f"expected {dim * dim} entries, got {len(entries)}")
    out = np.empty(dim * dim, dtype=np.complex128)
    for idx, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ParseError(f"entry {idx} must be a [re, im] number pair")
        out[idx] = complex(pair[0], pair[1])
    m = out.reshape(dim, dim)
    if not np.all(np.isfinite(m)):
        raise ParseError("matrix entries must be finite")
    return m


def graph_document(g: WeightedGraph) -> str:
    """Canonical graph document; edges are already sorted by (u, v)."""
    lines = ["{"]
    lines.append('  "qubits": %d,' % g.n_qubits)
    lines.append('  "partition": [%d, %d],' % g.partition)
    lines.append('  "convention": "%s",' % g.convention)
    if g.edges:
        lines.append('  "edges": [')
        edge_rows = [
            '    {"u": %d, "v": %d, "w": [%s, %s]}' % (u, v, _fmt(w.real), _fmt(w.imag))
            for u, v, w in g.edges
        ]
        lines.append(",\n".join(edge_rows))
        lines.append("  ],")
    else:
        lines.append('  "edges": [],')
    if g.loops:
        lines.append('  "loops": [')
        loop_rows = ['    {"v": %d, "w": %s}' % (v, _fmt(w)) for v, w in g.loops]
        lines.append(",\n".join(loop_rows))
        lines.append("  ]")
    else:
        lines.append('  "loops": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_graph_document(text: str) -> WeightedGraph:
    doc = _load(text)
    qubits = _field(doc, "qubits", int)
    partition = _field(doc, "partition", list)
    if len(partition) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in partition):
        raise ParseError("partition must be a pair of integers")
    convention = doc.get("convention", "auto")
    if convention not in ("auto", "magnitude", "signed"):
        raise ParseError(f"unknown convention {convention!r}")
    edges = []
    for idx, e in enumerate(doc.get("edges", [])):
        if not isinstance(e, dict):
            raise ParseError(f"edge {idx} must be an object")
        u = _field(e, "u", int, f"edge {idx}")
        v = _field(e, "v", int, f"edge {idx}")
        w = _field(e, "w", (int, float, list), f"edge {idx}")
        if isinstance(w, list):
            if len(w) != 2 or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in w
            ):
                raise ParseError(f"edge {idx} weight must be [re, im]")
            weight = complex(w[0], w[1])
        else:
            weight = complex(w, 0.0)
        edges.append((u, v, weight))
    loops = []
    for idx, l in enumerate(doc.get("loops", [])):
        if not isinstance(l, dict):
            raise ParseError(f"loop {idx} must be an object")
        loops.append((_field(l, "v", int, f"loop {idx}"), float(_field(l, "w", (int, float), f"loop {idx}"))))
    try:
        return WeightedGraph(
            n_qubits=qubits,
            partition=(partition[0], partition[1]),
            edges=tuple(edges),
            loops=tuple(loops),
            convention=convention,
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# Sniffing: graph documents carry "qubits", matrix documents carry "dim".
def document_kind(text: str) -> str:
    doc = _load(text)
    if "qubits" in doc:
        return "graph"
    if "dim" in doc:
        return "matrix"
    raise ParseError("document is neither a graph (qubits) nor a matrix (dim)")


def report_document(report: CertificateReport) -> str:
    """Canonical report document with stable field order."""
    cert_rows = [
        '    {"name": "%s", "passed": %s, "residual": %s}'
        % (c.name, "true" if c.passed else "false", _fmt(c.residual))
        for c in report.certificates
    ]
    certs = "[\n" + ",\n".join(cert_rows) + "\n  ]" if cert_rows else "[]"
    conv = '"%s"' % report.convention if report.convention else "null"
    return (
        "{\n"
        '  "verdict": "%s",\n'
        '  "certificates": %s,\n'
        '  "convention": %s,\n'
        '  "measured_side": "%s",\n'
        '  "tolerances": {"abs_eps": %s, "rel_eps": %s}\n'
        "}\n"
        % (
            report.verdict,
            certs,
            conv,
            report.measured_side,
            _fmt(report.tolerance.abs_eps),
            _fmt(report.tolerance.rel_eps),
        )
    )
