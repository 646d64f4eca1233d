"""Quantum gates, unitary conjugation, and entry-dependent partial gates.

Qubit 0 is the leftmost (most significant) tensor factor, matching the
vertex order used by :mod:`graphdiscord.graphs`.

The partial gate with ``q`` untouched leading qubits sends entry ``(i, j)``
to ``(i ^ m, j ^ m)`` where the mask ``m`` keeps exactly the low ``n - q``
bits of ``i ^ j``; this realizes, per entry, the tensor word that applies a
bit flip on every touched qubit where the row and column labels differ and
the identity elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import DensityOperator, WeightedGraph
from .linalg import DEFAULT_TOL, DimensionError, Tolerance, as_matrix, maxnorm

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)

_ONE_QUBIT = {
    "I": np.eye(2, dtype=np.complex128),
    "X": PAULI_X,
    "Y": PAULI_Y,
    "Z": PAULI_Z,
    "H": HADAMARD,
}
_TWO_QUBIT = {
    "CX": np.block(
        [[np.eye(2), np.zeros((2, 2))], [np.zeros((2, 2)), PAULI_X]]
    ).astype(np.complex128),
    "CZ": np.diag([1, 1, 1, -1]).astype(np.complex128),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
    ),
}


class GateSyntaxError(ValueError):
    """A gate word does not parse."""


@dataclass(frozen=True)
class GateSpec:
    """A named or explicit unitary with its target qubits."""

    kind: str
    targets: tuple[int, ...]
    matrix: np.ndarray | None = None

    def validate(self, n_qubits: int, tol: Tolerance = DEFAULT_TOL) -> None:
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"targets {self.targets} are not distinct")
        for t in self.targets:
            if not 0 <= t < n_qubits:
                raise ValueError(f"target {t} out of range for {n_qubits} qubits")
        if self.kind in _ONE_QUBIT:
            arity = 1
        elif self.kind in _TWO_QUBIT:
            arity = 2
        elif self.kind == "explicit":
            if self.matrix is None:
                raise ValueError("explicit gate needs a matrix")
            m = as_matrix(self.matrix)
            arity = len(self.targets)
            if m.shape != (2**arity, 2**arity):
                raise DimensionError(f"explicit matrix {m.shape} does not fit {arity} targets")
            if maxnorm(m @ m.conj().T - np.eye(m.shape[0])) > tol.threshold(1.0):
                raise ValueError("explicit matrix is not unitary")
            return
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.targets) != arity:
            raise ValueError(f"{self.kind} takes {arity} target(s), got {len(self.targets)}")


@dataclass(frozen=True)
class PartialGateSpec:
    """Entry-dependent bit-flip transform leaving ``q`` leading qubits untouched."""

    q: int


def _embed(u: np.ndarray, targets: tuple[int, ...], n_qubits: int) -> np.ndarray:
    """Place a 2**k unitary on the given qubits of an n-qubit register."""
    rest = [k for k in range(n_qubits) if k not in targets]
    order = list(targets) + rest
    full = np.kron(u, np.eye(2 ** len(rest), dtype=np.complex128))
    tensor = full.reshape([2] * (2 * n_qubits))
    # Slot s currently holds qubit order[s]; move each qubit to its own slot.
    inv = [order.index(k) for k in range(n_qubits)]
    tensor = tensor.transpose(inv + [n_qubits + s for s in inv])
    return tensor.reshape(2**n_qubits, 2**n_qubits)


def gate_matrix(spec: GateSpec, n_qubits: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Full 2**n unitary realizing the spec on the register."""
    spec.validate(n_qubits, tol)
    if spec.kind == "explicit":
        base = as_matrix(spec.matrix)
    elif spec.kind in _ONE_QUBIT:
        base = _ONE_QUBIT[spec.kind]
    else:
        base = _TWO_QUBIT[spec.kind]
    return _embed(base, spec.targets, n_qubits)


def apply_gate(rho: DensityOperator, spec: GateSpec, tol: Tolerance = DEFAULT_TOL) -> DensityOperator:
    """Conjugate the state by the gate unitary: rho -> U rho U^dagger."""
    u = gate_matrix(spec, rho.n_qubits, tol)
    m = u @ rho.matrix @ u.conj().T
    return DensityOperator.from_matrix(m, partition=rho.partition, convention=rho.convention, tol=tol)


def partial_mask(i: int, j: int, p: int, q: int) -> int:
    """XOR mask of the low ``p`` bits of ``i ^ j``.

    Bit k of the mask is set exactly where the two indices disagree on a
    touched qubit, i.e. where the per-entry tensor word carries a bit flip.
    """
    dim = 1 << (p + q)
    if not (0 <= i < dim and 0 <= j < dim):
        raise ValueError(f"indices ({i},{j}) out of range for dimension {dim}")
    return (i ^ j) & ((1 << p) - 1)


def _partial_transform(matrix: np.ndarray, q: int) -> np.ndarray:
    d = matrix.shape[0]
    n = d.bit_length() - 1
    if not 0 <= q < n:
        raise ValueError(f"q must be in 0..{n - 1}, got {q}")
    low = (1 << (n - q)) - 1
    ii = np.arange(d)[:, None]
    jj = np.arange(d)[None, :]
    m = (ii ^ jj) & low
    return matrix[ii ^ m, jj ^ m]


def apply_partial_gate(rho: DensityOperator, q: int) -> DensityOperator:
    """Entry-dependent transform on the trailing ``n - q`` qubits.

    Fixes the diagonal, preserves the trace and Hermiticity, and is an
    involution.  It is not a unitary conjugation of the whole matrix, so the
    output can leave the PSD cone; no validity check is re-run here.
    """
    out = _partial_transform(rho.matrix, q)
    return DensityOperator(
        matrix=out,
        n_qubits=rho.n_qubits,
        partition=rho.partition,
        convention=rho.convention,
    )


def apply_partial_gate_graph(g: WeightedGraph, q: int) -> WeightedGraph:
    """Image of the graph under the partial gate: edges move with their entries.

    Loops are unchanged.  Building the density operator commutes with the
    transform under the magnitude convention.
    """
    n = g.n_qubits
    if not 0 <= q < n:
        raise ValueError(f"q must be in 0..{n - 1}, got {q}")
    low = (1 << (n - q)) - 1
    edges = []
    for u, v, w in g.edges:
        m = (u ^ v) & low
        nu, nv = u ^ m, v ^ m
        if nu < nv:
            edges.append((nu, nv, w))
        else:
            # Stored weight always belongs to the (min, max) entry.
            edges.append((nv, nu, np.conj(w)))
    return WeightedGraph(
        n_qubits=g.n_qubits,
        partition=g.partition,
        edges=tuple(edges),
        loops=g.loops,
        convention=g.convention,
    )


def conj_partial_fixed(rho: DensityOperator, q: int, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff conj(partial-gate(rho)) equals rho entrywise.

    Equivalent to every block of the contiguous grid indexed by the ``q``
    leading qubits being Hermitian.
    """
    out = _partial_transform(rho.matrix, q)
    return maxnorm(np.conj(out) - rho.matrix) <= tol.threshold(maxnorm(rho.matrix))


def parse_gate_word(text: str) -> list[GateSpec | PartialGateSpec]:
    """Parse a comma-separated gate word such as ``H(0),CX(0,1),partial(q=1)``."""
    word = text.strip()
    if not word:
        raise GateSyntaxError("empty gate word")
    terms: list[str] = []
    depth = 0
    start = 0
    for pos, ch in enumerate(word):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GateSyntaxError(f"unbalanced ')' at position {pos}")
        elif ch == "," and depth == 0:
            terms.append(word[start:pos])
            start = pos + 1
    if depth != 0:
        raise GateSyntaxError("unbalanced '(' in gate word")
    terms.append(word[start:])

    specs: list[GateSpec | PartialGateSpec] = []
    for term in terms:
        term = term.strip()
        if "(" not in term or not term.endswith(")"):
            raise GateSyntaxError(f"malformed term {term!r}; expected NAME(args)")
        name, args = term[:-1].split("(", 1)
        name = name.strip()
        if name == "partial":
            key, _, val = args.partition("=")
            if key.strip() != "q":
                raise GateSyntaxError(f"partial takes q=<int>, got {args!r}")
            try:
                specs.append(PartialGateSpec(q=int(val)))
            except ValueError as exc:
                raise GateSyntaxError(f"bad q value {val!r}") from exc
            continue
        if name not in _ONE_QUBIT and name not in _TWO_QUBIT:
            raise GateSyntaxError(f"unknown gate {name!r}")
        try:
            targets = tuple(int(a) for a in args.split(",") if a.strip() != "")
        except ValueError as exc:
            raise GateSyntaxError(f"bad targets {args!r}") from exc
        specs.append(GateSpec(kind=name, targets=targets))
    return specs
