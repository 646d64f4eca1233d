"""Weighted graphs over qubit-labeled vertices and their density operators.

A graph on ``2**n`` vertices carries a bipartition ``(p, q)`` of its qubits:
vertex label ``(i, j)`` with ``i`` in ``1..2**p`` and ``j`` in ``1..2**q``
maps to linear index ``(i - 1) * 2**q + (j - 1)``, i.e. the first label is
the slow (leading) tensor factor.

Two Laplacian conventions are supported, because both occur in practice for
graph-built states:

* ``magnitude``: ``L_ii = loop_i + sum_j |w_ij|``, ``L_ij = w_ij`` for
  ``i < j`` and the conjugate below the diagonal.  Works for complex weights.
* ``signed``: classical ``L = D - A`` plus loops, ``L_ii = loop_i + sum_j
  w_ij`` and ``L_ij = -w_ij``.  Requires real weights.

``convention="auto"`` resolves to ``magnitude`` when any weight has a nonzero
imaginary part and ``signed`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    is_hermitian,
    maxnorm,
    purity,  # noqa: F401  (re-exported alongside the graph API)
)

CONVENTIONS = ("magnitude", "signed")


class ConventionError(ValueError):
    """Requested Laplacian convention is incompatible with the weights."""


class NormalizationError(ValueError):
    """Laplacian trace is not positive; no density operator exists."""


class ValidityError(ValueError):
    """Constructed matrix fails a density-operator invariant."""

    def __init__(self, message: str, min_eigenvalue: float | None = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


@dataclass(frozen=True)
class WeightedGraph:
    """Complex-weighted graph with real self-loops on ``2**n_qubits`` vertices.

    ``edges`` holds ``(u, v, w)`` with ``u < v``; ``loops`` holds
    ``(vertex, real_weight)``.  Both are kept sorted so equal graphs compare
    equal and serialize identically.  ``convention`` records the preferred
    Laplacian convention for this graph ("auto" defers to the weights).
    """

    n_qubits: int
    partition: tuple[int, int]
    edges: tuple[tuple[int, int, complex], ...] = ()
    loops: tuple[tuple[int, float], ...] = ()
    convention: str = "auto"

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        p, q = self.partition
        if p < 0 or q < 0 or p + q != self.n_qubits:
            raise ValueError(f"partition {self.partition} does not sum to {self.n_qubits}")
        if self.convention not in CONVENTIONS + ("auto",):
            raise ValueError(f"unknown convention {self.convention!r}")
        n = self.n_vertices
        seen = set()
        edges = []
        for u, v, w in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for {n} vertices")
            if u == v:
                raise ValueError(f"self edge ({u},{v}); use loops for diagonal weight")
            if u > v:
                raise ValueError(f"edge ({u},{v}) must be stored with u < v")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            edges.append((int(u), int(v), complex(w)))
        loops = []
        seen_loops = set()
        for v, w in self.loops:
            if not 0 <= v < n:
                raise ValueError(f"loop vertex {v} out of range")
            if v in seen_loops:
                raise ValueError(f"duplicate loop on vertex {v}")
            seen_loops.add(v)
            loops.append((int(v), float(w)))
        object.__setattr__(self, "edges", tuple(sorted(edges, key=lambda e: (e[0], e[1]))))
        object.__setattr__(self, "loops", tuple(sorted(loops)))

    @property
    def n_vertices(self) -> int:
        return 2**self.n_qubits

    def labels(self, vertex: int) -> tuple[int, int]:
        """1-indexed (i, j) label pair of a linear vertex index."""
        q = self.partition[1]
        return (vertex >> q) + 1, (vertex & ((1 << q) - 1)) + 1

    def loop_weight(self, vertex: int) -> float:
        for v, w in self.loops:
            if v == vertex:
                return w
        return 0.0


@dataclass(frozen=True)
class DensityOperator:
    """Unit-trace Hermitian PSD matrix with qubit-partition metadata."""

    matrix: np.ndarray
    n_qubits: int
    partition: tuple[int, int]
    convention: str | None = None

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(
        cls,
        matrix,
        partition: tuple[int, int] | None = None,
        convention: str | None = None,
        tol: Tolerance = DEFAULT_TOL,
    ) -> "DensityOperator":
        """Validate and wrap a matrix as a density operator.

        The partition defaults to (1, n - 1).  Raises :class:`ValidityError`
        when the matrix is not Hermitian, unit-trace, and PSD within
        tolerance.
        """
        m = as_matrix(matrix)
        dim = m.shape[0]
        if m.shape[0] != m.shape[1] or dim & (dim - 1) or dim < 2:
            raise ValidityError(f"density operator dimension must be a power of two, got {m.shape}")
        n = dim.bit_length() - 1
        if partition is None:
            partition = (1, n - 1)
        if sum(partition) != n:
            raise ValidityError(f"partition {partition} does not match {n} qubits")
        if not is_hermitian(m, tol):
            raise ValidityError("matrix is not Hermitian")
        tr = m.trace()
        if abs(tr - 1.0) > tol.threshold(1.0):
            raise ValidityError(f"trace {tr} is not 1")
        evals = np.linalg.eigvalsh(m)
        if evals[0] < -tol.threshold(maxnorm(m)):
            raise ValidityError("matrix is not PSD", min_eigenvalue=float(evals[0]))
        return cls(matrix=m, n_qubits=n, partition=tuple(partition), convention=convention)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits


def default_convention(g: WeightedGraph) -> str:
    """``magnitude`` when any edge weight is genuinely complex, else ``signed``."""
    if any(w.imag != 0.0 for _, _, w in g.edges):
        return "magnitude"
    return "signed"


def resolve_convention(g: WeightedGraph, override: str | None = None) -> str:
    """Pick the effective convention from override, the graph, or the weights."""
    conv = override if override is not None else g.convention
    if conv in (None, "auto"):
        conv = default_convention(g)
    if conv not in CONVENTIONS:
        raise ConventionError(f"unknown convention {conv!r}")
    return conv


def laplacian(g: WeightedGraph, convention: str | None = None) -> np.ndarray:
    """Laplacian matrix of the graph under the resolved convention.

    The result is Hermitian by construction; the ``signed`` convention
    rejects complex weights.
    """
    conv = resolve_convention(g, convention)
    n = g.n_vertices
    lap = np.zeros((n, n), dtype=np.complex128)
    if conv == "signed":
        for u, v, w in g.edges:
            if w.imag != 0.0:
                raise ConventionError("signed convention requires real edge weights")
            lap[u, v] -= w
            lap[v, u] -= w
            lap[u, u] += w
            lap[v, v] += w
    else:
        for u, v, w in g.edges:
            lap[u, v] += w
            lap[v, u] += np.conj(w)
            lap[u, u] += abs(w)
            lap[v, v] += abs(w)
    for v, w in g.loops:
        lap[v, v] += w
    return lap


def density_operator(
    g: WeightedGraph,
    convention: str | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> DensityOperator:
    """Trace-normalized Laplacian, validated as a state."""
    conv = resolve_convention(g, convention)
    lap = laplacian(g, conv)
    tr = lap.trace().real
    if tr <= tol.threshold(maxnorm(lap)):
        raise NormalizationError(f"Laplacian trace {tr} is not positive")
    return DensityOperator.from_matrix(lap / tr, partition=g.partition, convention=conv, tol=tol)


def connected_components(g: WeightedGraph) -> list[set[int]]:
    """Vertex sets under nonzero-edge adjacency; loop-only vertices are singletons."""
    n = g.n_vertices
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, w in g.edges:
        if w != 0:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    groups: dict[int, set[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), set()).add(x)
    return sorted(groups.values(), key=min)


def pure_by_entries(rho: DensityOperator, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Purity certificate from the entry pattern.

    Fires when the support S = {i : rho_ii > 0} carries uniform entry
    magnitudes |rho_ij| = rho_ii = c for all i, j in S and every row outside
    S vanishes.  With unit trace this forces Tr(rho^2) = (|S| c)^2 = 1.
    """
    m = rho.matrix
    t = tol.threshold(maxnorm(m))
    diag = m.diagonal().real
    support = np.flatnonzero(diag > t)
    if support.size == 0:
        return False
    outside = np.setdiff1d(np.arange(m.shape[0]), support)
    if outside.size and maxnorm(m[outside, :]) > t:
        return False
    block = np.abs(m[np.ix_(support, support)])
    c = diag[support[0]]
    return bool(np.all(np.abs(block - c) <= t))


def pure_by_component(
    g: WeightedGraph,
    convention: str | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Purity certificate from graph structure.

    Exactly one component may carry weight (edges or loops); it must be
    complete with a common edge-weight magnitude c > 0, and the Laplacian
    diagonal on it must equal c everywhere.  The resulting state then has
    uniform entry magnitudes on the component, hence unit purity.
    """
    conv = resolve_convention(g, convention)
    lap = laplacian(g, conv)
    t = tol.threshold(max(maxnorm(lap), 1.0))

    def carries_weight(comp: set[int]) -> bool:
        if any(abs(w) > t for u, v, w in g.edges if u in comp):
            return True
        return any(abs(w) > t for v, w in g.loops if v in comp)

    carrying = [c for c in connected_components(g) if carries_weight(c)]
    if len(carrying) != 1:
        return False
    comp = sorted(carrying[0])
    k = len(comp)
    if k == 1:
        # Lone loop vertex: the state is a basis projector iff the loop is positive.
        return g.loop_weight(comp[0]) > t
    weights = {}
    for u, v, w in g.edges:
        if u in carrying[0]:
            weights[(u, v)] = abs(w)
    if len(weights) != k * (k - 1) // 2:
        return False
    c = next(iter(weights.values()))
    if c <= t or any(abs(val - c) > t for val in weights.values()):
        return False
    diag = lap.diagonal().real
    return bool(np.all(np.abs(diag[comp] - c) <= t))


def edges_same_parity(g: WeightedGraph) -> bool:
    """True iff every edge joins vertices whose trailing labels share parity."""
    if g.partition[1] == 0:
        return True
    return all((u ^ v) & 1 == 0 for u, v, _ in g.edges)


def edges_within_blocks(g: WeightedGraph) -> bool:
    """True iff every edge stays inside one leading-label block.

    The density operator is then block diagonal across the leading factor.
    """
    q = g.partition[1]
    return all(u >> q == v >> q for u, v, _ in g.edges)


def uniform_complete(
    g: WeightedGraph,
    convention: str | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """True iff the graph is complete with one real positive weight b and
    every Laplacian diagonal entry equals b * (n_vertices - 1)."""
    n = g.n_vertices
    if len(g.edges) != n * (n - 1) // 2:
        return False
    w0 = g.edges[0][2]
    t = tol.threshold(max(abs(w0), 1.0))
    if abs(w0.imag) > t or w0.real <= t:
        return False
    if any(abs(w - w0) > t for _, _, w in g.edges):
        return False
    lap = laplacian(g, convention)
    target = w0.real * (n - 1)
    return bool(np.all(np.abs(lap.diagonal().real - target) <= tol.threshold(target)))
