"""Shared golden fixtures: the nine reference graphs, their exact density
matrices, and the Bell-diagonal family used across the suite."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from graphdiscord import DensityOperator, WeightedGraph

SQRT5 = np.sqrt(5.0)


@dataclass(frozen=True)
class GoldenCase:
    name: str
    graph: WeightedGraph
    matrix: np.ndarray


def _case(name, n_qubits, partition, edges, loops, convention, matrix) -> GoldenCase:
    g = WeightedGraph(
        n_qubits=n_qubits,
        partition=partition,
        edges=tuple(edges),
        loops=tuple(loops),
        convention=convention,
    )
    return GoldenCase(name=name, graph=g, matrix=np.asarray(matrix, dtype=np.complex128))


PHASE_RING = _case(
    "phase_ring",
    2,
    (1, 1),
    [(0, 1, 1j), (0, 2, 1j), (0, 3, -1), (1, 2, 1), (1, 3, 1j), (2, 3, 1j)],
    [(0, -2.0), (1, -2.0), (2, -2.0), (3, -2.0)],
    "magnitude",
    np.array(
        [[1, 1j, 1j, -1], [-1j, 1, 1, 1j], [-1j, 1, 1, 1j], [-1, -1j, -1j, 1]]
    )
    / 4,
)

_triangle = np.zeros((8, 8))
for _i in (1, 2, 4):
    for _j in (1, 2, 4):
        _triangle[_i, _j] = 1 / 3
LOOP_TRIANGLE = _case(
    "loop_triangle",
    3,
    (1, 2),
    [(1, 2, -1.0), (1, 4, -1.0), (2, 4, -1.0)],
    [(1, 3.0), (2, 3.0), (4, 3.0)],
    "signed",
    _triangle,
)

SINGLE_PHASE_EDGE = _case(
    "single_phase_edge",
    2,
    (1, 1),
    [(0, 3, 1j)],
    [],
    "magnitude",
    np.array([[1, 0, 0, 1j], [0, 0, 0, 0], [0, 0, 0, 0], [-1j, 0, 0, 1]]) / 2,
)

PHASE_COMPLETE = _case(
    "phase_complete",
    2,
    (1, 1),
    [
        (0, 1, 2 + 1j),
        (0, 2, 3),
        (0, 3, 2 + 1j),
        (1, 2, 2 - 1j),
        (1, 3, 3),
        (2, 3, 2 + 1j),
    ],
    [(0, -2 * SQRT5), (1, -2 * SQRT5), (2, -2 * SQRT5), (3, -2 * SQRT5)],
    "magnitude",
    np.array(
        [
            [3, 2 + 1j, 3, 2 + 1j],
            [2 - 1j, 3, 2 - 1j, 3],
            [3, 2 + 1j, 3, 2 + 1j],
            [2 - 1j, 3, 2 - 1j, 3],
        ]
    )
    / 12,
)

CROSS_LINKS = _case(
    "cross_links",
    2,
    (1, 1),
    [(0, 2, 1), (0, 3, -1j), (1, 2, 1j), (1, 3, 1)],
    [],
    "magnitude",
    np.array([[2, 0, 1, -1j], [0, 2, 1j, 1], [1, -1j, 2, 0], [1j, 1, 0, 2]]) / 8,
)

BIPARTITE_COMPLEMENT = _case(
    "bipartite_complement",
    3,
    (1, 2),
    [(u, v, 1.0) for u, v in [(0, 4), (0, 6), (0, 7), (1, 5), (1, 6), (1, 7),
                              (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 7)]],
    [],
    "signed",
    np.array(
        [
            [3, 0, 0, 0, -1, 0, -1, -1],
            [0, 3, 0, 0, 0, -1, -1, -1],
            [0, 0, 3, 0, -1, -1, -1, 0],
            [0, 0, 0, 3, -1, -1, 0, -1],
            [-1, 0, -1, -1, 3, 0, 0, 0],
            [0, -1, -1, -1, 0, 3, 0, 0],
            [-1, -1, -1, 0, 0, 0, 3, 0],
            [-1, -1, 0, -1, 0, 0, 0, 3],
        ]
    )
    / 24,
)

SIGN_COMPLETE = _case(
    "sign_complete",
    2,
    (1, 1),
    [(0, 1, 1), (0, 2, 1), (0, 3, -1), (1, 2, -1), (1, 3, 1), (2, 3, 1)],
    [],
    "signed",
    np.array([[1, -1, -1, 1], [-1, 1, 1, -1], [-1, 1, 1, -1], [1, -1, -1, 1]]) / 4,
)

PARITY_LINKS = _case(
    "parity_links",
    3,
    (1, 2),
    [(u, v, 1.0) for u, v in [(0, 2), (0, 4), (1, 3), (1, 5), (1, 7), (2, 6)]],
    [],
    "signed",
    np.array(
        [
            [2, 0, -1, 0, -1, 0, 0, 0],
            [0, 3, 0, -1, 0, -1, 0, -1],
            [-1, 0, 2, 0, 0, 0, -1, 0],
            [0, -1, 0, 1, 0, 0, 0, 0],
            [-1, 0, 0, 0, 1, 0, 0, 0],
            [0, -1, 0, 0, 0, 1, 0, 0],
            [0, 0, -1, 0, 0, 0, 1, 0],
            [0, -1, 0, 0, 0, 0, 0, 1],
        ]
    )
    / 12,
)

_B = np.array([[1, -1, -1, 1], [-1, 1, 1, -1], [-1, 1, 1, -1], [1, -1, -1, 1]])
BLOCK_PAIR = _case(
    "block_pair",
    3,
    (1, 2),
    [
        (0, 1, 1), (0, 2, 1), (0, 3, -1), (1, 2, -1), (1, 3, 1), (2, 3, 1),
        (4, 5, 1), (4, 6, 1), (4, 7, -1), (5, 6, -1), (5, 7, 1), (6, 7, 1),
    ],
    [],
    "signed",
    np.block([[_B, np.zeros((4, 4))], [np.zeros((4, 4)), _B]]) / 8,
)

GOLDEN: list[GoldenCase] = [
    PHASE_RING,
    LOOP_TRIANGLE,
    SINGLE_PHASE_EDGE,
    PHASE_COMPLETE,
    CROSS_LINKS,
    BIPARTITE_COMPLEMENT,
    SIGN_COMPLETE,
    PARITY_LINKS,
    BLOCK_PAIR,
]


def golden_state(case: GoldenCase) -> DensityOperator:
    return DensityOperator.from_matrix(case.matrix, partition=case.graph.partition)


def bell_diagonal(t1: float, t2: float, t3: float) -> DensityOperator:
    """Two-qubit state (1/4)(I + t1 XX + t2 YY + t3 ZZ)."""
    m = (
        np.array(
            [
                [1 + t3, 0, 0, t1 - t2],
                [0, 1 - t3, t1 + t2, 0],
                [0, t1 + t2, 1 - t3, 0],
                [t1 - t2, 0, 0, 1 + t3],
            ]
        )
        / 4
    )
    return DensityOperator.from_matrix(m, partition=(1, 1))


def complete_graph(n_qubits: int, weight: float = 1.0, partition=None) -> WeightedGraph:
    n = 2**n_qubits
    if partition is None:
        partition = (1, n_qubits - 1)
    edges = [(u, v, weight) for u in range(n) for v in range(u + 1, n)]
    return WeightedGraph(
        n_qubits=n_qubits, partition=partition, edges=tuple(edges), convention="signed"
    )


def random_graph(rng: np.random.Generator, n_qubits=None, complex_weights=None,
                 allow_loops=True) -> WeightedGraph:
    """Random graph for property tests; at least one edge."""
    if n_qubits is None:
        n_qubits = int(rng.integers(1, 4))
    if complex_weights is None:
        complex_weights = bool(rng.integers(0, 2))
    n = 2**n_qubits
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    count = int(rng.integers(1, len(pairs) + 1))
    edges = []
    for u, v in pairs[:count]:
        if complex_weights:
            w = complex(rng.normal(), rng.normal())
        else:
            w = complex(rng.normal(), 0.0)
        if w == 0:
            w = 1.0
        edges.append((u, v, w))
    loops = []
    if allow_loops:
        for v in range(n):
            if rng.random() < 0.3:
                loops.append((v, float(rng.normal())))
    p = int(rng.integers(0, n_qubits + 1))
    return WeightedGraph(
        n_qubits=n_qubits,
        partition=(p, n_qubits - p),
        edges=tuple(edges),
        loops=tuple(loops),
    )
