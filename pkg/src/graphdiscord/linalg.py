"""Dense complex-matrix kernel: Hermitian/normal/PSD predicates, eigenvalues,
Kronecker products, partial trace, commutators, and the split-form PSD test.

All functions are pure; inputs are never mutated.  Matrices are plain
``numpy.ndarray`` values of dtype complex128 (any array-like is accepted and
coerced).  Equality questions are answered against a composite threshold
``abs_eps + rel_eps * scale`` carried by a :class:`Tolerance`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DimensionError(ValueError):
    """Operands have incompatible or invalid shapes."""


class ContractViolation(ValueError):
    """An input breaks a documented precondition (e.g. not Hermitian)."""


@dataclass(frozen=True)
class Tolerance:
    """Composite numerical tolerance: threshold = abs_eps + rel_eps * scale."""

    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def __post_init__(self) -> None:
        if self.abs_eps < 0 or self.rel_eps < 0:
            raise ValueError("tolerances must be nonnegative")

    def threshold(self, scale: float = 1.0) -> float:
        return self.abs_eps + self.rel_eps * scale


DEFAULT_TOL = Tolerance()


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array and require all entries finite."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def _square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m


def maxnorm(a) -> float:
    """Largest entry magnitude, max |a_ij| (zero for empty input)."""
    m = np.asarray(a)
    return float(np.max(np.abs(m))) if m.size else 0.0


def kron(a, b) -> np.ndarray:
    """Kronecker product; output dims are the entrywise products."""
    return np.kron(as_matrix(a), as_matrix(b))


def is_hermitian(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff max |a_ij - conj(a_ji)| stays within tolerance."""
    m = _square(a)
    return maxnorm(m - m.conj().T) <= tol.threshold(maxnorm(m))


def is_normal(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff a commutes with its conjugate transpose within tolerance."""
    m = _square(a)
    ah = m.conj().T
    return maxnorm(m @ ah - ah @ m) <= tol.threshold(maxnorm(m))


def commutator_norm(a, b) -> float:
    """maxnorm(ab - ba) for equal-dimension square matrices."""
    ma, mb = _square(a), _square(b)
    if ma.shape != mb.shape:
        raise DimensionError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    return maxnorm(ma @ mb - mb @ ma)


def hermitian_eigenvalues(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending.

    Deterministic for a fixed input (LAPACK Hermitian solver).  Raises
    :class:`ContractViolation` when the input is not Hermitian within
    tolerance.
    """
    m = _square(a)
    if not is_hermitian(m, tol):
        raise ContractViolation("eigenvalue contract requires a Hermitian matrix")
    return np.linalg.eigvalsh(m)


def is_psd(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff the smallest eigenvalue is above -threshold. Input must be Hermitian."""
    m = _square(a)
    if not is_hermitian(m, tol):
        raise ContractViolation("PSD test requires a Hermitian matrix")
    evals = np.linalg.eigvalsh(m)
    return bool(evals[0] >= -tol.threshold(maxnorm(m)))


@dataclass(frozen=True)
class MinorReport:
    """Entrywise necessary-style PSD screens.

    ``all_minors_nonneg`` (every 2x2 principal minor a_pp*a_qq - |a_pq|^2 is
    nonnegative) is genuinely necessary for PSD.  ``diag_dominance``
    (|a_ii| >= sum_j |a_ij|) is reported for information only; PSD matrices
    can violate it.
    """

    diag_dominance: bool
    all_minors_nonneg: bool
    worst_minor: float


def psd_necessary_minors(a, tol: Tolerance = DEFAULT_TOL) -> MinorReport:
    """Evaluate the diagonal-dominance and 2x2-minor screens on a Hermitian matrix."""
    m = _square(a)
    if not is_hermitian(m, tol):
        raise ContractViolation("minor screens require a Hermitian matrix")
    t = tol.threshold(maxnorm(m))
    absm = np.abs(m)
    row_rest = absm.sum(axis=1) - absm.diagonal()
    dominance = bool(np.all(absm.diagonal() >= row_rest - t))
    d = m.diagonal().real
    minors = d[:, None] * d[None, :] - absm**2
    iu = np.triu_indices(m.shape[0], k=1)
    worst = float(minors[iu].min()) if iu[0].size else 0.0
    return MinorReport(
        diag_dominance=dominance,
        all_minors_nonneg=bool(worst >= -t),
        worst_minor=worst,
    )


@dataclass(frozen=True)
class PsdSplitReport:
    """Outcome of the sufficient split test.

    ``satisfied`` means every diagonal entry covers the row budget
    sum_q (|Re a_pq| + |Im a_pq|); the matrix then decomposes into
    nonnegative square forms and is guaranteed PSD.  ``per_row_slack`` is
    a_pp minus the consumed budget, per row.  ``sign_gauge_consistent``
    reports whether a bit-vector eps with (-1)^(eps_p + eps_q) matching
    sign(Re a_pq) exists on the nonzero real parts (2-coloring of the sign
    graph); the gauge is returned when it does.
    """

    satisfied: bool
    per_row_slack: np.ndarray
    sign_gauge_consistent: bool
    gauge: np.ndarray | None


def psd_sufficient_split(a, tol: Tolerance = DEFAULT_TOL) -> PsdSplitReport:
    """Row-budget sufficiency test for PSD, with sign-gauge consistency check."""
    m = _square(a)
    if not is_hermitian(m, tol):
        raise ContractViolation("split test requires a Hermitian matrix")
    t = tol.threshold(maxnorm(m))
    n = m.shape[0]
    budget = np.abs(m.real) + np.abs(m.imag)
    slack = m.diagonal().real - (budget.sum(axis=1) - budget.diagonal())
    satisfied = bool(np.all(slack >= -t))

    # 2-color the graph whose edges join indices with |Re a_pq| > t; the
    # parity of an edge is fixed by the sign of the real part.
    gauge = np.full(n, -1, dtype=int)
    consistent = True
    for start in range(n):
        if gauge[start] >= 0:
            continue
        gauge[start] = 0
        stack = [start]
        while stack and consistent:
            p = stack.pop()
            for q in range(n):
                if q == p or abs(m[p, q].real) <= t:
                    continue
                want = gauge[p] ^ (1 if m[p, q].real < 0 else 0)
                if gauge[q] < 0:
                    gauge[q] = want
                    stack.append(q)
                elif gauge[q] != want:
                    consistent = False
                    break
    return PsdSplitReport(
        satisfied=satisfied,
        per_row_slack=slack,
        sign_gauge_consistent=consistent,
        gauge=gauge if consistent else None,
    )


def partial_trace(rho, dims: tuple[int, int], keep: str = "A") -> np.ndarray:
    """Reduced operator of a bipartite matrix.

    ``dims`` is (d_A, d_B) with the A factor indexing the slow (leading)
    axis; ``keep`` selects which factor survives.  The trace is preserved.
    """
    m = _square(rho)
    da, db = dims
    if da * db != m.shape[0]:
        raise DimensionError(f"dims {dims} do not factor dimension {m.shape[0]}")
    if keep not in ("A", "B"):
        raise ValueError("keep must be 'A' or 'B'")
    r = m.reshape(da, db, da, db)
    if keep == "A":
        return np.trace(r, axis1=1, axis2=3)
    return np.trace(r, axis1=0, axis2=2)


def purity(rho) -> float:
    """Tr(rho^2) for Hermitian rho, computed as sum |rho_ij|^2."""
    m = _square(rho)
    return float(np.sum(np.abs(m) ** 2))
