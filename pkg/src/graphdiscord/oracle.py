"""Numerical ground truth: entropies, mutual information, and brute-force
two-qubit quantum discord via a grid-plus-refinement search over projective
measurements on the Bloch sphere.

Everything here is deterministic: the measurement grid is fixed, ties go to
the first grid point, and random states come from a seeded PCG64 generator,
so identical seeds give bitwise-identical states on every platform.
Logarithms are base 2 throughout; eigenvalues below 1e-14 contribute zero
entropy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import DensityOperator, ValidityError
from .linalg import DEFAULT_TOL, DimensionError, Tolerance, as_matrix, maxnorm, partial_trace

EIG_FLOOR = 1e-14
CLAMP_FLOOR = -1e-6


def state_matrix(state) -> np.ndarray:
    if isinstance(state, DensityOperator):
        return state.matrix
    return as_matrix(state)


def entropy(state, tol: Tolerance = DEFAULT_TOL) -> float:
    """Von Neumann entropy in bits, -sum(lam * log2(lam))."""
    m = state_matrix(state)
    evals = np.linalg.eigvalsh(m)
    if evals[0] < -tol.threshold(maxnorm(m)):
        raise ValidityError("entropy needs a PSD input", min_eigenvalue=float(evals[0]))
    lam = evals[evals > EIG_FLOOR]
    return float(-np.sum(lam * np.log2(lam)))


def mutual_information(state, dims: tuple[int, int] = (2, 2), tol: Tolerance = DEFAULT_TOL) -> float:
    """S(A) + S(B) - S(AB) for a bipartite state."""
    m = state_matrix(state)
    return (
        entropy(partial_trace(m, dims, "A"), tol)
        + entropy(partial_trace(m, dims, "B"), tol)
        - entropy(m, tol)
    )


@dataclass(frozen=True)
class MeasurementSpec:
    """Bloch direction (theta, phi) defining projectors (I +/- n.sigma)/2."""

    theta: float
    phi: float


@dataclass(frozen=True)
class DiscordEstimate:
    value: float
    argmin: MeasurementSpec
    grid: tuple[int, int]
    refinement_passes: int
    raw_value: float


def _projector_batch(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Stack of 2x2 projectors (I + n.sigma)/2 for flattened angle grids."""
    nx = np.sin(theta) * np.cos(phi)
    ny = np.sin(theta) * np.sin(phi)
    nz = np.cos(theta)
    pi = np.empty((theta.size, 2, 2), dtype=np.complex128)
    pi[:, 0, 0] = (1 + nz) / 2
    pi[:, 1, 1] = (1 - nz) / 2
    pi[:, 0, 1] = (nx - 1j * ny) / 2
    pi[:, 1, 0] = (nx + 1j * ny) / 2
    return pi


def _weighted_entropy_2x2(sigma: np.ndarray) -> np.ndarray:
    """p * S(sigma / p) for a stack of unnormalized PSD 2x2 matrices.

    Computed as f(mu1 + mu2) - f(mu1) - f(mu2) with f(x) = x log2 x, which
    sends vanishing-probability branches to zero.
    """
    a = sigma[:, 0, 0].real
    d = sigma[:, 1, 1].real
    half = (a + d) / 2
    radius = np.sqrt(((a - d) / 2) ** 2 + np.abs(sigma[:, 0, 1]) ** 2)
    mu1 = np.maximum(half + radius, 0.0)
    mu2 = np.maximum(half - radius, 0.0)

    def f(x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x)
        big = x > EIG_FLOOR
        out[big] = x[big] * np.log2(x[big])
        return out

    return f(mu1 + mu2) - f(mu1) - f(mu2)


def discord_estimate(
    state,
    measured: str = "A",
    grid: tuple[int, int] = (64, 128),
    passes: int = 3,
    tol: Tolerance = DEFAULT_TOL,
) -> DiscordEstimate:
    """Quantum discord of a two-qubit state, measured side A or B.

    D = I(rho) - max over projective measurements of
    [S(unmeasured marginal) - sum_k p_k S(conditional_k)], maximized on a
    uniform (theta, phi) grid followed by local refinements that shrink the
    window fourfold around the incumbent.
    """
    m = state_matrix(state)
    if m.shape != (4, 4):
        raise DimensionError(f"discord oracle handles 4x4 states, got {m.shape}")
    side = {"A": "A", "B": "B", "leading": "A", "trailing": "B"}.get(measured)
    if side is None:
        raise ValueError(f"measured must be A or B, got {measured!r}")
    r = m.reshape(2, 2, 2, 2)
    marg_other = partial_trace(m, (2, 2), "B" if side == "A" else "A")
    s_other = entropy(marg_other, tol)
    info = mutual_information(m, (2, 2), tol)

    n_theta, n_phi = grid

    def sweep(t_lo: float, t_hi: float, f_lo: float, f_hi: float):
        thetas = np.linspace(t_lo, t_hi, n_theta)
        phis = np.linspace(f_lo, f_hi, n_phi)
        tt = np.repeat(thetas, n_phi)
        ff = np.tile(phis, n_theta)
        pi = _projector_batch(tt, ff)
        if side == "A":
            sig0 = np.einsum("gxw,wuxv->guv", pi, r)
        else:
            sig0 = np.einsum("guw,xwyu->gxy", pi, r)
        sig1 = marg_other[None, :, :] - sig0
        cond = _weighted_entropy_2x2(sig0) + _weighted_entropy_2x2(sig1)
        j = s_other - cond
        best = int(np.argmax(j))
        return float(j[best]), float(tt[best]), float(ff[best])

    best_j, best_t, best_f = sweep(0.0, np.pi, 0.0, 2 * np.pi * (1 - 1 / n_phi))
    w_theta, w_phi = np.pi, 2 * np.pi
    for _ in range(passes):
        w_theta /= 4
        w_phi /= 4
        j, t, f = sweep(
            max(0.0, best_t - w_theta / 2),
            min(np.pi, best_t + w_theta / 2),
            best_f - w_phi / 2,
            best_f + w_phi / 2,
        )
        if j > best_j:
            best_j, best_t, best_f = j, t, f

    raw = info - best_j
    return DiscordEstimate(
        value=max(raw, CLAMP_FLOOR),
        argmin=MeasurementSpec(theta=best_t, phi=best_f % (2 * np.pi)),
        grid=grid,
        refinement_passes=passes,
        raw_value=raw,
    )


def _random_branch(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / rho.trace().real


def random_state(seed: int, dim: int = 4) -> DensityOperator:
    """Seeded full-rank state: normalized G G^dagger with Gaussian entries."""
    if dim < 2 or dim > 256 or dim & (dim - 1):
        raise ValueError(f"dim must be a power of two in 2..256, got {dim}")
    rng = np.random.default_rng(seed)
    return DensityOperator.from_matrix(_random_branch(rng, dim))


def random_cq_state(seed: int, k: int = 2) -> DensityOperator:
    """Seeded two-qubit state that is classical on the leading qubit.

    Branch states sit on the computational basis of the measured (leading)
    side: rho = sum_i p_i |i><i| (x) tau_i, so discord measured on A is zero
    and the trailing-ordered block grid is diagonal.
    """
    if k not in (1, 2):
        raise ValueError(f"branch count must be 1 or 2, got {k}")
    rng = np.random.default_rng(seed)
    probs = rng.random(k)
    probs = probs / probs.sum()
    rho = np.zeros((4, 4), dtype=np.complex128)
    for i in range(k):
        rho[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = probs[i] * _random_branch(rng, 2)
    return DensityOperator.from_matrix(rho, partition=(1, 1))
