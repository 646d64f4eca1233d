"""Block decomposition of density operators and zero-discord certificates.

A bipartite state with partition ``(p, q)`` can be viewed as a grid of
blocks in two ways:

* ``leading`` ordering: the grid is indexed by the leading factor's basis,
  so block (x, y) is the contiguous ``2**q x 2**q`` sub-matrix; blocks are
  operators on the trailing factor.
* ``trailing`` ordering: the grid is indexed by the trailing factor's basis,
  block (u, v) collects entries ``rho[(x,u),(y,v)]``; blocks are operators
  on the leading factor.

If every block of the grid indexed by side S is normal and the blocks all
commute, the family is simultaneously diagonalizable and the state is
classical on the *other* side; zero discord then holds for measurements on
that other side.  The verdict therefore checks the grid indexed by the
unmeasured side when asked to certify a given measured side.

Structural certificates (entry identities, split-part commutation, Hermitian
block products, uniform-magnitude normal forms, nested product symmetry,
outer-grid identity, singular marginal) are sufficient conditions evaluated
on the contiguous leading-ordered grid of the declared partition; each one,
when it fires, implies the normal-commuting master criterion on its own
view.  Absence of certificates is reported as ``not_certified``, never as a
claim of nonzero discord.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gates import _partial_transform, conj_partial_fixed
from .graphs import (
    DensityOperator,
    WeightedGraph,
    density_operator,
    edges_same_parity,
    edges_within_blocks,
    resolve_convention,
    uniform_complete,
)
from .linalg import (
    DEFAULT_TOL,
    DimensionError,
    Tolerance,
    as_matrix,
    is_psd,
    kron,
    maxnorm,
    partial_trace,
)

MEASURED_SIDES = ("leading", "trailing")
_SIDE_ALIASES = {"A": "leading", "B": "trailing", "leading": "leading", "trailing": "trailing"}


def normalize_side(measured: str) -> str:
    try:
        return _SIDE_ALIASES[measured]
    except KeyError:
        raise ValueError(f"measured side must be one of {sorted(_SIDE_ALIASES)}, got {measured!r}")


@dataclass(frozen=True)
class BlockView:
    """Grid of sub-matrices of a bipartite density matrix.

    ``blocks[x, y]`` is the inner matrix at grid position (x, y); the grid
    has ``outer_dim`` rows and columns of ``inner_dim x inner_dim`` blocks.
    """

    source: np.ndarray
    outer_dim: int
    inner_dim: int
    ordering: str
    blocks: np.ndarray  # shape (outer, outer, inner, inner)

    def block(self, x: int, y: int) -> np.ndarray:
        return self.blocks[x, y]


def _grid(matrix: np.ndarray, split: tuple[int, int], ordering: str) -> BlockView:
    m = as_matrix(matrix)
    p, q = split
    dl, dt = 2**p, 2**q
    if dl * dt != m.shape[0] or m.shape[0] != m.shape[1]:
        raise DimensionError(f"split {split} does not factor shape {m.shape}")
    t = m.reshape(dl, dt, dl, dt)
    if ordering == "leading":
        blocks = t.transpose(0, 2, 1, 3)
        outer, inner = dl, dt
    elif ordering == "trailing":
        blocks = t.transpose(1, 3, 0, 2)
        outer, inner = dt, dl
    else:
        raise ValueError(f"ordering must be 'leading' or 'trailing', got {ordering!r}")
    return BlockView(source=m, outer_dim=outer, inner_dim=inner, ordering=ordering, blocks=blocks)


def block_partition(rho: DensityOperator, ordering: str = "leading") -> BlockView:
    """Partition a state into its block grid under the declared partition."""
    return _grid(rho.matrix, rho.partition, ordering)


def reassemble(view: BlockView) -> np.ndarray:
    """Inverse of :func:`block_partition`; reproduces the source exactly."""
    b = view.blocks
    if view.ordering == "leading":
        t = b.transpose(0, 2, 1, 3)
    else:
        t = b.transpose(2, 0, 3, 1)
    d = view.outer_dim * view.inner_dim
    return t.reshape(d, d)


def _flat_blocks(view: BlockView) -> list[np.ndarray]:
    d = view.outer_dim
    return [view.blocks[x, y] for x in range(d) for y in range(d)]


def blocks_normal_commuting(view: BlockView, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Master zero-discord criterion: every block normal, every pair commuting.

    Thresholds scale with the product of the operands' max-norms so the
    verdict is dimensionless.  Returns (passed, worst residual).
    """
    mats = _flat_blocks(view)
    norms = [maxnorm(b) for b in mats]
    ok = True
    worst = 0.0
    for b, nb in zip(mats, norms):
        r = maxnorm(b @ b.conj().T - b.conj().T @ b)
        worst = max(worst, r)
        if r > tol.threshold(nb * nb):
            ok = False
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            r = maxnorm(mats[i] @ mats[j] - mats[j] @ mats[i])
            worst = max(worst, r)
            if r > tol.threshold(norms[i] * norms[j]):
                ok = False
    return ok, worst


@dataclass(frozen=True)
class PsdParts:
    """Split of a block into four PSD parts: A = B - C + i D - i E."""

    real_pos: np.ndarray
    real_neg: np.ndarray
    imag_pos: np.ndarray
    imag_neg: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.real_pos - self.real_neg + 1j * self.imag_pos - 1j * self.imag_neg

    def all_parts(self) -> tuple[np.ndarray, ...]:
        return (self.real_pos, self.real_neg, self.imag_pos, self.imag_neg)


def _spectral_split(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, v = np.linalg.eigh(h)
    pos = (v * np.maximum(w, 0.0)) @ v.conj().T
    neg = (v * np.maximum(-w, 0.0)) @ v.conj().T
    return pos, neg


def bnc_decompose(block) -> PsdParts:
    """Canonical PSD split of a square block.

    The Hermitian and anti-Hermitian components are each split into spectral
    positive and negative parts; the four pieces are PSD and reconstruct the
    block exactly.
    """
    a = as_matrix(block)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"block must be square, got {a.shape}")
    herm = (a + a.conj().T) / 2
    skew = (a - a.conj().T) / 2j
    b, c = _spectral_split(herm)
    d, e = _spectral_split(skew)
    return PsdParts(real_pos=b, real_neg=c, imag_pos=d, imag_neg=e)


def split_parts_commute(view: BlockView, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Certificate: the PSD parts of every block all commute with each other."""
    parts: list[np.ndarray] = []
    for b in _flat_blocks(view):
        parts.extend(bnc_decompose(b).all_parts())
    norms = [maxnorm(p) for p in parts]
    ok = True
    worst = 0.0
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            r = maxnorm(parts[i] @ parts[j] - parts[j] @ parts[i])
            worst = max(worst, r)
            if r > tol.threshold(norms[i] * norms[j]):
                ok = False
    return ok, worst


def block_products_hermitian(view: BlockView, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Certificate: every block and every pairwise block product is Hermitian.

    Hermitian blocks with Hermitian products commute pairwise, which implies
    the master criterion on the same view.
    """
    mats = _flat_blocks(view)
    norms = [maxnorm(b) for b in mats]
    ok = True
    worst = 0.0
    for b, nb in zip(mats, norms):
        r = maxnorm(b - b.conj().T)
        worst = max(worst, r)
        if r > tol.threshold(nb):
            ok = False
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            prod = mats[i] @ mats[j]
            r = maxnorm(prod - prod.conj().T)
            worst = max(worst, r)
            if r > tol.threshold(norms[i] * norms[j]):
                ok = False
    return ok, worst


def entry_identity_two_qubit(rho: DensityOperator, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Two-qubit certificate: conjugate partial-gate fixed point plus the
    scalar identity (r00 - r11) r03 = r01 (r02 - r13)."""
    m = rho.matrix
    if m.shape != (4, 4):
        raise DimensionError(f"entry identity needs a 4x4 state, got {m.shape}")
    if not conj_partial_fixed(rho, 1, tol):
        return False
    lhs = (m[0, 0] - m[1, 1]) * m[0, 3]
    rhs = m[0, 1] * (m[0, 2] - m[1, 3])
    return bool(abs(lhs - rhs) <= tol.threshold(maxnorm(m) ** 2))


def flip_symmetry_two_qubit(rho: DensityOperator, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Two-qubit certificate: invariance under bit-flip conjugation on either
    qubit (with entrywise conjugation on the trailing one)."""
    m = rho.matrix
    if m.shape != (4, 4):
        raise DimensionError(f"flip symmetry needs a 4x4 state, got {m.shape}")
    x = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    ix = kron(np.eye(2), x)
    xi = kron(x, np.eye(2))
    t = tol.threshold(maxnorm(m))
    trailing = maxnorm(np.conj(ix @ m @ ix) - m)
    leading = maxnorm(xi @ m @ xi - m)
    return bool(trailing <= t and leading <= t)


def _classify_two_by_two(b: np.ndarray, t: float) -> tuple[str | None, float]:
    """Best normal-form fit of a uniform-magnitude 2x2 block.

    Returns (family, residual) where family is "uniform" for z*[[1,s],[s,1]],
    "phase" for z*[[1,i s],[-i s,1]] (s = +/-1, z complex), or None when
    neither fits within t.
    """
    z = b[0, 0]
    best_family = None
    best = np.inf
    diag = abs(b[1, 1] - z)
    for s in (1.0, -1.0):
        r = max(diag, abs(b[0, 1] - s * z), abs(b[1, 0] - s * z))
        if r < best:
            best, best_family = r, "uniform"
        r = max(diag, abs(b[0, 1] - 1j * s * z), abs(b[1, 0] + 1j * s * z))
        if r < best:
            best, best_family = r, "phase"
    if best <= t:
        return best_family, best
    return None, best


def uniform_magnitude_blocks(rho: DensityOperator, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Certificate over the (n-1, 1) grid: every 2x2 block has one entry
    magnitude and matches a commuting normal form.

    Nonzero blocks must all be complex multiples of [[1, s],[s, 1]] or all
    complex multiples of [[1, i s],[-i s, 1]] (s = +/-1 per block).  Within
    one family the blocks are normal and pairwise commuting, so firing
    implies the master criterion on the same grid.
    """
    n = rho.n_qubits
    if n < 2:
        raise DimensionError("uniform-magnitude certificate needs at least 2 qubits")
    view = _grid(rho.matrix, (n - 1, 1), "leading")
    t = tol.threshold(maxnorm(rho.matrix))
    families: set[str] = set()
    worst = 0.0
    ok = True
    for b in _flat_blocks(view):
        mags = np.abs(b)
        if mags.max() <= t:
            continue
        spread = float(mags.max() - mags.min())
        worst = max(worst, spread)
        if spread > t:
            ok = False
            continue
        family, resid = _classify_two_by_two(b, t)
        worst = max(worst, resid)
        if family is None:
            ok = False
        else:
            families.add(family)
    if len(families) > 1:
        ok = False
    return ok, worst


def nested_product_symmetry(rho: DensityOperator, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Certificate on the first-qubit 2x2 grid: all block products agree in
    both orders, compared sub-block by sub-block.

    With the off-diagonal blocks conjugate to each other, pairwise
    commutation forces every block to be normal, hence the master criterion
    on the same grid.
    """
    n = rho.n_qubits
    if n < 2:
        raise DimensionError("nested product symmetry needs at least 2 qubits")
    view = _grid(rho.matrix, (1, n - 1), "leading")
    mats = _flat_blocks(view)
    norms = [maxnorm(b) for b in mats]
    ok = True
    worst = 0.0
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            r = maxnorm(mats[i] @ mats[j] - mats[j] @ mats[i])
            worst = max(worst, r)
            if r > tol.threshold(norms[i] * norms[j]):
                ok = False
    return ok, worst


def outer_grid_identity(view: BlockView, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Certificate on a 4x4 outer grid: (M11 - M22) M14 = M12 (M13 - M24)."""
    if view.outer_dim != 4:
        raise DimensionError(f"outer grid must be 4x4, got {view.outer_dim}")
    b = view.blocks
    lhs = (b[0, 0] - b[1, 1]) @ b[0, 3]
    rhs = b[0, 1] @ (b[0, 2] - b[1, 3])
    r = maxnorm(lhs - rhs)
    return bool(r <= tol.threshold(maxnorm(view.source) ** 2)), r


def commuting_product_mixture(
    rho: DensityOperator,
    decomposition: list[tuple[float, np.ndarray, np.ndarray]],
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Certificate from an explicit mixture of product states.

    Fires when sum_i p_i kron(f_i, g_i) reproduces the state and the first
    factors all commute pairwise.
    """
    if not decomposition:
        raise ValueError("decomposition must have at least one term")
    total = 0.0
    firsts: list[np.ndarray] = []
    acc = np.zeros_like(rho.matrix)
    for item in decomposition:
        try:
            weight, f1, f2 = item
        except (TypeError, ValueError) as exc:
            raise ValueError(f"malformed decomposition term {item!r}") from exc
        if weight < -tol.abs_eps:
            raise ValueError(f"negative weight {weight}")
        a, b = as_matrix(f1), as_matrix(f2)
        for factor in (a, b):
            if abs(factor.trace() - 1.0) > tol.threshold(1.0) or not is_psd(factor, tol):
                raise ValueError("decomposition factors must be valid states")
        total += weight
        firsts.append(a)
        acc = acc + weight * kron(a, b)
    if abs(total - 1.0) > tol.threshold(1.0):
        raise ValueError(f"weights sum to {total}, expected 1")
    if maxnorm(acc - rho.matrix) > tol.threshold(maxnorm(rho.matrix)):
        return False
    for i in range(len(firsts)):
        for j in range(i + 1, len(firsts)):
            r = maxnorm(firsts[i] @ firsts[j] - firsts[j] @ firsts[i])
            if r > tol.threshold(maxnorm(firsts[i]) * maxnorm(firsts[j])):
                return False
    return True


def singular_marginal(rho: DensityOperator, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Determinant test of the leading-factor marginal.

    Returns (singular, |det|).  A singular marginal certifies zero discord
    only when the leading factor is a single qubit; callers scope that.
    """
    p, q = rho.partition
    reduced = partial_trace(rho.matrix, (2**p, 2**q), keep="A")
    det = float(abs(np.linalg.det(reduced)))
    return bool(det <= tol.threshold(1.0)), det


def uniform_complete_certificate(
    g: WeightedGraph,
    convention: str | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Graph certificate: uniform complete graph, cross-checked against the
    master criterion of the built state."""
    if not uniform_complete(g, convention, tol):
        return False
    rho = density_operator(g, convention, tol)
    ok, _ = blocks_normal_commuting(block_partition(rho, "leading"), tol)
    return ok


@dataclass(frozen=True)
class CertificateOutcome:
    name: str
    passed: bool
    residual: float


@dataclass(frozen=True)
class CertificateReport:
    """Battery result: which sufficient conditions fired, with residuals."""

    verdict: str
    certificates: tuple[CertificateOutcome, ...]
    convention: str | None
    measured_side: str
    tolerance: Tolerance
    notes: tuple[str, ...] = ()

    @property
    def fired(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.certificates if c.passed)

    def outcome(self, name: str) -> CertificateOutcome:
        for c in self.certificates:
            if c.name == name:
                return c
        raise KeyError(name)


def master_view_ordering(measured: str) -> str:
    """Grid ordering whose normal-commuting blocks certify the measured side.

    Measuring side S is classical exactly when the blocks indexed by the
    other side (operators on S, diagonalized by the measurement basis) form
    a commuting normal family.
    """
    return "trailing" if normalize_side(measured) == "leading" else "leading"


def zero_discord_verdict(
    source: WeightedGraph | DensityOperator,
    measured: str = "leading",
    tol: Tolerance = DEFAULT_TOL,
) -> CertificateReport:
    """Run every applicable certificate and aggregate disjunctively."""
    side = normalize_side(measured)
    outcomes: list[CertificateOutcome] = []
    notes: list[str] = []

    if isinstance(source, WeightedGraph):
        g = source
        conv = resolve_convention(g)
        outcomes.append(
            CertificateOutcome("edge_parity", edges_same_parity(g), 0.0)
        )
        outcomes.append(
            CertificateOutcome("edges_within_blocks", edges_within_blocks(g), 0.0)
        )
        outcomes.append(
            CertificateOutcome("uniform_complete", uniform_complete_certificate(g, conv, tol), 0.0)
        )
        rho = density_operator(g, conv, tol)
    else:
        rho = source
        conv = rho.convention

    n = rho.n_qubits
    p, _ = rho.partition
    lead_view = block_partition(rho, "leading")

    if rho.dim == 4:
        outcomes.append(
            CertificateOutcome("entry_identity", entry_identity_two_qubit(rho, tol), 0.0)
        )
        outcomes.append(
            CertificateOutcome("flip_symmetry", flip_symmetry_two_qubit(rho, tol), 0.0)
        )
    ok, r = split_parts_commute(lead_view, tol)
    outcomes.append(CertificateOutcome("split_parts_commute", ok, r))
    ok, r = block_products_hermitian(lead_view, tol)
    outcomes.append(CertificateOutcome("block_products_hermitian", ok, r))
    if n >= 2:
        ok, r = uniform_magnitude_blocks(rho, tol)
        outcomes.append(CertificateOutcome("uniform_magnitude_blocks", ok, r))
    if p == 1 and n >= 2:
        ok, r = nested_product_symmetry(rho, tol)
        outcomes.append(CertificateOutcome("nested_product_symmetry", ok, r))
    if p == 2:
        ok, r = outer_grid_identity(lead_view, tol)
        outcomes.append(CertificateOutcome("outer_grid_identity", ok, r))
    singular, det = singular_marginal(rho, tol)
    if p == 1:
        outcomes.append(CertificateOutcome("singular_marginal", singular, det))
    else:
        # Determinant reported for information; certification needs p = 1.
        outcomes.append(CertificateOutcome("singular_marginal", False, det))
        if singular:
            notes.append("marginal is singular but the measured factor is not a single qubit; not certifying")

    master_view = block_partition(rho, master_view_ordering(side))
    ok, r = blocks_normal_commuting(master_view, tol)
    outcomes.append(CertificateOutcome("normal_commuting_blocks", ok, r))

    entry = next((c for c in outcomes if c.name == "entry_identity"), None)
    if entry is not None and entry.passed:
        lead_ok, _ = blocks_normal_commuting(lead_view, tol)
        if not lead_ok:
            notes.append("entry identity fired but the leading-view blocks are not normal-commuting")

    verdict = "certified_zero" if any(c.passed for c in outcomes) else "not_certified"
    return CertificateReport(
        verdict=verdict,
        certificates=tuple(outcomes),
        convention=conv,
        measured_side=side,
        tolerance=tol,
        notes=tuple(notes),
    )
