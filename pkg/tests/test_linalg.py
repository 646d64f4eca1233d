"""Matrix-kernel tests with independent oracles for the derived values."""

from __future__ import annotations

import numpy as np
import pytest

from conftest import CROSS_LINKS, GOLDEN, PHASE_COMPLETE, PHASE_RING, SIGN_COMPLETE, SINGLE_PHASE_EDGE
from graphdiscord import (
    DEFAULT_TOL,
    Tolerance,
    commutator_norm,
    hermitian_eigenvalues,
    is_hermitian,
    is_normal,
    is_psd,
    kron,
    maxnorm,
    partial_trace,
    psd_necessary_minors,
    psd_sufficient_split,
    purity,
)
from graphdiscord.linalg import ContractViolation, DimensionError

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
K_BLOCK = np.array([[1, 1j], [-1j, 1]], dtype=complex)


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_first_mixture_term(self):
        # First product term of the known complete-graph state decomposition.
        left = np.array([[1, 1], [1, 1]]) / 2
        right = K_BLOCK / 2
        expected = (
            np.array(
                [
                    [1, 1j, 1, 1j],
                    [-1j, 1, -1j, 1],
                    [1, 1j, 1, 1j],
                    [-1j, 1, -1j, 1],
                ]
            )
            / 4
        )
        np.testing.assert_allclose(kron(left, right), expected, atol=1e-15)

    def test_basis_vector_shift(self):
        v = np.array([[1], [0]], dtype=complex)
        np.testing.assert_array_equal(kron(SX, v), np.array([[0], [0], [1], [0]]))

    def test_index_formula_exhaustive(self):
        rng = np.random.default_rng(11)
        for ra, ca, rb, cb in [(2, 2, 2, 2), (2, 3, 4, 2), (3, 4, 2, 3)]:
            a = rng.normal(size=(ra, ca)) + 1j * rng.normal(size=(ra, ca))
            b = rng.normal(size=(rb, cb)) + 1j * rng.normal(size=(rb, cb))
            out = kron(a, b)
            for i in range(ra):
                for j in range(ca):
                    for k in range(rb):
                        for l in range(cb):
                            assert out[i * rb + k, j * cb + l] == a[i, j] * b[k, l]


class TestPredicates:
    def test_hermitian_golden(self):
        assert is_hermitian(PHASE_RING.matrix)
        assert is_hermitian(CROSS_LINKS.matrix[:2, 2:])  # the K-type corner block

    def test_hermitian_rejects_nilpotent(self):
        assert not is_hermitian(np.array([[0, 1], [0, 0]]))

    def test_hermitian_requires_square(self):
        with pytest.raises(DimensionError):
            is_hermitian(np.zeros((2, 3)))

    def test_normal(self):
        assert is_normal(K_BLOCK / 4)
        assert not is_normal(np.array([[0, 1], [0, 0]]))

    def test_hermitian_implies_normal(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            h = (a + a.conj().T) / 2
            assert is_normal(h)


class TestCommutator:
    def test_equal_blocks_commute(self):
        b = PHASE_COMPLETE.matrix[:2, :2]
        assert commutator_norm(b, b) == 0.0

    def test_cross_links_blocks_commute(self):
        a11 = CROSS_LINKS.matrix[:2, :2]
        a12 = CROSS_LINKS.matrix[:2, 2:]
        assert commutator_norm(a11, a12) <= 1e-16

    def test_pauli_xz(self):
        # By hand: XZ = [[0,-1],[1,0]], ZX = [[0,1],[-1,0]], diff maxnorm 2.
        assert commutator_norm(SX, SZ) == pytest.approx(2.0)

    def test_symmetry_and_self(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            assert commutator_norm(a, b) == pytest.approx(commutator_norm(b, a), abs=1e-12)
            assert commutator_norm(a, a) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            commutator_norm(np.eye(2), np.eye(3))


def _charpoly_roots(h: np.ndarray) -> np.ndarray:
    """Brute-force eigenvalues from characteristic polynomial coefficients."""
    n = h.shape[0]
    tr = np.trace(h).real
    if n == 2:
        coeffs = [1.0, -tr, np.linalg.det(h).real]
    elif n == 3:
        tr2 = np.trace(h @ h).real
        coeffs = [1.0, -tr, (tr**2 - tr2) / 2, -np.linalg.det(h).real]
    else:
        raise ValueError("oracle covers dims 2 and 3 only")
    return np.sort(np.roots(coeffs).real)


class TestEigenvalues:
    def test_rank_one_projector(self):
        # Verified by squaring: the single-edge state is idempotent.
        m = SINGLE_PHASE_EDGE.matrix
        np.testing.assert_allclose(m @ m, m, atol=1e-15)
        np.testing.assert_allclose(hermitian_eigenvalues(m), [0, 0, 0, 1], atol=1e-12)

    def test_maximally_mixed(self):
        np.testing.assert_allclose(hermitian_eigenvalues(np.eye(4) / 4), [0.25] * 4)

    def test_sign_complete_projector(self):
        v = np.array([1, -1, -1, 1]) / 2
        np.testing.assert_allclose(SIGN_COMPLETE.matrix, np.outer(v, v), atol=1e-15)
        np.testing.assert_allclose(
            hermitian_eigenvalues(SIGN_COMPLETE.matrix), [0, 0, 0, 1], atol=1e-12
        )

    def test_matches_charpoly_roots(self):
        rng = np.random.default_rng(17)
        for n in (2, 3):
            for _ in range(50):
                a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                h = (a + a.conj().T) / 2
                np.testing.assert_allclose(
                    hermitian_eigenvalues(h), _charpoly_roots(h), atol=1e-8
                )

    def test_sum_matches_trace(self):
        rng = np.random.default_rng(19)
        for _ in range(50):
            a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
            h = (a + a.conj().T) / 2
            assert abs(hermitian_eigenvalues(h).sum() - np.trace(h).real) <= 1e-9

    def test_rejects_non_hermitian(self):
        with pytest.raises(ContractViolation):
            hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))


class TestPsd:
    def test_golden_states_are_psd(self):
        for case in GOLDEN:
            assert is_psd(case.matrix), case.name

    def test_indefinite(self):
        assert not is_psd(np.array([[1, 2], [2, 1]], dtype=float))

    def test_minor_condition_necessary(self):
        rng = np.random.default_rng(23)
        for _ in range(1000):
            n = int(rng.integers(2, 6))
            g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            m = g @ g.conj().T
            assert psd_necessary_minors(m).all_minors_nonneg

    def test_minors_on_phase_complete(self):
        rep = psd_necessary_minors(PHASE_COMPLETE.matrix)
        assert rep.all_minors_nonneg
        # Off-diagonal pair (0,1): (3*3 - |2+i|^2) / 144 = 4 / 144.
        assert rep.worst_minor >= 0

    def test_phase_ring_breaks_dominance_but_is_psd(self):
        rep = psd_necessary_minors(PHASE_RING.matrix)
        assert rep.all_minors_nonneg
        assert not rep.diag_dominance
        assert is_psd(PHASE_RING.matrix)

    def test_identity_passes_both(self):
        rep = psd_necessary_minors(np.eye(5))
        assert rep.diag_dominance and rep.all_minors_nonneg


class TestSufficientSplit:
    def test_phase_complete_block(self):
        block = np.array([[3, 2 + 1j], [2 - 1j, 3]]) / 12
        assert psd_sufficient_split(block).satisfied

    def test_sufficiency_only(self):
        m = np.array([[1, 0.6 + 0.6j], [0.6 - 0.6j, 1]])
        rep = psd_sufficient_split(m)
        assert not rep.satisfied
        assert is_psd(m)  # eigenvalues 1 +/- |0.6+0.6i| stay nonnegative

    def test_all_ones(self):
        j4 = np.ones((4, 4))
        rep = psd_sufficient_split(j4)
        assert not rep.satisfied
        assert rep.sign_gauge_consistent
        np.testing.assert_array_equal(rep.gauge, np.zeros(4, dtype=int))
        assert is_psd(j4)  # eigenvalues {0, 0, 0, 4}

    def test_inconsistent_gauge(self):
        # Triangle with signs +, +, -: parity constraints have no 2-coloring.
        m = np.array([[2, 1, 1], [1, 2, -1], [1, -1, 2]], dtype=float)
        assert not psd_sufficient_split(m).sign_gauge_consistent

    def test_satisfied_implies_psd(self):
        rng = np.random.default_rng(29)
        hits = 0
        for _ in range(1000):
            n = int(rng.integers(2, 9))
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            h = (a + a.conj().T) / 2
            # Bias diagonals upward so the satisfied branch is exercised too.
            h += np.eye(n) * rng.uniform(0, n)
            if psd_sufficient_split(h).satisfied:
                hits += 1
                assert hermitian_eigenvalues(h)[0] >= -1e-9
        assert hits > 50


class TestPartialTrace:
    def test_single_phase_edge_marginal(self):
        out = partial_trace(SINGLE_PHASE_EDGE.matrix, (2, 2), "A")
        np.testing.assert_allclose(out, np.eye(2) / 2, atol=1e-15)

    def test_product_state_marginal_is_singular(self):
        rng = np.random.default_rng(31)
        g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        sigma = g @ g.conj().T
        sigma /= sigma.trace()
        proj = np.zeros((2, 2))
        proj[0, 0] = 1
        out = partial_trace(kron(proj, sigma), (2, 2), "A")
        np.testing.assert_allclose(out, proj, atol=1e-12)

    def test_kron_factorization(self):
        rng = np.random.default_rng(37)
        for _ in range(30):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            out = partial_trace(kron(a, b), (2, 2), "A")
            np.testing.assert_allclose(out, a * np.trace(b), atol=1e-12)
            np.testing.assert_allclose(
                partial_trace(kron(a, b), (2, 2), "B"), b * np.trace(a), atol=1e-12
            )

    def test_trace_preserved(self):
        rng = np.random.default_rng(41)
        g = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        m = g @ g.conj().T
        for dims in [(2, 4), (4, 2)]:
            for keep in "AB":
                assert np.trace(partial_trace(m, dims, keep)) == pytest.approx(
                    np.trace(m).real
                )

    def test_dim_mismatch(self):
        with pytest.raises(DimensionError):
            partial_trace(np.eye(6), (2, 2), "A")


class TestPurity:
    def test_golden_pure_states(self):
        assert purity(PHASE_RING.matrix) == pytest.approx(1.0, abs=1e-12)
        from conftest import LOOP_TRIANGLE

        assert purity(LOOP_TRIANGLE.matrix) == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed(self):
        assert purity(np.eye(4) / 4) == pytest.approx(0.25)


class TestTolerance:
    def test_threshold(self):
        t = Tolerance(1e-9, 1e-6)
        assert t.threshold(10.0) == pytest.approx(1e-9 + 1e-5)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Tolerance(-1.0, 0.0)

    def test_default(self):
        assert DEFAULT_TOL.abs_eps == 1e-9 and DEFAULT_TOL.rel_eps == 1e-9

    def test_maxnorm(self):
        assert maxnorm(np.array([[1, -3j], [2, 0]])) == 3.0
