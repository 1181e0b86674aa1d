"""Unittests for the two-mode Fock-space algebra."""
import os
import tempfile
from unittest import TestCase

import numpy as np

from entangledparity.core.errors import DimensionError, NonFiniteError
from entangledparity.core.fock import (
    ModeIndexer,
    OperatorMatrix,
    TwoModeState,
    annihilation_matrix,
    block_projector,
    cross_sector_leakage,
    embed,
    exp_series_apply,
    expectation,
    identity,
    matrix_exponential,
    mode_operators,
    number_matrix,
    phase_factors,
    quadrature_operators,
    total_photon_mask,
)
from tests.testbeds import MockFockTestBed


class TestModeIndexer(TestCase):
    def setUp(self):
        self.indexer = ModeIndexer(4)

    def test_index(self):
        # Mode a is the major index
        self.assertEqual(self.indexer.index(0, 0), 0)
        self.assertEqual(self.indexer.index(0, 3), 3)
        self.assertEqual(self.indexer.index(1, 0), 4)
        self.assertEqual(self.indexer.index(3, 3), 15)
        for k in range(16):
            self.assertEqual(self.indexer.index(*self.indexer.modes(k)), k)

    def test_out_of_range(self):
        with self.assertRaises(DimensionError):
            self.indexer.index(4, 0)
        with self.assertRaises(DimensionError):
            self.indexer.modes(16)
        with self.assertRaises(DimensionError):
            ModeIndexer(0)

    def test_swap_permutation(self):
        perm = self.indexer.swap_permutation()
        self.assertEqual(perm[self.indexer.index(1, 3)], self.indexer.index(3, 1))
        np.testing.assert_array_equal(perm[perm], np.arange(16))


class TestPhaseFactors(TestCase):
    def test_quarter_turns_are_exact(self):
        k = np.arange(-5, 6)
        powers = np.array([1, 1j, -1, -1j])
        np.testing.assert_array_equal(phase_factors(k, np.pi / 2), powers[k % 4])
        np.testing.assert_array_equal(phase_factors(k, -np.pi / 2), powers[-k % 4])
        np.testing.assert_array_equal(phase_factors(k, np.pi), powers[2 * k % 4])
        np.testing.assert_array_equal(phase_factors(k, 0.0), np.ones(len(k)))

    def test_general_phase(self):
        k = np.arange(4)
        np.testing.assert_allclose(phase_factors(k, 0.3), np.exp(0.3j * k), atol=1e-15)


class TestTwoModeState(TestCase):
    def setUp(self):
        self.testbed = MockFockTestBed()

    def test_construction(self):
        state = TwoModeState.from_product([1, 0, 0], [0, 1, 0])
        self.assertEqual(state.cutoff, 3)
        self.assertEqual(state.amplitude(0, 1), 1.0)
        self.assertEqual(len(state), 9)

        with self.assertRaises(DimensionError):
            TwoModeState(np.ones(8), 3)
        with self.assertRaises(NonFiniteError):
            TwoModeState(np.full(9, np.nan), 3)
        with self.assertRaises(DimensionError):
            TwoModeState.from_product([1, 0], [1, 0, 0])

    def test_immutable(self):
        with self.assertRaises(ValueError):
            self.testbed.state.amplitudes[0] = 1.0

    def test_norms(self):
        state = self.testbed.state
        self.assertAlmostEqual(state.norm(), 1.0, places=12)
        self.assertAlmostEqual(state.norm_deficit(), 0.0, places=12)
        self.assertAlmostEqual(
            state.sector_weight(self.testbed.max_total), 1.0, places=12
        )
        self.assertEqual(state.sector_weight(-1), 0.0)

        scaled = TwoModeState(2 * state.amplitudes, state.cutoff)
        self.assertAlmostEqual(scaled.normalized().norm(), 1.0, places=12)
        with self.assertRaises(ValueError):
            TwoModeState(np.zeros(4), 2).normalized()

    def test_grid_and_inner(self):
        state = self.testbed.state
        self.assertEqual(state.grid()[1, 2], state.amplitude(1, 2))
        self.assertAlmostEqual(state.inner(state), 1.0, places=12)

    def test_json(self):
        state = self.testbed.state
        loaded = TwoModeState.from_json(state.to_json())
        np.testing.assert_array_equal(loaded.amplitudes, state.amplitudes)


class TestOperatorMatrix(TestCase):
    def setUp(self):
        self.cutoff = 5
        self.A, self.B = mode_operators(self.cutoff)

    def test_shapes(self):
        self.assertEqual(annihilation_matrix(3).shape, (3, 3))
        self.assertEqual(self.A.shape, (25, 25))
        with self.assertRaises(DimensionError):
            OperatorMatrix(np.eye(4), 3)
        with self.assertRaises(DimensionError):
            OperatorMatrix(np.eye(9), 3, modes=3)

    def test_annihilation(self):
        a = annihilation_matrix(4).entries
        self.assertEqual(a[0, 1], 1.0)
        self.assertAlmostEqual(a[2, 3], np.sqrt(3))
        np.testing.assert_allclose(
            (annihilation_matrix(4).adjoint() @ annihilation_matrix(4)).entries,
            number_matrix(4).entries,
        )

    def test_embed(self):
        a = annihilation_matrix(self.cutoff)
        np.testing.assert_array_equal(self.A.entries, np.kron(a.entries, np.eye(5)))
        np.testing.assert_array_equal(self.B.entries, np.kron(np.eye(5), a.entries))
        with self.assertRaises(ValueError):
            embed(a, "C", self.cutoff)
        with self.assertRaises(DimensionError):
            embed(self.A, "A", self.cutoff)

    def test_commutator_on_low_sectors(self):
        # [A, A^dag] = I away from the truncation edge
        comm = self.A @ self.A.adjoint() - self.A.adjoint() @ self.A
        mask = total_photon_mask(self.cutoff, self.cutoff - 2)
        self.assertLess(comm.max_abs_diff(identity(self.cutoff), mask), 1e-12)

        # Different modes commute exactly
        comm = self.A @ self.B - self.B @ self.A
        self.assertEqual(float(np.max(np.abs(comm.entries))), 0.0)

    def test_algebra(self):
        op = self.A + self.B
        self.assertEqual((op - self.B).max_abs_diff(self.A), 0.0)
        self.assertEqual((2 * self.A).max_abs_diff(self.A * 2.0), 0.0)
        self.assertEqual((np.complex128(1j) * self.A).max_abs_diff(self.A * 1j), 0.0)
        self.assertEqual((-self.A).max_abs_diff(self.A * -1), 0.0)

        with self.assertRaises(DimensionError):
            self.A @ mode_operators(4)[0]
        with self.assertRaises(DimensionError):
            self.A + annihilation_matrix(self.cutoff)

    def test_apply_to_states(self):
        state = MockFockTestBed(cutoff=self.cutoff).state
        result = self.A @ state
        self.assertIsInstance(result, TwoModeState)
        np.testing.assert_array_equal(
            result.amplitudes, self.A.entries @ state.amplitudes
        )
        with self.assertRaises(DimensionError):
            annihilation_matrix(self.cutoff) @ state

    def test_residuals(self):
        X1, P1, X2, P2 = quadrature_operators(self.cutoff)
        for op in (X1, P1, X2, P2):
            self.assertLess(op.hermiticity_residual(), 1e-15)
        self.assertFalse(self.A.is_hermitian())
        self.assertTrue(identity(self.cutoff).is_unitary())
        self.assertTrue(number_matrix(4).is_diagonal())

    def test_block_structure(self):
        # The number operator and A^dag B conserve total photon number
        self.assertEqual(cross_sector_leakage(self.A.adjoint() @ self.B), 0.0)
        self.assertGreater(cross_sector_leakage(self.A), 0.0)

        P = block_projector(self.cutoff, 2)
        self.assertEqual(int(np.trace(P.entries).real), 6)

    def test_exponential_and_series(self):
        G = (self.A.adjoint() @ self.B - self.B.adjoint() @ self.A) * 0.4
        U = matrix_exponential(G)
        self.assertLess(U.unitarity_residual(), 1e-12)

        vector = np.zeros(25, dtype=complex)
        vector[ModeIndexer(self.cutoff).index(1, 1)] = 1.0
        np.testing.assert_allclose(
            exp_series_apply(G, vector), U.entries @ vector, atol=1e-13
        )

        # A fixed number of terms truncates the series
        np.testing.assert_allclose(
            exp_series_apply(G, vector, terms=1), vector + G.entries @ vector
        )

    def test_expectation(self):
        state = TwoModeState.from_product([0, 0, 1, 0, 0], [0, 1, 0, 0, 0])
        N_a = embed(number_matrix(self.cutoff), "A", self.cutoff)
        self.assertEqual(expectation(state, N_a), 2.0)
        with self.assertRaises(DimensionError):
            expectation(state, number_matrix(self.cutoff))

    def test_json_and_storage(self):
        op = self.A + self.B * 1j
        loaded = OperatorMatrix.from_json(op.to_json())
        self.assertEqual(loaded.max_abs_diff(op), 0.0)

        path = os.path.join(tempfile.mkdtemp(), "cache", "op.pkl")
        op.save(path)
        self.assertEqual(OperatorMatrix.load(path).max_abs_diff(op), 0.0)
