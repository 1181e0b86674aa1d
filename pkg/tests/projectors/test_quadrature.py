"""Unittests for the integral representations of the projector."""
from unittest import TestCase

import numpy as np

from entangledparity.core.errors import CostGuardError, DimensionError
from entangledparity.core.quadrature import QuadratureGrid
from entangledparity.projectors.parity import (
    compare_projectors,
    mu_fock,
    parity_matrix,
    swap_operator,
)
from entangledparity.projectors.quadrature import (
    check_coherent_cost,
    coverage_warning,
    mu_coherent_quadrature,
    mu_from_eta_quadrature,
    mu_from_xi_quadrature,
    parity_from_coherent_quadrature,
    projector_radius,
    representation_expectation,
)
from entangledparity.states.fock import noon_state
from tests.testbeds import MockFockTestBed, MockGridTestBed


class TestQuadratureProjectors(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.testbed = MockGridTestBed()
        cls.cutoff = 10
        cls.eta = mu_from_eta_quadrature(cls.testbed.grid, cls.cutoff)
        cls.xi = mu_from_xi_quadrature(cls.testbed.grid, cls.cutoff)

    def test_eta_matches_fock_sum(self):
        reference = mu_fock(-np.pi / 2, self.cutoff)
        self.assertLess(compare_projectors(self.eta, reference, 4), 1e-6)

    def test_xi_matches_fock_sum(self):
        reference = mu_fock(np.pi / 2, self.cutoff)
        self.assertLess(compare_projectors(self.xi, reference, 4), 1e-6)

    def test_xi_is_conjugate_of_eta(self):
        self.assertLess(compare_projectors(self.xi, self.eta.conj(), 4), 1e-6)
        self.assertLess(compare_projectors(self.xi, self.eta.transpose(), 4), 1e-6)
        # Not the adjoint: the eta projector is Hermitian
        self.assertGreater(compare_projectors(self.xi, self.eta.adjoint(), 4), 0.5)

    def test_hermitian(self):
        self.assertLess(self.eta.hermiticity_residual(), 1e-6)
        self.assertLess(self.xi.hermiticity_residual(), 1e-6)

    def test_parity_from_coherent_states(self):
        parity = parity_from_coherent_quadrature(self.testbed.grid, 8)
        self.assertEqual(parity.modes, 1)
        self.assertLess(parity.max_abs_diff(parity_matrix(8)), 1e-6)

    def test_coverage_warning(self):
        radius = projector_radius(10)
        self.assertIsNone(coverage_warning(self.testbed.grid, radius, "eta"))
        with self.assertLogs("entangledparity.projectors.quadrature", level="WARNING"):
            message = coverage_warning(QuadratureGrid(3.0, 0.1), radius, "eta")
        self.assertIn("grid radius 3", message)

    def test_dimension_checks(self):
        with self.assertRaises(DimensionError):
            mu_from_eta_quadrature(self.testbed.grid4, 3)
        with self.assertRaises(DimensionError):
            mu_coherent_quadrature(self.testbed.grid, 3)

    def test_representation_expectation(self):
        # Matches <psi|mu|psi> without building the matrix
        for state in (noon_state(2, 6), MockFockTestBed(cutoff=6, max_total=3).state):
            psi = state.amplitudes
            expected = np.vdot(psi, mu_fock(-np.pi / 2, 6) @ psi)
            value = representation_expectation(state, self.testbed.grid, "eta")
            self.assertLess(abs(value - expected), 1e-6)
        with self.assertRaises(ValueError):
            representation_expectation(noon_state(1, 4), self.testbed.grid, "zeta")


class TestCoherentQuadrature(TestCase):
    def test_cost_guard(self):
        grid4 = MockGridTestBed().grid4
        with self.assertRaises(CostGuardError):
            check_coherent_cost(grid4, 5, force=False)
        with self.assertRaises(CostGuardError):
            check_coherent_cost(QuadratureGrid(10.0, 0.05, dimension=4), 2, force=False)
        # Forcing only logs
        with self.assertLogs("entangledparity.projectors.quadrature", level="WARNING"):
            check_coherent_cost(grid4, 5, force=True)

    def test_swap_at_small_cutoff(self):
        M = mu_coherent_quadrature(QuadratureGrid(4.0, 0.2, dimension=4), 2)
        self.assertLess(M.max_abs_diff(swap_operator(2)), 1e-3)
        self.assertLess(M.hermiticity_residual(), 1e-3)
