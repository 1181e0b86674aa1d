"""Unittests for the parity interferometer."""
from unittest import TestCase

import numpy as np

from entangledparity.core.errors import CutoffError, PipelineMismatchError, SpecError
from entangledparity.core.quadrature import QuadratureGrid
from entangledparity.metrology.closed_form import (
    cs_sv_parity_closed,
    noon_parity_closed,
)
from entangledparity.metrology.interferometer import (
    FirstBeamSplitter,
    Interferometer,
    InterferometerSpec,
    bs1_symmetric_i,
    noon_pipeline_check,
    parity_signal,
    phase_shifter,
)
from entangledparity.projectors.parity import BsParams
from entangledparity.states.spec import StateSpec


class TestComponents(TestCase):
    def test_phase_shifter(self):
        shifter = phase_shifter(0.4, 3)
        self.assertLess(shifter.unitarity_residual(), 1e-14)
        # |2,0> picks up e^{i phi}
        self.assertAlmostEqual(shifter.entries[6, 6], np.exp(0.4j), places=14)
        self.assertAlmostEqual(shifter.entries[0, 0], 1.0, places=14)

    def test_symmetric_beam_splitter(self):
        bs = bs1_symmetric_i(4)
        self.assertLess(bs.unitarity_residual(), 1e-12)
        # |1,0> -> (|1,0> + i |0,1>) / sqrt(2)
        column = bs.entries[:, 4]
        self.assertAlmostEqual(column[4], 1 / np.sqrt(2), places=12)
        self.assertAlmostEqual(column[1], 1j / np.sqrt(2), places=12)

    def test_first_beam_splitter_tokens(self):
        self.assertEqual(FirstBeamSplitter.parse("none").matrix(3), None)
        self.assertEqual(str(FirstBeamSplitter.parse("symmetric-i")), "symmetric-i")
        bs = FirstBeamSplitter.parse("bs:pi/2,0")
        self.assertEqual(bs.params, BsParams(np.pi / 2, 0.0))
        for token in ("bs:1", "mirror", "none:1"):
            with self.assertRaises(SpecError):
                FirstBeamSplitter.parse(token)

    def test_tokens_from_numpy_values(self):
        # String forms of numpy-valued specs parse back
        z = 0.5 * np.exp(0.3j)
        state = StateSpec("cs-sv", (z.real, z.imag, np.float64(0.2)))
        self.assertEqual(StateSpec.parse(str(state)).params[2], 0.2)
        bs = FirstBeamSplitter("bs", BsParams(np.float64(1.0), np.float64(0.5)))
        self.assertEqual(str(bs), "bs:1.0,0.5")
        self.assertEqual(FirstBeamSplitter.parse(str(bs)).params, bs.params)


class TestInterferometer(TestCase):
    def test_noon_matches_closed_form(self):
        for N in (1, 2, 3):
            interferometer = Interferometer(
                InterferometerSpec.from_tokens(f"noon:{N}", cutoff=6)
            )
            self.assertIsNotNone(interferometer.closed_form)
            for phi in np.linspace(-np.pi, np.pi, 7):
                reading = interferometer.measure(phi)
                self.assertLess(reading.imag_residual, 1e-12)
                self.assertAlmostEqual(
                    reading.value, noon_parity_closed(N, phi).real, places=10
                )

    def test_cs_sv_matches_closed_form(self):
        spec = InterferometerSpec.from_tokens(
            "cs-sv:0.8,0,0.4", bs1="symmetric-i", cutoff=30
        )
        interferometer = Interferometer(spec)
        closed = interferometer.closed_form
        self.assertIsNotNone(closed)
        for phi in (0.0, 0.5, 1.5, -2.0):
            self.assertLess(abs(interferometer(phi) - closed(phi)), 1e-4)
            self.assertAlmostEqual(
                closed(phi), cs_sv_parity_closed(0.8, 0.4, phi), places=14
            )

    def test_closed_form_attachment(self):
        def attached(**kwargs):
            return Interferometer(
                InterferometerSpec.from_tokens(cutoff=6, **kwargs)
            ).closed_form is not None

        self.assertTrue(attached(input="noon:2"))
        self.assertTrue(attached(input="noon:2", detection="fock:3pi/2"))
        self.assertTrue(attached(input="noon:2", detection="eta-form"))
        self.assertFalse(attached(input="noon:2", detection="fock:0"))
        self.assertFalse(attached(input="noon:2", detection="parity"))
        self.assertFalse(attached(input="noon:2", bs1="symmetric-i"))
        self.assertFalse(attached(input="fock:1,1"))
        self.assertFalse(attached(input="cs-sv:0.5,0,0.2", bs1="none"))

    def test_norm_guard(self):
        with self.assertRaises(CutoffError):
            Interferometer(InterferometerSpec.from_tokens("coherent:3,0", cutoff=8))

    def test_parity_signal(self):
        spec = InterferometerSpec.from_tokens("noon:1", phase="pi/2", cutoff=4)
        self.assertAlmostEqual(parity_signal(spec), -1.0, places=12)

    def test_state_at_keeps_norm(self):
        interferometer = Interferometer(
            InterferometerSpec.from_tokens("fock:1,1", bs1="symmetric-i", cutoff=4)
        )
        self.assertAlmostEqual(interferometer.state_at(0.9).norm(), 1.0, places=12)


class TestPipelineCheck(TestCase):
    def test_agreement(self):
        value = noon_pipeline_check(2, 0.3, 8)
        self.assertAlmostEqual(value, -np.cos(0.6), places=6)

    def test_mismatch(self):
        with self.assertRaises(PipelineMismatchError):
            noon_pipeline_check(2, 0.3, 8, grid=QuadratureGrid(2.0, 0.5))
