"""Unittests for state-spec parsing."""
from unittest import TestCase

import numpy as np

from entangledparity.core.errors import SpecError
from entangledparity.states.fock import coherent_state, noon_state, squeezed_vacuum
from entangledparity.states.spec import StateSpec


class TestStateSpec(TestCase):
    def test_parse(self):
        self.assertEqual(StateSpec.parse("noon:2"), StateSpec("noon", (2,)))
        self.assertEqual(StateSpec.parse("fock:1,3"), StateSpec("fock", (1, 3)))
        self.assertEqual(
            StateSpec.parse("coherent:0.5,-1"), StateSpec("coherent", (0.5, -1.0))
        )
        self.assertEqual(StateSpec.parse("sqvac:0.4").params, (0.4,))
        self.assertEqual(StateSpec.parse(" cs-sv:0.8,0,0.4 ").params, (0.8, 0.0, 0.4))

    def test_str_round_trip(self):
        for token in ("noon:2", "fock:1,3", "cs-sv:0.8,0.0,0.4"):
            self.assertEqual(str(StateSpec.parse(token)), token)

    def test_errors(self):
        # Unknown kinds carry a suggestion
        with self.assertRaises(SpecError) as context:
            StateSpec.parse("non:2")
        self.assertEqual(context.exception.token, "non:2")
        self.assertIn("noon", str(context.exception))

        bad = ("noon:", "noon:1.5", "noon:-1", "fock:1", "cs-sv:1,2", "coherent:a,b")
        for token in bad:
            with self.assertRaises(SpecError):
                StateSpec.parse(token)

    def test_build(self):
        cutoff = 8
        state = StateSpec.parse("noon:3").build(cutoff)
        np.testing.assert_array_equal(
            state.amplitudes, noon_state(3, cutoff).amplitudes
        )

        state = StateSpec.parse("fock:2,1").build(cutoff)
        self.assertEqual(state.amplitude(2, 1), 1.0)

        state = StateSpec.parse("coherent:0.3,0.1").build(cutoff)
        np.testing.assert_allclose(
            state.grid()[:, 0], coherent_state(0.3 + 0.1j, cutoff)
        )
        self.assertEqual(float(np.max(np.abs(state.grid()[:, 1:]))), 0.0)

        # Squeezed vacuum lives in mode b
        state = StateSpec.parse("sqvac:0.4").build(cutoff)
        np.testing.assert_allclose(state.grid()[0, :], squeezed_vacuum(0.4, cutoff))

        state = StateSpec.parse("cs-sv:0.3,0.1,0.4").build(cutoff)
        np.testing.assert_allclose(
            state.grid(),
            np.outer(coherent_state(0.3 + 0.1j, cutoff), squeezed_vacuum(0.4, cutoff)),
        )
