"""Unittests for Identifiers."""
from unittest import TestCase

import numpy as np

from entangledparity.core.identifier import Identifier
from entangledparity.core.tools import parse_angle


class TestIdentifier(TestCase):
    def setUp(self):
        self.min_identifier = Identifier(_name="FockSumProjector")
        self.identifier = Identifier(
            _name="ConjugationProjector",
            _index=1,
            theta=1.5707963267948966,
            phi=-0.5,
        )

    def test_init(self):
        # A bare name prints as the name
        self.assertEqual(str(Identifier(_name="ParityProjector")), "ParityProjector")

        # An integer index is appended with a dash
        self.assertEqual(str(Identifier(_name="Grid", _index=3)), "Grid-3")

        # Parameters print with their repr, in insertion order
        self.assertEqual(
            str(self.identifier),
            "ConjugationProjector-1(theta=1.5707963267948966, phi=-0.5)",
        )
        self.assertEqual(
            str(Identifier(_name="StateSpec", kind="noon")), "StateSpec(kind='noon')"
        )

    def test_name_index_parameters(self):
        self.assertEqual(self.identifier.name, "ConjugationProjector")
        self.assertEqual(self.identifier.index, "1")
        self.assertEqual(self.min_identifier.index, None)
        self.assertEqual(
            self.identifier.parameters, {"theta": 1.5707963267948966, "phi": -0.5}
        )
        self.assertEqual(self.min_identifier.parameters, {})

    def test_numpy_scalars(self):
        # numpy scalars are stored as builtin numbers, so identifiers match
        identifier = Identifier(
            _name="Grid", radius=np.float64(7.0), nodes=np.int64(280)
        )
        self.assertEqual(identifier, Identifier(_name="Grid", radius=7.0, nodes=280))
        self.assertIsInstance(identifier.parameters["nodes"], int)

    def test_callable_parameter(self):
        identifier = Identifier(_name="Op", fn=parse_angle)
        self.assertEqual(
            identifier.parameters["fn"], "entangledparity.core.tools.parse_angle"
        )

    def test_eq_and_hash(self):
        identifier = Identifier(
            _name="ConjugationProjector", _index=1, theta=1.5707963267948966, phi=-0.5
        )
        self.assertEqual(self.identifier, identifier)
        self.assertEqual(hash(self.identifier), hash(identifier))
        self.assertNotEqual(self.identifier, identifier.without("phi"))
        self.assertEqual(self.identifier, str(identifier))

    def test_dumps_loads(self):
        s = self.identifier.dumps()
        self.assertIn('"_name": "ConjugationProjector"', s)
        self.assertEqual(Identifier.loads(s), self.identifier)

    def test_call(self):
        # Calling adds parameters on a copy
        extended = self.min_identifier(phi=0.25)
        self.assertEqual(str(extended), "FockSumProjector(phi=0.25)")
        self.assertEqual(self.min_identifier.parameters, {})

