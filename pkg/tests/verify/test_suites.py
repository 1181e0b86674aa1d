"""Unittests for running verification suites."""
from unittest import TestCase

from entangledparity.core.constants import SUITES as SUITE_ORDER
from entangledparity.core.decorators import function_register
from entangledparity.core.errors import SpecError
from entangledparity.verify import run_check, run_verify
from entangledparity.verify.suites import SUITES
from tests.testbeds import MockConfigTestBed


class TestSuites(TestCase):
    def setUp(self):
        self.cfg = MockConfigTestBed().cfg

    def test_registered_suites(self):
        self.assertEqual(set(SUITES), set(SUITE_ORDER))
        for registrar in SUITES.values():
            for check in registrar.all.values():
                self.assertIn(check.tolerance, self.cfg.tolerances)

    def _assert_suite_passes(self, suite: str):
        report = run_verify(suite, self.cfg)
        self.assertTrue(report.passed, [c.to_dict() for c in report.failures])
        self.assertEqual(
            [c.name for c in report.checks],
            [f"{suite}.{name}" for name in SUITES[suite].all],
        )
        return report

    def test_hermite_suite(self):
        self._assert_suite_passes("hermite")

    def test_gaussians_suite(self):
        self._assert_suite_passes("gaussians")

    def test_states_suite(self):
        self._assert_suite_passes("states")

    def test_projectors_suite(self):
        self._assert_suite_passes("projectors")

    def test_metrology_suite(self):
        report = self._assert_suite_passes("metrology")
        # cs-sv checks build their input from numpy-derived amplitudes
        cs_sv = [c for c in report.checks if "cs_sv" in c.name]
        self.assertEqual(len(cs_sv), 2)
        self.assertTrue(all(c.residual < float("inf") for c in cs_sv))

    def test_unknown_suite(self):
        with self.assertRaises(SpecError) as context:
            run_verify("hermit", self.cfg)
        self.assertIn("hermite", str(context.exception))

    def test_exception_is_failure(self):
        registrar = function_register()

        @registrar(tolerance="exact")
        def check_broken(cfg):
            raise RuntimeError("boom")

        result = run_check("demo.broken", check_broken, self.cfg)
        self.assertFalse(result.passed)
        self.assertEqual(result.residual, float("inf"))
        self.assertEqual(result.detail, "RuntimeError: boom")

    def test_detail_and_tolerance_override(self):
        registrar = function_register()

        @registrar(tolerance="quadrature")
        def check_detailed(cfg):
            return 5e-7, "close"

        result = run_check("demo.detailed", check_detailed, self.cfg)
        self.assertTrue(result.passed)
        self.assertEqual(result.detail, "close")

        strict = MockConfigTestBed(tolerances={"quadrature": 1e-9}).cfg
        self.assertFalse(run_check("demo.detailed", check_detailed, strict).passed)
