"""Unittests for the command-line entry point."""
import json
import logging
import os
import tempfile
from unittest import TestCase

import numpy as np
import pandas as pd

from entangledparity.cli import (
    EXIT_FAIL,
    EXIT_PASS,
    EXIT_USAGE,
    join_range_values,
    main,
    parse_phi_range,
)
from entangledparity.core.errors import SpecError
from entangledparity.logging.utils import set_logging_level


class TestCli(TestCase):
    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def _path(self, name: str) -> str:
        return os.path.join(self.tmpdir, name)

    def _json(self, name: str) -> dict:
        with open(self._path(name)) as f:
            return json.load(f)

    def test_phi_range(self):
        self.assertEqual(parse_phi_range("0:1:5"), (0.0, 1.0, 5))
        start, stop, steps = parse_phi_range("-pi:pi:101")
        self.assertEqual(steps, 101)
        self.assertLess(start, -3.14)
        for token in ("0:1", "0:1:1", "0:1:x"):
            with self.assertRaises(SpecError):
                parse_phi_range(token)

    def test_dump_swap_operator(self):
        out = self._path("swap.json")
        argv = ["dump-operator", "--operator", "fock:0", "--cutoff", "2", "--out", out]
        self.assertEqual(main(argv), EXIT_PASS)
        data = self._json("swap.json")
        self.assertEqual(data["cutoff"], 2)
        self.assertEqual(data["shape"], [4, 4])
        entries = data["entries"]
        ones = [i for i, pair in enumerate(entries) if tuple(pair) == (1.0, 0.0)]
        self.assertEqual(ones, [0, 6, 9, 15])
        self.assertEqual(len(data["digest"]), 56)

        # Identical inputs give identical bytes
        again = self._path("again.json")
        main(argv[:-1] + [again])
        with open(out) as f, open(again) as g:
            self.assertEqual(f.read(), g.read())

    def test_dump_state(self):
        argv = ["dump-operator", "--state", "noon:1", "--cutoff", "2"]
        self.assertEqual(main(argv + ["--out", self._path("s.json")]), EXIT_PASS)
        data = self._json("s.json")
        self.assertEqual(data["kind"], "noon:1")
        self.assertEqual(data["shape"], [4])

    def test_compare_exact_routes(self):
        argv = [
            "compare",
            "--method-a", "conjugation:pi/2,-pi/2",
            "--method-b", "fock:-pi/2",
            "--cutoff", "6",
            "--no-timings",
            "--out", self._path("compare.json"),
        ]
        self.assertEqual(main(argv), EXIT_PASS)
        data = self._json("compare.json")
        self.assertTrue(data["pass"])
        self.assertEqual(data["tolerance_name"], "exact")
        self.assertEqual(data["block"], 1)
        self.assertLessEqual(data["maxdiff"], 1e-10)
        self.assertNotIn("seconds", data)

    def test_compare_different_projectors(self):
        argv = [
            "compare",
            "--method-a", "fock:pi/2",
            "--method-b", "fock:-pi/2",
            "--cutoff", "4",
            "--block", "2",
            "--out", self._path("compare.json"),
        ]
        self.assertEqual(main(argv), EXIT_FAIL)
        self.assertFalse(self._json("compare.json")["pass"])

    def test_sweep(self):
        out = self._path("sweep.csv")
        argv = ["sweep", "--input", "noon:1", "--phi", "0:pi:5", "--cutoff", "4"]
        argv += ["--out", out]
        self.assertEqual(main(argv), EXIT_PASS)
        data = pd.read_csv(out)
        self.assertEqual(len(data), 5)
        self.assertLess(data["abs_err"].max(), 1e-10)

    def test_sweep_negative_range(self):
        self.assertEqual(
            join_range_values(["sweep", "--phi", "-pi:pi:5", "--cutoff", "4"]),
            ["sweep", "--phi=-pi:pi:5", "--cutoff", "4"],
        )
        out = self._path("negative.csv")
        argv = ["sweep", "--input", "noon:1", "--phi", "-pi:pi:5", "--cutoff", "4"]
        self.assertEqual(main(argv + ["--out", out]), EXIT_PASS)
        data = pd.read_csv(out)
        self.assertEqual(len(data), 5)
        self.assertAlmostEqual(data["phi"].iloc[0], -np.pi)

    def test_sweep_json(self):
        out = self._path("sweep.json")
        argv = [
            "sweep", "--input", "noon:2", "--detect", "parity", "--phi", "0:1:3",
            "--cutoff", "4", "--format", "json", "--out", out,
        ]
        self.assertEqual(main(argv), EXIT_PASS)
        data = self._json("sweep.json")
        self.assertEqual(data["input"], "noon:2")
        self.assertEqual(len(data["rows"]), 3)
        self.assertIsNone(data["rows"][0]["closed_form"])

    def test_verify_suite(self):
        out = self._path("verify.json")
        argv = ["verify", "--suite", "hermite", "--no-timings", "--out", out]
        self.assertEqual(main(argv), EXIT_PASS)
        data = self._json("verify.json")
        self.assertTrue(data["pass"])
        self.assertNotIn("seconds", data)
        self.assertTrue(all(c["name"].startswith("hermite.") for c in data["checks"]))

    def test_usage_errors(self):
        out = ["--out", self._path("x.json")]
        self.assertEqual(main([]), EXIT_USAGE)
        self.assertEqual(main(["verify", "--suite", "hermit"] + out), EXIT_USAGE)
        self.assertEqual(main(["verify", "--tol", "bogus=1"] + out), EXIT_USAGE)
        self.assertEqual(main(["verify", "--tol", "exact=-1"] + out), EXIT_USAGE)
        self.assertEqual(main(["verify", "--cutoff", "1"] + out), EXIT_USAGE)
        self.assertEqual(main(["compare", "--method-a", "fock:0"] + out), EXIT_USAGE)
        self.assertEqual(
            main(["compare", "--method-a", "fok:0", "--method-b", "parity"] + out),
            EXIT_USAGE,
        )
        self.assertEqual(
            main(["sweep", "--input", "noon:1", "--phi", "0:1:1"] + out), EXIT_USAGE
        )
        self.assertEqual(
            main(["dump-operator", "--operator", "parity", "--state", "noon:1"] + out),
            EXIT_USAGE,
        )

    def test_log_level(self):
        argv = ["dump-operator", "--state", "noon:1", "--cutoff", "2"]
        argv += ["--out", self._path("s.json")]
        try:
            with self.assertLogs("entangledparity.cli", level="INFO") as logs:
                self.assertEqual(main(argv + ["--log-level", "debug"]), EXIT_PASS)
            self.assertTrue(any("Wrote" in line for line in logs.output))
            self.assertEqual(main(argv + ["--log-level", "chatty"]), EXIT_USAGE)
        finally:
            set_logging_level(logging.NOTSET)
