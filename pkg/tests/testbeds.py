"""A collection of simple testbeds to build test cases."""
import os
import tempfile

import numpy as np

from entangledparity.core.config import build_config
from entangledparity.core.fock import TwoModeState, total_photon_mask
from entangledparity.core.quadrature import QuadratureGrid


class MockFockTestBed:
    """Small cutoffs and a seeded random state supported on low sectors."""

    def __init__(self, cutoff: int = 6, max_total: int = 3, seed: int = 0):
        self.cutoff = cutoff
        self.max_total = max_total
        self.rng = np.random.default_rng(seed)

        # Random state living on total photon number <= max_total
        mask = total_photon_mask(cutoff, max_total)
        amplitudes = (
            self.rng.normal(size=cutoff ** 2) + 1j * self.rng.normal(size=cutoff ** 2)
        ) * mask
        self.state = TwoModeState(amplitudes / np.linalg.norm(amplitudes), cutoff)
        self.mask = mask

        assert abs(self.state.norm() - 1) < 1e-12


class MockGridTestBed:
    """Quadrature grids sized for fast tests."""

    def __init__(self):
        self.grid = QuadratureGrid(7.0, 0.05)
        self.coarse = QuadratureGrid(6.0, 0.1)
        self.grid4 = QuadratureGrid(4.0, 0.1, dimension=4)


class MockConfigTestBed:
    """Read-only run config and a scratch directory."""

    def __init__(self, **overrides):
        self.cfg = build_config(overrides)
        self.tmpdir = os.path.join(tempfile.gettempdir(), "EntangledParityTests")
        os.makedirs(self.tmpdir, exist_ok=True)
