"""Closed-form parity signals.

Both assume detection with the balanced beam splitter at phi_BS = -pi/2.
"""
import numpy as np


def noon_parity_closed(N: int, phi: float) -> complex:
    """(i^N / 2) [e^{i N phi} + (-1)^N e^{-i N phi}]."""
    if N < 0:
        raise ValueError(f"NOON photon number must be non-negative, got {N}.")
    if N == 0:
        return 1.0 + 0.0j
    prefactor = 1j ** (N % 4) / 2
    bracket = np.exp(1j * N * phi) + (-1) ** N * np.exp(-1j * N * phi)
    return complex(prefactor * bracket)


def cs_sv_parity_closed(z: complex, r: float, phi: float) -> float:
    """Parity signal of |z>_a |r>_b after the symmetric-i beam splitter."""
    z = complex(z)
    s2 = np.sinh(r) ** 2 * np.sin(phi) ** 2
    numerator = 2 * (np.cos(phi) - 1 - s2) * abs(z) ** 2 - np.sinh(2 * r) * np.sin(
        phi
    ) ** 2 * (z * z).real
    return float(np.exp(numerator / (2 * (1 + s2))) / np.sqrt(1 + s2))
