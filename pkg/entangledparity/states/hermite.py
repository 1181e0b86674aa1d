"""Two-variable Hermite polynomials H_{m,n}(xi, eta).

They are the coefficients of the generating function
exp(-t t' + t xi + t' eta) = sum_{m,n} t^m t'^n H_{m,n}(xi, eta) / (m! n!).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import comb

from entangledparity.core.constants import MAX_HERMITE_ORDER


def _check_order(m: int, n: int) -> None:
    for name, value in (("m", m), ("n", n)):
        if int(value) != value or not 0 <= value <= MAX_HERMITE_ORDER:
            raise ValueError(
                f"Hermite order {name}={value} outside [0, {MAX_HERMITE_ORDER}]."
            )


def hermite_grid(max_m: int, max_n: int, xi, eta) -> np.ndarray:
    """All H_{m,n} for m <= max_m, n <= max_n, vectorized over arguments.

    Uses H_{m+1,n} = xi H_{m,n} - n H_{m,n-1} seeded with H_{0,n} = eta^n.

    Args:
        max_m: largest first index
        max_n: largest second index
        xi: complex array (or scalar) of first arguments
        eta: complex array (or scalar) of second arguments, broadcast with xi

    Returns: array of shape broadcast(xi, eta).shape + (max_m + 1, max_n + 1)
    """
    _check_order(max_m, max_n)
    xi, eta = np.broadcast_arrays(
        np.asarray(xi, dtype=complex), np.asarray(eta, dtype=complex)
    )
    values = np.zeros(xi.shape + (max_m + 1, max_n + 1), dtype=complex)
    values[..., 0, 0] = 1.0
    for n in range(1, max_n + 1):
        values[..., 0, n] = values[..., 0, n - 1] * eta

    orders = np.arange(1, max_n + 1)
    for m in range(max_m):
        values[..., m + 1, 0] = xi * values[..., m, 0]
        values[..., m + 1, 1:] = (
            xi[..., None] * values[..., m, 1:] - orders * values[..., m, :-1]
        )
    return values


def hermite_mn(m: int, n: int, xi: complex, eta: complex) -> complex:
    """H_{m,n}(xi, eta) by recurrence."""
    _check_order(m, n)
    return complex(hermite_grid(m, n, xi, eta)[m, n])


def hermite_mn_explicit(m: int, n: int, xi: complex, eta: complex) -> complex:
    """H_{m,n} from the expanded generating function.

    m! n! sum_k (-1)^k xi^(m-k) eta^(n-k) / (k! (m-k)! (n-k)!), summed with
    exact integer coefficients.
    """
    _check_order(m, n)
    xi, eta = complex(xi), complex(eta)
    total = 0j
    for k in range(min(m, n) + 1):
        coefficient = (-1) ** k * math.factorial(k) * comb(m, k, exact=True) * comb(
            n, k, exact=True
        )
        total += coefficient * xi ** (m - k) * eta ** (n - k)
    return total


@dataclass(frozen=True)
class HermiteTable:
    """Values H_{m,n}(xi, eta) for 0 <= m <= max_m, 0 <= n <= max_n."""

    max_m: int
    max_n: int
    xi: complex
    eta: complex
    values: np.ndarray

    @classmethod
    def compute(cls, max_m: int, max_n: int, xi: complex, eta: complex) -> HermiteTable:
        values = hermite_grid(max_m, max_n, complex(xi), complex(eta))
        values.flags.writeable = False
        return cls(max_m, max_n, complex(xi), complex(eta), values)

    def __getitem__(self, index) -> complex:
        m, n = index
        return complex(self.values[m, n])

    def recurrence_residual(self) -> float:
        """Largest relative violation of the recurrence over the table."""
        if self.max_m == 0:
            return 0.0
        h = self.values
        lhs = h[1:, :].copy()
        rhs = self.xi * h[:-1, :]
        rhs[:, 1:] -= np.arange(1, self.max_n + 1) * h[:-1, :-1]
        scale = np.maximum(np.abs(lhs), 1.0)
        return float(np.max(np.abs(lhs - rhs) / scale))
