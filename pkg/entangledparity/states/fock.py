"""Fock, coherent, squeezed-vacuum and NOON states."""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from entangledparity.core.decorators import cutoff_guard
from entangledparity.core.errors import DimensionError, NonFiniteError
from entangledparity.core.fock import ModeIndexer, TwoModeState
from entangledparity.core.quadrature import QuadratureGrid, integrate_tiles

logger = logging.getLogger(__name__)


@cutoff_guard(minimum=1)
def fock_state(m: int, n: int, cutoff: int) -> TwoModeState:
    """|m>_a |n>_b."""
    indexer = ModeIndexer(cutoff)
    amplitudes = np.zeros(indexer.dimension, dtype=complex)
    amplitudes[indexer.index(m, n)] = 1.0
    return TwoModeState(amplitudes, cutoff)


def vacuum(cutoff: int) -> TwoModeState:
    return fock_state(0, 0, cutoff)


@cutoff_guard(minimum=1)
def coherent_amplitudes(alpha, cutoff: int) -> np.ndarray:
    """Coherent-state Fock amplitudes for an array of complex arguments.

    Returns an array of shape alpha.shape + (cutoff,) with
    c_n = exp(-|alpha|^2 / 2) alpha^n / sqrt(n!).
    """
    alpha = np.asarray(alpha, dtype=complex)
    amplitudes = np.empty(alpha.shape + (cutoff,), dtype=complex)
    amplitudes[..., 0] = np.exp(-np.abs(alpha) ** 2 / 2)
    for n in range(1, cutoff):
        amplitudes[..., n] = amplitudes[..., n - 1] * alpha / np.sqrt(n)
    return amplitudes


def coherent_state(alpha: complex, cutoff: int) -> np.ndarray:
    """Single-mode coherent state |alpha>, truncated and not renormalized."""
    alpha = complex(alpha)
    if not np.isfinite(alpha):
        raise NonFiniteError(f"Coherent amplitude {alpha} is not finite.")
    if abs(alpha) ** 2 > cutoff / 4:
        logger.warning(
            "Coherent state |alpha|^2=%.3g exceeds cutoff/4=%.3g; truncation "
            "error may be visible.",
            abs(alpha) ** 2,
            cutoff / 4,
        )
    return coherent_amplitudes(alpha, cutoff)


@cutoff_guard(minimum=1)
def squeezed_vacuum(r: float, cutoff: int) -> np.ndarray:
    """Single-mode squeezed vacuum with even amplitudes
    c_2k = sech(r)^(1/2) (-tanh r)^k sqrt((2k)!) / (2^k k!)."""
    if not np.isfinite(r):
        raise NonFiniteError(f"Squeezing {r} is not finite.")
    if cutoff % 2:
        logger.warning(
            "Squeezed vacuum at odd cutoff %d drops the partner of the last "
            "even amplitude.",
            cutoff,
        )
    amplitudes = np.zeros(cutoff, dtype=complex)
    amplitudes[0] = 1 / np.sqrt(np.cosh(r))
    ratio = -np.tanh(r)
    for n in range(2, cutoff, 2):
        amplitudes[n] = amplitudes[n - 2] * ratio * np.sqrt(n * (n - 1)) / n
    return amplitudes


def squeezed_vacuum_from_integral(
    r: float, cutoff: int, grid: Optional[QuadratureGrid] = None
) -> np.ndarray:
    """Squeezed vacuum from its coherent-state integral representation.

    sech(r)^(1/2) times the integral of
    exp(-|alpha|^2 / 2 - tanh(r) alpha*^2 / 2) |alpha> d^2alpha / pi.
    """
    grid = grid or QuadratureGrid()
    t = np.tanh(r)

    def _tile(x, y):
        alpha = x + 1j * y
        weights = np.exp(-np.abs(alpha) ** 2 / 2 - t * np.conj(alpha) ** 2 / 2)
        return weights @ coherent_amplitudes(alpha, cutoff)

    return integrate_tiles(_tile, grid) / (np.pi * np.sqrt(np.cosh(r)))


def product_state(vec_a: np.ndarray, vec_b: np.ndarray) -> TwoModeState:
    """|a>_a |b>_b."""
    return TwoModeState.from_product(vec_a, vec_b)


@cutoff_guard(minimum=1)
def noon_state(N: int, cutoff: int) -> TwoModeState:
    """(|N,0> + |0,N>) / sqrt(2); N = 0 gives the vacuum."""
    if N < 0 or N >= cutoff:
        raise DimensionError(f"NOON photon number {N} needs 0 <= N < {cutoff}.")
    if N == 0:
        logger.warning("NOON state with N=0 is the vacuum.")
        return vacuum(cutoff)
    indexer = ModeIndexer(cutoff)
    amplitudes = np.zeros(indexer.dimension, dtype=complex)
    amplitudes[indexer.index(N, 0)] = 1 / np.sqrt(2)
    amplitudes[indexer.index(0, N)] = 1 / np.sqrt(2)
    return TwoModeState(amplitudes, cutoff)
