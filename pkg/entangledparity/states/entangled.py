"""Two-mode entangled states |eta> and |xi>.

|eta> is the common eigenvector of the relative position X1 - X2 and the
total momentum P1 + P2, |xi> that of the total position X1 + X2 and the
relative momentum P1 - P2. Both are delta-normalized in the continuum, so
the truncated vectors built here are never renormalized.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from entangledparity.core.decorators import cutoff_guard
from entangledparity.core.errors import NonFiniteError
from entangledparity.core.fock import (
    OperatorMatrix,
    TwoModeState,
    exp_series_apply,
    mode_operators,
    total_photon_mask,
)
from entangledparity.states.fock import vacuum
from entangledparity.states.hermite import hermite_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EtaParams:
    """eta = eta1 + i eta2."""

    eta1: float
    eta2: float

    def __post_init__(self):
        if not (np.isfinite(self.eta1) and np.isfinite(self.eta2)):
            raise NonFiniteError(f"EtaParams({self.eta1}, {self.eta2}) is not finite.")

    @classmethod
    def from_complex(cls, value: complex) -> EtaParams:
        return cls(float(np.real(value)), float(np.imag(value)))

    @property
    def value(self) -> complex:
        return complex(self.eta1, self.eta2)

    def swapped(self) -> EtaParams:
        """eta2 + i eta1."""
        return EtaParams(self.eta2, self.eta1)


@dataclass(frozen=True)
class XiParams:
    """xi = xi1 + i xi2."""

    xi1: float
    xi2: float

    def __post_init__(self):
        if not (np.isfinite(self.xi1) and np.isfinite(self.xi2)):
            raise NonFiniteError(f"XiParams({self.xi1}, {self.xi2}) is not finite.")

    @classmethod
    def from_complex(cls, value: complex) -> XiParams:
        return cls(float(np.real(value)), float(np.imag(value)))

    @property
    def value(self) -> complex:
        return complex(self.xi1, self.xi2)

    def swapped(self) -> XiParams:
        return XiParams(self.xi2, self.xi1)


def _inverse_sqrt_factorials(cutoff: int) -> np.ndarray:
    """1 / sqrt(m! n!) on the (cutoff, cutoff) grid."""
    half_log = 0.5 * gammaln(np.arange(cutoff) + 1.0)
    return np.exp(-(half_log[:, None] + half_log[None, :]))


def _hermite_amplitudes(value, cutoff: int, alternating: bool) -> np.ndarray:
    value = np.asarray(value, dtype=complex)
    grid = hermite_grid(cutoff - 1, cutoff - 1, value, np.conj(value))
    coefficients = _inverse_sqrt_factorials(cutoff)
    if alternating:
        coefficients = coefficients * (-1.0) ** np.arange(cutoff)[None, :]
    envelope = np.exp(-np.abs(value) ** 2 / 2)[..., None, None]
    amplitudes = envelope * grid * coefficients
    return amplitudes.reshape(value.shape + (cutoff * cutoff,))


@cutoff_guard(minimum=1)
def eta_amplitudes(eta, cutoff: int) -> np.ndarray:
    """Flat |eta> amplitudes for an array of complex eta.

    c_{m,n} = exp(-|eta|^2/2) (-1)^n H_{m,n}(eta, eta*) / sqrt(m! n!).
    """
    return _hermite_amplitudes(eta, cutoff, alternating=True)


@cutoff_guard(minimum=1)
def xi_amplitudes(xi, cutoff: int) -> np.ndarray:
    """Flat |xi> amplitudes, c_{m,n} = exp(-|xi|^2/2) H_{m,n}(xi, xi*) / sqrt(m! n!)."""
    return _hermite_amplitudes(xi, cutoff, alternating=False)


def eta_state(p: EtaParams, cutoff: int) -> TwoModeState:
    return TwoModeState(eta_amplitudes(p.value, cutoff), cutoff)


def xi_state(p: XiParams, cutoff: int) -> TwoModeState:
    return TwoModeState(xi_amplitudes(p.value, cutoff), cutoff)


def _series_state(
    generator: OperatorMatrix, value: complex, cutoff: int
) -> TwoModeState:
    amplitudes = exp_series_apply(generator, vacuum(cutoff).amplitudes)
    return TwoModeState(np.exp(-abs(value) ** 2 / 2) * amplitudes, cutoff)


def eta_state_from_series(p: EtaParams, cutoff: int) -> TwoModeState:
    """exp(-|eta|^2/2) exp(eta A^dag - eta* B^dag + A^dag B^dag) |0,0>.

    Evaluated by power series.
    """
    A, B = mode_operators(cutoff)
    Ad, Bd = A.adjoint(), B.adjoint()
    eta = p.value
    generator = eta * Ad - np.conj(eta) * Bd + Ad @ Bd
    return _series_state(generator, eta, cutoff)


def xi_state_from_series(p: XiParams, cutoff: int) -> TwoModeState:
    """exp(-|xi|^2/2) exp(xi A^dag + xi* B^dag - A^dag B^dag) |0,0>, by power series."""
    A, B = mode_operators(cutoff)
    Ad, Bd = A.adjoint(), B.adjoint()
    xi = p.value
    generator = xi * Ad + np.conj(xi) * Bd - Ad @ Bd
    return _series_state(generator, xi, cutoff)


def eigen_residual(
    state: TwoModeState, operator: OperatorMatrix, eigenvalue: complex, max_total: int
) -> float:
    """Norm of (O - lambda)|psi> on the rows with total photon number <= max_total."""
    residual = (operator @ state.amplitudes) - eigenvalue * state.amplitudes
    mask = total_photon_mask(state.cutoff, max_total)
    return float(np.linalg.norm(residual[mask]))
