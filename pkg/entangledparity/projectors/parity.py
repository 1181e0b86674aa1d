"""Parity, beam splitters and the exact routes to the detection projector.

The detection projector is mu = U^dagger (I (x) Pi) U, parity on mode b
conjugated by the beam splitter U = exp[(theta/2)(e^{i phi} A^dag B -
e^{-i phi} A B^dag)]. At theta = pi/2 it has the Fock-sum form
sum_{m,n} e^{i(m-n) phi} |m,n><n,m|.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from entangledparity.core.constants import MODE_B
from entangledparity.core.decorators import cutoff_guard
from entangledparity.core.errors import NonFiniteError
from entangledparity.core.fock import (
    ModeIndexer,
    OperatorMatrix,
    annihilation_matrix,
    embed,
    matrix_exponential,
    phase_factors,
    total_photon_mask,
)
from entangledparity.core.identifier import Identifier

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BsParams:
    """Beam-splitter angles.

    theta is the transmissivity angle (canonical range [0, pi]), phi the
    beam-splitter phase (canonical range (-pi, pi]). Values outside the
    canonical ranges are accepted and act periodically.
    """

    theta: float
    phi: float

    def __post_init__(self):
        if not (np.isfinite(self.theta) and np.isfinite(self.phi)):
            raise NonFiniteError(f"BsParams({self.theta}, {self.phi}) is not finite.")

    @property
    def identifier(self) -> Identifier:
        return Identifier("BsParams", theta=self.theta, phi=self.phi)

    def canonical_phi(self) -> float:
        """phi wrapped into (-pi, pi]."""
        wrapped = -((-self.phi + np.pi) % (2 * np.pi) - np.pi)
        return float(wrapped)


def beam_splitter_generator(p: BsParams, cutoff: int) -> OperatorMatrix:
    """(theta/2)(e^{i phi} A^dag B - e^{-i phi} A B^dag), skew-Hermitian exactly."""
    a = annihilation_matrix(cutoff).entries
    hop = np.kron(a.conj().T, a)
    phase = complex(phase_factors(1, p.phi))
    term = phase * hop
    return OperatorMatrix((p.theta / 2) * (term - term.conj().T), cutoff)


def beam_splitter(p: BsParams, cutoff: int) -> OperatorMatrix:
    return matrix_exponential(beam_splitter_generator(p, cutoff))


@cutoff_guard(minimum=1)
def parity_matrix(cutoff: int) -> OperatorMatrix:
    """Single-mode parity diag((-1)^n)."""
    signs = (-1.0) ** np.arange(cutoff)
    return OperatorMatrix(np.diag(signs), cutoff, modes=1)


def parity_op(cutoff: int) -> OperatorMatrix:
    """I (x) Pi: parity on mode b."""
    return embed(parity_matrix(cutoff), MODE_B, cutoff)


@cutoff_guard(minimum=1)
def swap_operator(cutoff: int) -> OperatorMatrix:
    """sum_{m,n} |m,n><n,m|."""
    indexer = ModeIndexer(cutoff)
    entries = np.zeros((indexer.dimension, indexer.dimension), dtype=complex)
    entries[np.arange(indexer.dimension), indexer.swap_permutation()] = 1.0
    return OperatorMatrix(entries, cutoff)


def mu_conjugation(p: BsParams, cutoff: int) -> OperatorMatrix:
    """U^dagger (I (x) Pi) U, exact on total photon number <= cutoff - 1."""
    U = beam_splitter(p, cutoff)
    return U.adjoint() @ parity_op(cutoff) @ U


@cutoff_guard(minimum=1)
def mu_fock(phi: float, cutoff: int) -> OperatorMatrix:
    """Entry e^{i(m-n) phi} at row (m, n), column (n, m)."""
    if not np.isfinite(phi):
        raise NonFiniteError(f"Phase {phi} is not finite.")
    indexer = ModeIndexer(cutoff)
    m, n = indexer.photon_numbers()
    entries = np.zeros((indexer.dimension, indexer.dimension), dtype=complex)
    entries[np.arange(indexer.dimension), indexer.swap_permutation()] = phase_factors(
        m - n, phi
    )
    return OperatorMatrix(entries, cutoff)


def _discrete_sum(cutoff: int, sign: int) -> OperatorMatrix:
    indexer = ModeIndexer(cutoff)
    entries = np.zeros((indexer.dimension, indexer.dimension), dtype=complex)
    for m in range(cutoff):
        for n in range(cutoff):
            power = sign * (n - m) % 4
            entries[indexer.index(m, n), indexer.index(n, m)] = 1j ** power
    return OperatorMatrix(entries, cutoff)


@cutoff_guard(minimum=1)
def mu_fock_eta_form(cutoff: int) -> OperatorMatrix:
    """sum i^{n-m} |m,n><n,m|."""
    return _discrete_sum(cutoff, +1)


@cutoff_guard(minimum=1)
def mu_fock_xi_form(cutoff: int) -> OperatorMatrix:
    """sum i^{m-n} |m,n><n,m|."""
    return _discrete_sum(cutoff, -1)


def mu_coherent_matrix_element(
    p: BsParams, alpha: complex, beta: complex, alpha_p: complex, beta_p: complex
) -> complex:
    """<alpha', beta'| mu |alpha, beta> from the normal-ordered form of mu."""
    alpha, beta, alpha_p, beta_p = (complex(v) for v in (alpha, beta, alpha_p, beta_p))
    cos, sin = np.cos(p.theta), np.sin(p.theta)
    phase = complex(phase_factors(1, p.phi))
    ac, bc = np.conj(alpha_p), np.conj(beta_p)
    exponent = (
        ac * alpha * cos
        - bc * beta * cos
        + ac * beta * phase * sin
        + bc * alpha * np.conj(phase) * sin
        - ac * alpha
        - bc * beta
    )
    overlap = np.exp(
        -(abs(alpha) ** 2 + abs(alpha_p) ** 2 + abs(beta) ** 2 + abs(beta_p) ** 2) / 2
        + ac * alpha
        + bc * beta
    )
    return complex(np.exp(exponent) * overlap)


def compare_projectors(m1: OperatorMatrix, m2: OperatorMatrix, block: int) -> float:
    """Max entry difference on basis states with total photon number <= block."""
    return m1.max_abs_diff(m2, mask=total_photon_mask(m1.cutoff, block))


def default_block(cutoff: int) -> int:
    """Default comparison block, cutoff/2 - 2 (at least 0)."""
    return max(cutoff // 2 - 2, 0)
