"""Integral representations of parity and of the detection projector.

Each routine accumulates weighted outer products |ket(node)><bra(node)| tile
by tile over a QuadratureGrid, in fixed tile order.
"""
from __future__ import annotations

import logging
from typing import Callable, Optional

import numpy as np

from entangledparity.core.constants import (
    DEFAULT_TILE_SIZE,
    MAX_4D_CUTOFF,
    MAX_4D_NODES,
)
from entangledparity.core.errors import CostGuardError, DimensionError
from entangledparity.core.fock import OperatorMatrix, TwoModeState
from entangledparity.core.quadrature import QuadratureGrid, integrate, integrate_tiles
from entangledparity.states.entangled import eta_amplitudes, xi_amplitudes
from entangledparity.states.fock import coherent_amplitudes

logger = logging.getLogger(__name__)

FAMILIES = {"eta": eta_amplitudes, "xi": xi_amplitudes}


def _check_dimension(grid: QuadratureGrid, dimension: int) -> None:
    if grid.dimension != dimension:
        raise DimensionError(
            f"Expected a {dimension}-D grid, got dimension {grid.dimension}."
        )


def coverage_warning(grid: QuadratureGrid, required: float, what: str) -> Optional[str]:
    """Message when the grid radius is below `required`, else None."""
    if grid.covers(required):
        return None
    message = (
        f"{what}: grid radius {grid.radius:g} is below {required:.3g}; "
        "high Fock entries may be inaccurate."
    )
    logger.warning(message)
    return message


def projector_radius(cutoff: int) -> float:
    """Radius the entangled-state integrals need at this cutoff."""
    return float(np.sqrt(2 * cutoff) + 2)


def parity_radius(cutoff: int) -> float:
    return float(np.sqrt(2 * cutoff))


def _accumulate(
    grid: QuadratureGrid,
    ket: Callable[..., np.ndarray],
    bra: Callable[..., np.ndarray],
    tile_size: int,
    progress: bool,
    desc: str,
) -> np.ndarray:
    def _tile(*coords):
        return ket(*coords).T @ bra(*coords).conj()

    return integrate_tiles(_tile, grid, tile_size, progress, desc)


def parity_from_coherent_quadrature(
    grid: QuadratureGrid,
    cutoff: int,
    tile_size: int = DEFAULT_TILE_SIZE,
    progress: bool = False,
) -> OperatorMatrix:
    """Single-mode parity as the integral of |beta><-beta| d^2beta / pi."""
    _check_dimension(grid, 2)
    coverage_warning(grid, parity_radius(cutoff), "parity quadrature")
    entries = _accumulate(
        grid,
        lambda x, y: coherent_amplitudes(x + 1j * y, cutoff),
        lambda x, y: coherent_amplitudes(-(x + 1j * y), cutoff),
        tile_size,
        progress,
        "parity",
    )
    return OperatorMatrix(entries / np.pi, cutoff, modes=1)


def _swapped_family_projector(
    family: str,
    grid: QuadratureGrid,
    cutoff: int,
    tile_size: int,
    progress: bool,
) -> OperatorMatrix:
    _check_dimension(grid, 2)
    coverage_warning(grid, projector_radius(cutoff), f"{family} quadrature")
    amplitudes = FAMILIES[family]
    entries = _accumulate(
        grid,
        lambda x, y: amplitudes(x + 1j * y, cutoff),
        lambda x, y: amplitudes(y + 1j * x, cutoff),
        tile_size,
        progress,
        family,
    )
    return OperatorMatrix(entries / np.pi, cutoff)


def mu_from_eta_quadrature(
    grid: QuadratureGrid,
    cutoff: int,
    tile_size: int = DEFAULT_TILE_SIZE,
    progress: bool = False,
) -> OperatorMatrix:
    """Integral of |eta1 + i eta2><eta2 + i eta1| d eta1 d eta2 / pi."""
    return _swapped_family_projector("eta", grid, cutoff, tile_size, progress)


def mu_from_xi_quadrature(
    grid: QuadratureGrid,
    cutoff: int,
    tile_size: int = DEFAULT_TILE_SIZE,
    progress: bool = False,
) -> OperatorMatrix:
    """Integral of |xi1 + i xi2><xi2 + i xi1| d xi1 d xi2 / pi."""
    return _swapped_family_projector("xi", grid, cutoff, tile_size, progress)


def completeness_operator(
    family: str,
    grid: QuadratureGrid,
    cutoff: int,
    tile_size: int = DEFAULT_TILE_SIZE,
) -> OperatorMatrix:
    """Integral of |eta><eta| d^2eta / pi (or the xi analogue)."""
    if family not in FAMILIES:
        raise ValueError(f"Family must be one of {sorted(FAMILIES)}, got {family!r}.")
    _check_dimension(grid, 2)
    amplitudes = FAMILIES[family]
    entries = _accumulate(
        grid,
        lambda x, y: amplitudes(x + 1j * y, cutoff),
        lambda x, y: amplitudes(x + 1j * y, cutoff),
        tile_size,
        False,
        family,
    )
    return OperatorMatrix(entries / np.pi, cutoff)


def check_coherent_cost(grid4: QuadratureGrid, cutoff: int, force: bool) -> None:
    """Raise CostGuardError for oversized 4-D coherent quadratures."""
    _check_dimension(grid4, 4)
    logger.warning(
        "4-D coherent quadrature over %d nodes at cutoff %d.", grid4.num_nodes, cutoff
    )
    if force:
        return
    if cutoff > MAX_4D_CUTOFF:
        raise CostGuardError(
            f"4-D quadrature is limited to cutoff <= {MAX_4D_CUTOFF}, got {cutoff}; "
            "pass force=True to override."
        )
    if grid4.num_nodes > MAX_4D_NODES:
        raise CostGuardError(
            f"4-D quadrature with {grid4.num_nodes} nodes exceeds {MAX_4D_NODES}; "
            "pass force=True to override."
        )


def mu_coherent_quadrature(
    grid4: QuadratureGrid,
    cutoff: int,
    force: bool = False,
    tile_size: int = 8192,
    progress: bool = False,
) -> OperatorMatrix:
    """Integral of |alpha>_a|beta>_b <alpha|_b <beta|_a d^2alpha d^2beta / pi^2.

    Grid axes are (Re alpha, Im alpha, Re beta, Im beta).
    """
    check_coherent_cost(grid4, cutoff, force)
    coverage_warning(grid4, parity_radius(cutoff), "coherent quadrature")

    def _pairs(x1, y1, x2, y2, swap):
        alpha = coherent_amplitudes(x1 + 1j * y1, cutoff)
        beta = coherent_amplitudes(x2 + 1j * y2, cutoff)
        first, second = (beta, alpha) if swap else (alpha, beta)
        return (first[:, :, None] * second[:, None, :]).reshape(len(x1), -1)

    entries = _accumulate(
        grid4,
        lambda *c: _pairs(*c, swap=False),
        lambda *c: _pairs(*c, swap=True),
        tile_size,
        progress,
        "coherent",
    )
    return OperatorMatrix(entries / np.pi ** 2, cutoff)


def representation_expectation(
    state: TwoModeState,
    grid: Optional[QuadratureGrid] = None,
    family: str = "eta",
    tile_size: int = DEFAULT_TILE_SIZE,
) -> complex:
    """Expectation of the swapped-family projector without building it.

    Integral of <psi|eta1 + i eta2><eta2 + i eta1|psi> d eta1 d eta2 / pi.
    """
    if family not in FAMILIES:
        raise ValueError(f"Family must be one of {sorted(FAMILIES)}, got {family!r}.")
    grid = grid or QuadratureGrid()
    _check_dimension(grid, 2)
    amplitudes = FAMILIES[family]
    psi = state.amplitudes
    cutoff = state.cutoff

    def _integrand(x, y):
        left = amplitudes(x + 1j * y, cutoff) @ psi.conj()
        right = amplitudes(y + 1j * x, cutoff).conj() @ psi
        return left * right

    return integrate(_integrand, grid, tile_size) / np.pi
