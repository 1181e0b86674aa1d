"""Uniform midpoint quadrature and closed-form Gaussian integrals.

Grids are square (2-D) or hypercubic (4-D) with `n = round(2R/h)` nodes per
axis placed at cell midpoints, symmetric about the origin. Nodes are visited
in C order in fixed-size tiles and tile sums are combined in tile order, so
results are reproducible for identical inputs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Callable, Iterator, List, Optional, Tuple

import numpy as np
from tqdm.auto import tqdm

from entangledparity.core.constants import (
    DEFAULT_RADIUS,
    DEFAULT_STEP,
    DEFAULT_TILE_SIZE,
    MAX_NODES_PER_AXIS_RATIO,
)
from entangledparity.core.errors import (
    ConvergenceError,
    CostGuardError,
    DimensionError,
    NonFiniteError,
)
from entangledparity.core.identifier import Identifier

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadratureGrid:
    """Midpoint rule on [-R, R]^dimension with step h."""

    radius: float = DEFAULT_RADIUS
    step: float = DEFAULT_STEP
    dimension: int = 2

    def __post_init__(self):
        if not (np.isfinite(self.radius) and np.isfinite(self.step)):
            raise NonFiniteError(f"Grid ({self.radius}, {self.step}) is not finite.")
        if self.radius <= 0 or self.step <= 0:
            raise ValueError(
                f"Grid radius and step must be positive, got R={self.radius}, "
                f"h={self.step}."
            )
        if self.dimension not in (2, 4):
            raise DimensionError(
                f"Grid dimension must be 2 or 4, got {self.dimension}."
            )
        if self.radius / self.step > MAX_NODES_PER_AXIS_RATIO:
            raise CostGuardError(
                f"R/h = {self.radius / self.step:g} exceeds "
                f"{MAX_NODES_PER_AXIS_RATIO} per axis."
            )
        if self.nodes_per_axis < 1:
            raise ValueError(f"Grid R={self.radius}, h={self.step} has no nodes.")

    @property
    def nodes_per_axis(self) -> int:
        return int(round(2 * self.radius / self.step))

    @property
    def axis(self) -> np.ndarray:
        n = self.nodes_per_axis
        return (np.arange(n) - (n - 1) / 2) * self.step

    @property
    def num_nodes(self) -> int:
        return self.nodes_per_axis ** self.dimension

    @property
    def weight(self) -> float:
        return self.step ** self.dimension

    @property
    def identifier(self) -> Identifier:
        return Identifier(
            "QuadratureGrid",
            radius=self.radius,
            step=self.step,
            dimension=self.dimension,
        )

    def covers(self, radius: float) -> bool:
        return self.radius >= radius

    def halved(self) -> QuadratureGrid:
        """Same range, half the step."""
        return replace(self, step=self.step / 2)

    def to_dict(self) -> dict:
        return {"radius": self.radius, "step": self.step, "dimension": self.dimension}

    def num_tiles(self, tile_size: int = DEFAULT_TILE_SIZE) -> int:
        return -(-self.num_nodes // tile_size)

    def tiles(
        self, tile_size: int = DEFAULT_TILE_SIZE
    ) -> Iterator[Tuple[np.ndarray, ...]]:
        """Yield coordinate arrays for consecutive chunks of nodes."""
        axis = self.axis
        shape = (self.nodes_per_axis,) * self.dimension
        total = self.num_nodes
        for start in range(0, total, tile_size):
            flat = np.arange(start, min(start + tile_size, total))
            yield tuple(axis[i] for i in np.unravel_index(flat, shape))


def integrate_tiles(
    tile_fn: Callable[..., np.ndarray],
    grid: QuadratureGrid,
    tile_size: int = DEFAULT_TILE_SIZE,
    progress: bool = False,
    desc: str = "quadrature",
):
    """Sum `tile_fn(*coords)` over all tiles and multiply by the node weight.

    `tile_fn` may return a scalar or an array (for example an accumulated
    outer product); partial results are added in tile order.
    """
    total = None
    for coords in tqdm(
        grid.tiles(tile_size),
        total=grid.num_tiles(tile_size),
        desc=desc,
        disable=not progress,
    ):
        partial = tile_fn(*coords)
        total = partial if total is None else total + partial
    return total * grid.weight


def integrate(
    f: Callable[..., np.ndarray],
    grid: QuadratureGrid,
    tile_size: int = DEFAULT_TILE_SIZE,
    progress: bool = False,
) -> complex:
    """Midpoint-rule integral of a vectorized integrand.

    Args:
        f: integrand taking one coordinate array per grid axis
        grid: the quadrature grid
        tile_size: nodes evaluated per call of `f`
        progress: show a progress bar over tiles

    Returns: sum of f over the nodes times h^dimension
    """

    def _tile(*coords):
        values = np.broadcast_to(np.asarray(f(*coords), dtype=complex), coords[0].shape)
        bad = ~np.isfinite(values)
        if bad.any():
            i = int(np.argmax(bad))
            node = tuple(float(c[i]) for c in coords)
            raise NonFiniteError(
                f"Integrand is not finite at node {node}: {values[i]}."
            )
        return values.sum()

    return complex(integrate_tiles(_tile, grid, tile_size, progress))


def integrate_line(
    f: Callable[[np.ndarray], np.ndarray], radius: float = 10.0, step: float = 1e-3
) -> complex:
    """1-D midpoint rule over [-radius, radius]."""
    n = int(round(2 * radius / step))
    x = (np.arange(n) - (n - 1) / 2) * step
    values = np.asarray(f(x), dtype=complex)
    if not np.all(np.isfinite(values)):
        i = int(np.argmax(~np.isfinite(values)))
        raise NonFiniteError(f"Integrand is not finite at node {x[i]}: {values[i]}.")
    return complex(values.sum() * step)


def gauss1d_closed(alpha: complex, beta: complex) -> complex:
    """Integral of exp(-alpha x^2 + beta x) over the real line."""
    alpha, beta = complex(alpha), complex(beta)
    if not alpha.real > 0:
        raise ConvergenceError([f"Re(alpha) > 0 fails for alpha={alpha}"])
    return complex(np.sqrt(np.pi / alpha) * np.exp(beta ** 2 / (4 * alpha)))


def gauss2d_closed(zeta: complex, xi: complex, eta: complex) -> complex:
    """Integral of exp(zeta |z|^2 + xi z + eta z*) d^2z / pi."""
    zeta = complex(zeta)
    if not zeta.real < 0:
        raise ConvergenceError([f"Re(zeta) < 0 fails for zeta={zeta}"])
    return complex((-1 / zeta) * np.exp(-xi * eta / zeta))


def gauss2d_general_conditions(
    zeta: complex, f: complex, g: complex
) -> List[str]:
    """Convergence conditions of the general 2-D Gaussian that fail."""
    zeta, f, g = complex(zeta), complex(f), complex(g)
    discriminant = zeta ** 2 - 4 * f * g
    failing = []
    for sf, sg in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        label = f"zeta{'+' if sf > 0 else '-'}f{'+' if sg > 0 else '-'}g"
        shifted = zeta + sf * f + sg * g
        if not shifted.real < 0:
            failing.append(f"Re({label}) < 0")
        elif not (discriminant / shifted).real < 0:
            failing.append(f"Re((zeta^2-4fg)/({label})) < 0")
    return failing


def gauss2d_general_closed(
    zeta: complex, xi: complex, eta: complex, f: complex, g: complex
) -> complex:
    """Integral of exp(zeta |z|^2 + xi z + eta z* + f z^2 + g z*^2) d^2z / pi.

    Uses the principal branch of the square root of zeta^2 - 4fg.
    """
    failing = gauss2d_general_conditions(zeta, f, g)
    if failing:
        raise ConvergenceError(failing)
    zeta, xi, eta, f, g = (complex(v) for v in (zeta, xi, eta, f, g))
    discriminant = zeta ** 2 - 4 * f * g
    exponent = (-zeta * xi * eta + xi ** 2 * g + eta ** 2 * f) / discriminant
    return complex(np.exp(exponent) / np.sqrt(discriminant))


def gauss1d_quadrature(
    alpha: complex, beta: complex, radius: float = 10.0, step: float = 1e-3
) -> complex:
    return integrate_line(lambda x: np.exp(-alpha * x ** 2 + beta * x), radius, step)


def gauss2d_quadrature(
    zeta: complex,
    xi: complex,
    eta: complex,
    grid: Optional[QuadratureGrid] = None,
    f: complex = 0.0,
    g: complex = 0.0,
) -> complex:
    """Quadrature of the general 2-D Gaussian over the z = x + iy plane."""
    grid = grid or QuadratureGrid()

    def _integrand(x, y):
        z = x + 1j * y
        zc = np.conj(z)
        exponent = zeta * (x * x + y * y) + xi * z + eta * zc + f * z * z + g * zc * zc
        return np.exp(exponent)

    return integrate(_integrand, grid) / np.pi
