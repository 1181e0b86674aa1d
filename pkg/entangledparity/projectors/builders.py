"""Projector builders: one class per construction route of mu.

Every builder carries an Identifier describing its parameters, builds an
OperatorMatrix for a cutoff and returns it with a ProjectorBuildReport.
"""
from __future__ import annotations

import logging
import os
import time
from abc import ABC, abstractmethod
from typing import List, Optional, Tuple

import numpy as np
from fuzzywuzzy import process

from entangledparity.core.constants import (
    COHERENT_QUADRATURE,
    CONJUGATION,
    ETA_QUADRATURE,
    FOCK_SUM,
    PARITY,
    XI_QUADRATURE,
)
from entangledparity.core.errors import CostGuardError, SpecError
from entangledparity.core.fock import OperatorMatrix
from entangledparity.core.identifier import Identifier
from entangledparity.core.quadrature import QuadratureGrid
from entangledparity.core.tools import parse_angle, parse_floats, persistent_hash
from entangledparity.projectors.parity import (
    BsParams,
    compare_projectors,
    default_block,
    mu_conjugation,
    mu_fock,
    mu_fock_eta_form,
    mu_fock_xi_form,
    parity_op,
)
from entangledparity.projectors.quadrature import (
    coverage_warning,
    mu_coherent_quadrature,
    mu_from_eta_quadrature,
    mu_from_xi_quadrature,
    parity_radius,
    projector_radius,
)
from entangledparity.projectors.report import ProjectorBuildReport

logger = logging.getLogger(__name__)

DEFAULT_GRID4 = QuadratureGrid(radius=4.0, step=0.1, dimension=4)


class ProjectorBuilder(ABC):
    """Abstract base class for the routes that build mu."""

    method: str = None

    def __init__(self, identifier: Identifier = None, **kwargs):
        self._identifier = (
            identifier
            if identifier
            else Identifier(_name=self.__class__.__name__, **kwargs)
        )

    def __repr__(self):
        return str(self.identifier)

    @property
    def identifier(self) -> Identifier:
        return self._identifier

    @property
    def grid(self) -> Optional[QuadratureGrid]:
        return None

    @property
    def detection_phase(self) -> Optional[float]:
        """phi_BS when the route equals the balanced (theta = pi/2) projector."""
        return None

    @abstractmethod
    def build_matrix(self, cutoff: int) -> OperatorMatrix:
        raise NotImplementedError

    def warnings(self, cutoff: int) -> List[str]:
        return []

    def self_check(
        self, matrix: OperatorMatrix, cutoff: int, block: int
    ) -> Optional[float]:
        return None

    def cache_path(self, cutoff: int, cache_dir: str) -> str:
        key = persistent_hash(str(self.identifier(cutoff=cutoff)))
        return os.path.join(cache_dir, f"{self.__class__.__name__}-{key:x}.pkl")

    def build(
        self,
        cutoff: int,
        self_check: bool = False,
        block: int = None,
        cache_dir: str = None,
    ) -> Tuple[OperatorMatrix, ProjectorBuildReport]:
        """Build the projector at `cutoff`.

        Args:
            cutoff: per-mode Fock cutoff
            self_check: for quadrature routes, rebuild at half step and
                report the block difference; skipped with a warning when
                the refined grid exceeds a cost guard
            block: block used by the self-check (default cutoff/2 - 2)
            cache_dir: directory for the dill operator cache

        Returns: (matrix, report)
        """
        start = time.perf_counter()
        matrix, cached = None, False
        path = self.cache_path(cutoff, cache_dir) if cache_dir else None
        if path is not None and os.path.exists(path):
            matrix, cached = OperatorMatrix.load(path), True
            logger.info("Loaded %s from cache %s.", self.identifier, path)
        if matrix is None:
            matrix = self.build_matrix(cutoff)
            if path is not None:
                matrix.save(path)

        delta, warnings = None, self.warnings(cutoff)
        if self_check:
            try:
                delta = self.self_check(
                    matrix, cutoff, default_block(cutoff) if block is None else block
                )
            except CostGuardError as e:
                # Refining the grid can cross a cost guard the base grid meets
                logger.warning("Skipping self-check of %s: %s", self.identifier, e)
                warnings.append(f"self-check skipped: {e}")

        report = ProjectorBuildReport(
            method=self.method,
            identifier=str(self.identifier),
            cutoff=cutoff,
            hermiticity_residual=matrix.hermiticity_residual(),
            seconds=time.perf_counter() - start,
            grid=self.grid.to_dict() if self.grid is not None else None,
            warnings=warnings,
            convergence_delta=delta,
            cached=cached,
        )
        logger.info(
            "Built %s at cutoff %d in %.3fs (hermiticity %.2e).",
            self.identifier,
            cutoff,
            report.seconds,
            report.hermiticity_residual,
        )
        return matrix, report


class ConjugationProjector(ProjectorBuilder):
    """U^dagger (I (x) Pi) U for a general beam splitter."""

    method = CONJUGATION

    def __init__(self, theta: float, phi: float):
        self.params = BsParams(theta, phi)
        super(ConjugationProjector, self).__init__(theta=theta, phi=phi)

    @property
    def detection_phase(self) -> Optional[float]:
        if np.isclose(self.params.theta, np.pi / 2, rtol=0, atol=1e-12):
            return self.params.phi
        return None

    def build_matrix(self, cutoff: int) -> OperatorMatrix:
        return mu_conjugation(self.params, cutoff)


class ParityProjector(ProjectorBuilder):
    """I (x) Pi, the projector with no second beam splitter."""

    method = PARITY

    def build_matrix(self, cutoff: int) -> OperatorMatrix:
        return parity_op(cutoff)


class FockSumProjector(ProjectorBuilder):
    method = FOCK_SUM

    def __init__(self, phi: float):
        self.phi = phi
        super(FockSumProjector, self).__init__(phi=phi)

    @property
    def detection_phase(self) -> Optional[float]:
        return self.phi

    def build_matrix(self, cutoff: int) -> OperatorMatrix:
        return mu_fock(self.phi, cutoff)


class EtaFormProjector(ProjectorBuilder):
    """Discrete sum with coefficients i^(n-m)."""

    method = FOCK_SUM

    @property
    def detection_phase(self) -> Optional[float]:
        return -np.pi / 2

    def build_matrix(self, cutoff: int) -> OperatorMatrix:
        return mu_fock_eta_form(cutoff)


class XiFormProjector(ProjectorBuilder):
    """Discrete sum with coefficients i^(m-n)."""

    method = FOCK_SUM

    @property
    def detection_phase(self) -> Optional[float]:
        return np.pi / 2

    def build_matrix(self, cutoff: int) -> OperatorMatrix:
        return mu_fock_xi_form(cutoff)


class QuadratureProjector(ProjectorBuilder):
    """Base class for routes that integrate over a QuadratureGrid."""

    def __init__(self, grid: QuadratureGrid = None, **kwargs):
        self._grid = grid or QuadratureGrid()
        super(QuadratureProjector, self).__init__(
            radius=self._grid.radius, step=self._grid.step, **kwargs
        )

    @property
    def grid(self) -> QuadratureGrid:
        return self._grid

    def required_radius(self, cutoff: int) -> float:
        return projector_radius(cutoff)

    def warnings(self, cutoff: int) -> List[str]:
        message = coverage_warning(
            self.grid, self.required_radius(cutoff), self.method
        )
        return [message] if message else []

    @abstractmethod
    def integrate(self, grid: QuadratureGrid, cutoff: int) -> OperatorMatrix:
        raise NotImplementedError

    def build_matrix(self, cutoff: int) -> OperatorMatrix:
        return self.integrate(self.grid, cutoff)

    def self_check(self, matrix: OperatorMatrix, cutoff: int, block: int) -> float:
        refined = self.integrate(self.grid.halved(), cutoff)
        delta = compare_projectors(matrix, refined, block)
        logger.info(
            "%s: halving h changes block-%d entries by %.3e.",
            self.identifier,
            block,
            delta,
        )
        return delta


class EtaQuadratureProjector(QuadratureProjector):
    method = ETA_QUADRATURE

    @property
    def detection_phase(self) -> Optional[float]:
        return -np.pi / 2

    def integrate(self, grid: QuadratureGrid, cutoff: int) -> OperatorMatrix:
        return mu_from_eta_quadrature(grid, cutoff)


class XiQuadratureProjector(QuadratureProjector):
    method = XI_QUADRATURE

    @property
    def detection_phase(self) -> Optional[float]:
        return np.pi / 2

    def integrate(self, grid: QuadratureGrid, cutoff: int) -> OperatorMatrix:
        return mu_from_xi_quadrature(grid, cutoff)


class CoherentQuadratureProjector(QuadratureProjector):
    """4-D coherent-state integral, equal to the swap operator."""

    method = COHERENT_QUADRATURE

    def __init__(self, grid: QuadratureGrid = None, force: bool = False):
        self.force = force
        super(CoherentQuadratureProjector, self).__init__(grid=grid or DEFAULT_GRID4)

    @property
    def detection_phase(self) -> Optional[float]:
        return 0.0

    def required_radius(self, cutoff: int) -> float:
        return parity_radius(cutoff)

    def integrate(self, grid: QuadratureGrid, cutoff: int) -> OperatorMatrix:
        return mu_coherent_quadrature(grid, cutoff, force=self.force)


METHODS = (
    "conjugation",
    "fock",
    "eta-form",
    "xi-form",
    "eta",
    "xi",
    "coherent",
    "parity",
)


def parse_method(
    token: str, grid: QuadratureGrid = None, force: bool = False
) -> ProjectorBuilder:
    """Parse a method token into a builder.

    Tokens: `conjugation:theta,phi`, `fock:phi`, `eta-form`, `xi-form`,
    `eta`, `xi`, `coherent` or `coherent:R,h`, `parity`. Angles accept
    decimals and pi multiples. `grid` applies to the 2-D quadrature routes.
    """
    name, _, rest = token.strip().partition(":")
    if name not in METHODS:
        guess = process.extractOne(name, list(METHODS))
        hint = "unknown method"
        if guess:
            hint += f" (did you mean '{guess[0]}'?)"
        raise SpecError(token, hint)

    takes_args = name in ("conjugation", "fock", "coherent")
    if rest and not takes_args:
        raise SpecError(token, f"method {name} takes no arguments")

    if name == "conjugation":
        angles = rest.split(",")
        if len(angles) != 2:
            raise SpecError(token, "conjugation expects theta,phi")
        return ConjugationProjector(parse_angle(angles[0]), parse_angle(angles[1]))
    if name == "fock":
        if not rest:
            raise SpecError(token, "fock expects a phase")
        return FockSumProjector(parse_angle(rest))
    if name == "coherent":
        grid4 = DEFAULT_GRID4
        if rest:
            radius, step = parse_floats(rest, 2, "coherent grid")
            grid4 = QuadratureGrid(radius, step, dimension=4)
        return CoherentQuadratureProjector(grid4, force=force)

    return {
        "eta-form": lambda: EtaFormProjector(),
        "xi-form": lambda: XiFormProjector(),
        "eta": lambda: EtaQuadratureProjector(grid),
        "xi": lambda: XiQuadratureProjector(grid),
        "parity": lambda: ParityProjector(),
    }[name]()
