"""Parity interferometer: input state, first beam splitter, phase shift and
parity detection through mu."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from entangledparity.core.constants import NORM_DEFICIT_LIMIT
from entangledparity.core.decorators import cutoff_guard
from entangledparity.core.errors import CutoffError, PipelineMismatchError, SpecError
from entangledparity.core.fock import (
    ModeIndexer,
    OperatorMatrix,
    TwoModeState,
    expectation,
    matrix_exponential,
    mode_operators,
    phase_factors,
)
from entangledparity.core.quadrature import QuadratureGrid
from entangledparity.core.tools import parse_angle
from entangledparity.metrology.closed_form import (
    cs_sv_parity_closed,
    noon_parity_closed,
)
from entangledparity.projectors.builders import ProjectorBuilder, parse_method
from entangledparity.projectors.parity import BsParams, beam_splitter, mu_fock
from entangledparity.projectors.quadrature import representation_expectation
from entangledparity.states.fock import noon_state
from entangledparity.states.spec import StateSpec

logger = logging.getLogger(__name__)

DETECTION_PHASE = -np.pi / 2


@cutoff_guard(minimum=1)
def phase_shifter(phi: float, cutoff: int) -> OperatorMatrix:
    """exp[i phi (A^dag A - B^dag B) / 2], diagonal e^{i phi (m - n)/2}."""
    m, n = ModeIndexer(cutoff).photon_numbers()
    return OperatorMatrix(np.diag(phase_factors(m - n, phi / 2)), cutoff)


def bs1_symmetric_i(cutoff: int) -> OperatorMatrix:
    """exp[i pi (A^dag B + A B^dag) / 4]."""
    A, B = mode_operators(cutoff)
    hop = A.adjoint() @ B
    return matrix_exponential((hop + hop.adjoint()) * (1j * np.pi / 4))


@dataclass(frozen=True)
class FirstBeamSplitter:
    """`none`, `symmetric-i` or `bs:theta,phi` (the general beam splitter)."""

    kind: str = "none"
    params: Optional[BsParams] = None

    @classmethod
    def parse(cls, token: str) -> FirstBeamSplitter:
        name, _, rest = token.strip().partition(":")
        if name in ("none", "symmetric-i") and not rest:
            return cls(name)
        if name == "bs":
            angles = rest.split(",")
            if len(angles) != 2:
                raise SpecError(token, "bs expects theta,phi")
            return cls("bs", BsParams(parse_angle(angles[0]), parse_angle(angles[1])))
        raise SpecError(
            token, "first beam splitter must be none, symmetric-i or bs:theta,phi"
        )

    def matrix(self, cutoff: int) -> Optional[OperatorMatrix]:
        if self.kind == "none":
            return None
        if self.kind == "symmetric-i":
            return bs1_symmetric_i(cutoff)
        return beam_splitter(self.params, cutoff)

    def __str__(self):
        if self.kind == "bs":
            return f"bs:{float(self.params.theta)!r},{float(self.params.phi)!r}"
        return self.kind


@dataclass(frozen=True)
class InterferometerSpec:
    input: StateSpec
    bs1: FirstBeamSplitter = field(default_factory=FirstBeamSplitter)
    phase: float = 0.0
    detection: str = "fock:-pi/2"
    cutoff: int = 12
    grid: QuadratureGrid = field(default_factory=QuadratureGrid)

    @classmethod
    def from_tokens(
        cls,
        input: str,
        bs1: str = "none",
        phase: str = "0",
        detection: str = "fock:-pi/2",
        cutoff: int = 12,
        grid: QuadratureGrid = None,
    ) -> InterferometerSpec:
        return cls(
            StateSpec.parse(input),
            FirstBeamSplitter.parse(bs1),
            parse_angle(str(phase)),
            detection,
            cutoff,
            grid or QuadratureGrid(),
        )


@dataclass(frozen=True)
class ParityReading:
    phi: float
    value: float
    imag_residual: float


def _same_angle(first: float, second: float) -> bool:
    wrapped = (first - second + np.pi) % (2 * np.pi) - np.pi
    return abs(wrapped) <= 1e-12


class Interferometer:
    """Holds the prepared state and the detection projector for one spec.

    The input state and first beam splitter are applied once; each
    measurement only applies the diagonal phase shift.
    """

    def __init__(
        self,
        spec: InterferometerSpec,
        reality_tolerance: float = 1e-8,
        norm_limit: float = NORM_DEFICIT_LIMIT,
        cache_dir: str = None,
    ):
        self.spec = spec
        self.reality_tolerance = reality_tolerance
        cutoff = spec.cutoff

        state = spec.input.build(cutoff)
        deficit = 1.0 - state.sector_weight(cutoff - 1)
        if deficit > norm_limit:
            raise CutoffError(
                f"Input {spec.input} loses {deficit:.3e} of its norm at cutoff "
                f"{cutoff} (limit {norm_limit:.1e}); use a larger cutoff."
            )

        bs1 = spec.bs1.matrix(cutoff)
        self.prepared = bs1 @ state if bs1 is not None else state

        self.builder: ProjectorBuilder = parse_method(spec.detection, spec.grid)
        self.projector, self.report = self.builder.build(cutoff, cache_dir=cache_dir)
        self._m_minus_n = np.subtract(*ModeIndexer(cutoff).photon_numbers())

    def state_at(self, phi: float) -> TwoModeState:
        """Post-phase-shift state."""
        shift = phase_factors(self._m_minus_n, phi / 2)
        return TwoModeState(shift * self.prepared.amplitudes, self.spec.cutoff)

    def measure(self, phi: float) -> ParityReading:
        value = expectation(self.state_at(phi), self.projector)
        residual = abs(value.imag)
        if residual > self.reality_tolerance:
            logger.warning(
                "Parity signal at phi=%r has imaginary part %.3e.", phi, value.imag
            )
        return ParityReading(float(phi), float(value.real), residual)

    def __call__(self, phi: float) -> float:
        return self.measure(phi).value

    @property
    def closed_form(self) -> Optional[Callable[[float], float]]:
        """Closed-form signal when this pipeline matches its assumptions."""
        phase = self.builder.detection_phase
        if phase is None or not _same_angle(phase, DETECTION_PHASE):
            return None
        source = self.spec.input
        if source.kind == "noon" and self.spec.bs1.kind == "none":
            N = source.params[0]
            return lambda phi: noon_parity_closed(N, phi).real
        if source.kind == "cs-sv" and self.spec.bs1.kind == "symmetric-i":
            z = complex(source.params[0], source.params[1])
            r = source.params[2]
            return lambda phi: cs_sv_parity_closed(z, r, phi)
        return None


def parity_signal(spec: InterferometerSpec) -> float:
    """<psi| mu |psi> at the configured phase, real part."""
    return Interferometer(spec).measure(spec.phase).value


def noon_pipeline_check(
    N: int,
    phi: float,
    cutoff: int,
    grid: QuadratureGrid = None,
    tolerance: float = 1e-6,
) -> float:
    """NOON parity signal from the eta representation, checked against the
    Fock-sum matrix route.

    Returns: the quadrature value (real part)
    """
    state = noon_state(N, cutoff)
    psi = TwoModeState(phase_shifter(phi, cutoff) @ state.amplitudes, cutoff)
    from_quadrature = representation_expectation(psi, grid or QuadratureGrid(), "eta")
    from_matrix = expectation(psi, mu_fock(DETECTION_PHASE, cutoff))
    if abs(from_quadrature - from_matrix) > tolerance:
        raise PipelineMismatchError(
            f"NOON N={N} phi={phi!r}", from_quadrature, from_matrix, tolerance
        )
    return float(from_quadrature.real)
