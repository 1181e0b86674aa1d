"""Import common classes."""
# flake8: noqa
from entangledparity.logging.utils import (
    initialize_logging,
    set_logging_level,
    set_logging_level_for_imports,
)

initialize_logging()

from entangledparity.core.config import build_config, default_config
from entangledparity.core.errors import (
    ConvergenceError,
    CostGuardError,
    CutoffError,
    DimensionError,
    NonFiniteError,
    PipelineMismatchError,
    SpecError,
)
from entangledparity.core.fock import ModeIndexer, OperatorMatrix, TwoModeState
from entangledparity.core.identifier import Identifier
from entangledparity.core.quadrature import QuadratureGrid
from entangledparity.metrology.interferometer import (
    Interferometer,
    InterferometerSpec,
    parity_signal,
)
from entangledparity.metrology.sweep import SweepResult, phase_sweep
from entangledparity.projectors.builders import ProjectorBuilder, parse_method
from entangledparity.projectors.parity import BsParams, mu_conjugation, mu_fock
from entangledparity.states.entangled import EtaParams, XiParams, eta_state, xi_state
from entangledparity.states.spec import StateSpec
from entangledparity.verify import run_verify
from entangledparity.version import __version__
