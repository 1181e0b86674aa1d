"""Run configuration.

Configuration is an omegaconf structured config, so defaults, an optional
YAML file and command-line overrides merge in that order and are validated
against the dataclass types below.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, fields
from typing import Iterable, Mapping, Optional

from omegaconf import DictConfig, OmegaConf
from omegaconf.errors import OmegaConfBaseException

from entangledparity.core.constants import (
    DEFAULT_RADIUS,
    DEFAULT_STEP,
    MAX_CUTOFF,
    MAX_NODES_PER_AXIS_RATIO,
    MIN_CUTOFF,
)
from entangledparity.core.errors import CostGuardError, DimensionError, SpecError

logger = logging.getLogger(__name__)


@dataclass
class GridConfig:
    radius: float = DEFAULT_RADIUS
    step: float = DEFAULT_STEP


@dataclass
class Tolerances:
    exact: float = 1e-10
    unitarity: float = 1e-10
    block_structure: float = 1e-12
    transformation: float = 1e-9
    quadrature: float = 1e-6
    completeness: float = 1e-6
    eigenvector: float = 1e-6
    series: float = 1e-8
    coherent_quadrature: float = 1e-3
    gaussian: float = 1e-7
    hermite: float = 1e-9
    noon_signal: float = 1e-8
    cs_sv_signal: float = 1e-4
    signal_reality: float = 1e-8
    spectrum: float = 1e-8
    pipeline: float = 1e-6
    squeezed_integral: float = 1e-6
    cutoff_convergence: float = 1e-6
    sensitivity: float = 5e-3
    branch: float = 1e-9


@dataclass
class RunConfig:
    subcommand: str = "verify"
    suite: str = "all"
    cutoff: Optional[int] = None
    grid: GridConfig = field(default_factory=GridConfig)
    block: Optional[int] = None
    tolerances: Tolerances = field(default_factory=Tolerances)
    out: Optional[str] = None
    format: Optional[str] = None
    num_proc: Optional[int] = None
    timings: bool = True
    cache_dir: Optional[str] = None
    seed: int = 0


TOLERANCE_NAMES = tuple(f.name for f in fields(Tolerances))


def default_config() -> DictConfig:
    """The structured default configuration."""
    return OmegaConf.structured(RunConfig)


def tolerance_overrides(tokens: Iterable[str]) -> DictConfig:
    """Turn `NAME=VALUE` tokens into a config fragment under `tolerances`."""
    dotlist = []
    for token in tokens or ():
        if "=" not in token:
            raise SpecError(token, "tolerance override must read NAME=VALUE")
        name, value = token.split("=", 1)
        name = name.strip()
        if name not in TOLERANCE_NAMES:
            raise SpecError(token, "unknown tolerance")
        try:
            number = float(value)
        except ValueError:
            raise SpecError(token, "tolerance is not a number") from None
        if not number > 0:
            raise SpecError(token, "tolerance must be positive")
        dotlist.append(f"tolerances.{name}={number!r}")
    return OmegaConf.from_dotlist(dotlist)


def build_config(
    overrides: Mapping = None,
    tolerance_tokens: Iterable[str] = (),
    config_path: str = None,
) -> DictConfig:
    """Merge defaults, an optional YAML file and explicit overrides.

    Args:
        overrides: values set on the command line; `None` values are skipped
        tolerance_tokens: repeatable `NAME=VALUE` tolerance overrides
        config_path: optional YAML file merged below the overrides

    Returns: a validated, read-only config
    """
    cfg = default_config()
    layers = []
    if config_path is not None:
        layers.append(OmegaConf.load(config_path))
    if overrides:
        layers.append(
            OmegaConf.create({k: v for k, v in overrides.items() if v is not None})
        )
    layers.append(tolerance_overrides(tolerance_tokens))

    try:
        cfg = OmegaConf.merge(cfg, *layers)
    except OmegaConfBaseException as e:
        raise SpecError(str(e).splitlines()[0], "invalid configuration") from None

    validate_config(cfg)
    OmegaConf.set_readonly(cfg, True)
    return cfg


def validate_config(cfg: DictConfig) -> None:
    """Check ranges that the structured types cannot express."""
    if cfg.cutoff is not None and not MIN_CUTOFF <= cfg.cutoff <= MAX_CUTOFF:
        raise DimensionError(
            f"Cutoff must lie in [{MIN_CUTOFF}, {MAX_CUTOFF}], got {cfg.cutoff}."
        )
    if cfg.block is not None and cfg.block < 0:
        raise SpecError(str(cfg.block), "block must be non-negative")
    for name in TOLERANCE_NAMES:
        if not cfg.tolerances[name] > 0:
            raise SpecError(
                f"{name}={cfg.tolerances[name]}", "tolerance must be positive"
            )
    if not (cfg.grid.radius > 0 and cfg.grid.step > 0):
        raise SpecError(f"{cfg.grid.radius},{cfg.grid.step}", "grid must be positive")
    if cfg.grid.radius / cfg.grid.step > MAX_NODES_PER_AXIS_RATIO:
        raise CostGuardError(
            f"Grid R/h = {cfg.grid.radius / cfg.grid.step:g} exceeds "
            f"{MAX_NODES_PER_AXIS_RATIO}."
        )
    if cfg.format is not None and cfg.format not in ("csv", "json"):
        raise SpecError(cfg.format, "format must be csv or json")
    if cfg.num_proc is not None and cfg.num_proc < 1:
        raise SpecError(str(cfg.num_proc), "num-proc must be at least 1")
