"""Command-line entry point.

Example:

    # Run every verification suite and write the JSON report
    $ entangledparity verify --suite all --out verify.json

    # Compare two projector routes on the block of total photon number <= 6
    $ entangledparity compare --method-a eta --method-b fock:-pi/2 \
        --cutoff 16 --block 6 --grid 7,0.05

    # Sweep the NOON parity signal
    $ entangledparity sweep --input noon:2 --bs1 none --detect fock:-pi/2 \
        --phi 0:6.283:200 --cutoff 12 --out sweep.csv

Exit status is 0 when everything passes, 1 when a check fails and 2 for
usage errors.
"""
from __future__ import annotations

import argparse
import io
import logging
import sys
import time
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from omegaconf import DictConfig, OmegaConf

from entangledparity.core.config import build_config
from entangledparity.core.constants import COHERENT_QUADRATURE, SUITES
from entangledparity.core.errors import SpecError
from entangledparity.core.quadrature import QuadratureGrid
from entangledparity.core.tools import (
    complex_pairs,
    digest,
    dumps_stable,
    parse_angle,
    parse_floats,
    prettyprint,
)
from entangledparity.logging.utils import set_logging_level
from entangledparity.metrology.interferometer import Interferometer, InterferometerSpec
from entangledparity.metrology.sweep import phase_sweep
from entangledparity.projectors.builders import parse_method
from entangledparity.projectors.parity import compare_projectors, default_block
from entangledparity.states.spec import StateSpec
from entangledparity.verify import run_verify

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 12
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
RANGE_FLAGS = ("--phi",)


def parse_grid(token: str) -> Dict[str, float]:
    radius, step = parse_floats(token, 2, "grid")
    return {"radius": radius, "step": step}


def parse_phi_range(token: str):
    """`start:stop:steps` with angles in decimal radians or pi multiples."""
    parts = token.split(":")
    if len(parts) != 3:
        raise SpecError(token, "phase range must read start:stop:steps")
    try:
        steps = int(parts[2])
    except ValueError:
        raise SpecError(token, "phase range steps must be an integer") from None
    if steps < 2:
        raise SpecError(token, "phase range needs at least 2 steps")
    return parse_angle(parts[0]), parse_angle(parts[1]), steps


def join_range_values(argv: Sequence[str]) -> List[str]:
    """Attach `--phi` values that start with `-` so argparse keeps them."""
    joined, tokens = [], list(argv)
    while tokens:
        token = tokens.pop(0)
        if token in RANGE_FLAGS and tokens and tokens[0].startswith("-"):
            token = f"{token}={tokens.pop(0)}"
        joined.append(token)
    return joined


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cutoff", type=int, help="Per-mode Fock cutoff d")
    common.add_argument("--grid", type=str, help="Quadrature grid as R,h")
    common.add_argument("--block", type=int, help="Compare on total photon number <= K")
    common.add_argument("--out", type=str, help="Output path (stdout if omitted)")
    common.add_argument("--format", choices=["csv", "json"], help="Output format")
    common.add_argument(
        "--tol",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="Override a tolerance (repeatable)",
    )
    common.add_argument("--config", type=str, help="YAML config merged below the flags")
    common.add_argument("--log-level", type=str, default=None, help="Logging level")
    common.add_argument("--num-proc", type=int, help="Worker processes for sweeps")
    common.add_argument(
        "--no-timings",
        action="store_true",
        help="Drop wall-time fields for byte-stable output",
    )
    common.add_argument("--cache-dir", type=str, help="Directory for cached operators")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="entangledparity",
        description="Entangled-state projectors and parity interferometry checks.",
    )
    subcommands = parser.add_subparsers(dest="subcommand")
    subcommands.required = True

    verify = subcommands.add_parser("verify", parents=[common], help="Run checks")
    verify.add_argument(
        "--suite",
        type=str,
        default="all",
        help=f"One of {', '.join(SUITES)} or all",
    )

    compare = subcommands.add_parser(
        "compare", parents=[common], help="Compare two projector routes"
    )
    compare.add_argument("--method-a", type=str, required=True)
    compare.add_argument("--method-b", type=str, required=True)

    sweep = subcommands.add_parser("sweep", parents=[common], help="Phase sweep")
    sweep.add_argument("--input", type=str, required=True, help="State spec")
    sweep.add_argument("--bs1", type=str, default="none", help="First beam splitter")
    sweep.add_argument(
        "--detect", type=str, default="fock:-pi/2", help="Detection method"
    )
    sweep.add_argument(
        "--phi",
        type=str,
        default="-pi:pi:101",
        help="start:stop:steps, e.g. -pi:pi:101",
    )

    dump = subcommands.add_parser(
        "dump-operator", parents=[common], help="Serialize an operator or state"
    )
    target = dump.add_mutually_exclusive_group(required=True)
    target.add_argument("--operator", type=str, help="Projector method")
    target.add_argument("--state", type=str, help="State spec")
    return parser


def _config(args: argparse.Namespace) -> DictConfig:
    overrides = {
        "subcommand": args.subcommand,
        "suite": getattr(args, "suite", None),
        "cutoff": args.cutoff,
        "grid": parse_grid(args.grid) if args.grid else None,
        "block": args.block,
        "out": args.out,
        "format": args.format,
        "num_proc": args.num_proc,
        "timings": False if args.no_timings else None,
        "cache_dir": args.cache_dir,
    }
    return build_config(overrides, args.tol, args.config)


def _grid(cfg: DictConfig) -> QuadratureGrid:
    return QuadratureGrid(cfg.grid.radius, cfg.grid.step)


def _emit(text: str, cfg: DictConfig) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    with open(cfg.out, "w", newline="") as f:
        f.write(text)
    logger.info("Wrote %s.", cfg.out)


def _records_csv(records: List[Dict]) -> str:
    buffer = io.StringIO()
    pd.DataFrame(records).to_csv(buffer, index=False, float_format="%.17g", na_rep="")
    return buffer.getvalue()


def run_verify_command(cfg: DictConfig) -> int:
    report = run_verify(cfg.suite, cfg)
    if cfg.format == "csv":
        _emit(_records_csv([c.to_dict(cfg.timings) for c in report.checks]), cfg)
    else:
        _emit(report.to_json(cfg.timings), cfg)
    for failure in report.failures:
        logger.warning(
            "FAILED %s: %s", failure.name, failure.detail or failure.residual
        )
    return EXIT_PASS if report.passed else EXIT_FAIL


def _compare_tolerance(builders) -> str:
    if any(b.method == COHERENT_QUADRATURE for b in builders):
        return "coherent_quadrature"
    if any(b.grid is not None for b in builders):
        return "quadrature"
    return "exact"


def run_compare(cfg: DictConfig, method_a: str, method_b: str) -> int:
    """Build two routes and report their block difference.

    Passes when the difference is within `exact`, `quadrature` or
    `coherent_quadrature`, whichever matches the least exact route.
    """
    start = time.perf_counter()
    cutoff = cfg.cutoff or DEFAULT_CUTOFF
    block = cfg.block if cfg.block is not None else default_block(cutoff)
    grid = _grid(cfg)
    builders = [parse_method(method_a, grid), parse_method(method_b, grid)]
    (m_a, report_a), (m_b, report_b) = (
        builder.build(cutoff, cache_dir=cfg.cache_dir) for builder in builders
    )

    tolerance_name = _compare_tolerance(builders)
    maxdiff = compare_projectors(m_a, m_b, block)
    passed = maxdiff <= cfg.tolerances[tolerance_name]
    result = {
        "method_a": method_a,
        "method_b": method_b,
        "cutoff": cutoff,
        "block": block,
        "maxdiff": maxdiff,
        "hermiticity_a": report_a.hermiticity_residual,
        "hermiticity_b": report_b.hermiticity_residual,
        "grid": grid.to_dict(),
        "tolerance_name": tolerance_name,
        "tolerance": cfg.tolerances[tolerance_name],
        "pass": passed,
        "warnings": report_a.warnings + report_b.warnings,
    }
    if cfg.timings:
        result["seconds"] = time.perf_counter() - start

    if cfg.format == "csv":
        flat = dict(
            result,
            grid=f"{grid.radius!r},{grid.step!r}",
            warnings=" | ".join(result["warnings"]),
        )
        _emit(_records_csv([flat]), cfg)
    else:
        _emit(dumps_stable(result), cfg)
    return EXIT_PASS if passed else EXIT_FAIL


def run_sweep(cfg: DictConfig, input: str, bs1: str, detect: str, phi: str) -> int:
    """Sweep the parity signal; fails when a closed form disagrees."""
    phi_min, phi_max, steps = parse_phi_range(phi)
    spec = InterferometerSpec.from_tokens(
        input,
        bs1=bs1,
        detection=detect,
        cutoff=cfg.cutoff or DEFAULT_CUTOFF,
        grid=_grid(cfg),
    )
    interferometer = Interferometer(
        spec,
        reality_tolerance=cfg.tolerances.signal_reality,
        cache_dir=cfg.cache_dir,
    )
    result = phase_sweep(
        spec,
        phi_min,
        phi_max,
        steps,
        num_proc=cfg.num_proc,
        interferometer=interferometer,
    )

    if cfg.format == "json":
        _emit(
            dumps_stable(
                {
                    "input": str(spec.input),
                    "bs1": str(spec.bs1),
                    "detect": detect,
                    "cutoff": spec.cutoff,
                    "rows": result.to_records(),
                }
            ),
            cfg,
        )
    else:
        _emit(result.to_csv(), cfg)

    if not result.has_closed_form:
        return EXIT_PASS
    tolerance = (
        cfg.tolerances.noon_signal
        if spec.input.kind == "noon"
        else cfg.tolerances.cs_sv_signal
    )
    if result.max_abs_error > tolerance:
        logger.warning(
            "Sweep deviates from the closed form by %.3e (tolerance %.1e).",
            result.max_abs_error,
            tolerance,
        )
        return EXIT_FAIL
    return EXIT_PASS


def run_dump(cfg: DictConfig, operator: Optional[str], state: Optional[str]) -> int:
    """Serialize a projector or a state as `{cutoff, kind, shape, entries, digest}`."""
    cutoff = cfg.cutoff or DEFAULT_CUTOFF
    if operator is not None:
        builder = parse_method(operator, _grid(cfg))
        matrix, _ = builder.build(cutoff, cache_dir=cfg.cache_dir)
        kind, values = operator, matrix.entries
    else:
        kind, values = state, StateSpec.parse(state).build(cutoff).amplitudes

    entries = complex_pairs(values)
    result = {
        "cutoff": cutoff,
        "kind": kind,
        "shape": list(np.shape(values)),
        "entries": entries,
        "digest": digest(dumps_stable(entries)),
    }
    _emit(dumps_stable(result), cfg)
    return EXIT_PASS


def main(argv: Sequence[str] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(join_range_values(argv))
    except SystemExit as e:
        return EXIT_PASS if e.code == 0 else EXIT_USAGE

    try:
        if args.log_level is not None:
            set_logging_level(args.log_level)
        cfg = _config(args)
    except (ValueError, NotImplementedError) as e:
        sys.stderr.write(f"entangledparity: error: {e}\n")
        return EXIT_USAGE
    if logger.isEnabledFor(logging.DEBUG):
        prettyprint(OmegaConf.to_container(cfg))

    try:
        if args.subcommand == "verify":
            return run_verify_command(cfg)
        if args.subcommand == "compare":
            return run_compare(cfg, args.method_a, args.method_b)
        if args.subcommand == "sweep":
            return run_sweep(cfg, args.input, args.bs1, args.detect, args.phi)
        return run_dump(cfg, args.operator, args.state)
    except SpecError as e:
        sys.stderr.write(f"entangledparity: error: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        # Domain errors (dimension, cutoff, cost guards) outside a check
        sys.stderr.write(f"entangledparity: error: {e}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
