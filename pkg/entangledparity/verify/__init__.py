"""Run verification suites against a config."""
from __future__ import annotations

import logging
import time
from typing import Callable, List

from fuzzywuzzy import process
from omegaconf import DictConfig
from tqdm.auto import tqdm

from entangledparity.core.config import default_config
from entangledparity.core.constants import SUITES as SUITE_ORDER
from entangledparity.core.errors import SpecError
from entangledparity.verify.report import CheckResult, VerifyReport
from entangledparity.verify.suites import SUITES

logger = logging.getLogger(__name__)


def _suite_names(suite: str) -> List[str]:
    if suite == "all":
        return list(SUITE_ORDER)
    if suite not in SUITES:
        guess = process.extractOne(suite, list(SUITES) + ["all"])
        reason = "unknown suite"
        if guess:
            reason += f" (did you mean '{guess[0]}'?)"
        raise SpecError(suite, reason)
    return [suite]


def run_check(name: str, check: Callable, cfg: DictConfig) -> CheckResult:
    """Run one check; an exception counts as a failure with infinite residual."""
    tolerance = float(cfg.tolerances[check.tolerance])
    detail = None
    start = time.perf_counter()
    try:
        outcome = check(cfg)
        if isinstance(outcome, tuple):
            residual, detail = outcome
        else:
            residual = outcome
        residual = float(residual)
    except Exception as e:
        logger.exception("Check %s raised.", name)
        residual, detail = float("inf"), f"{type(e).__name__}: {e}"
    result = CheckResult(
        name, residual, tolerance, check.tolerance, time.perf_counter() - start, detail
    )
    if not result.passed:
        logger.warning(
            "Check %s failed: residual %.3e > %s %.1e.",
            name,
            residual,
            check.tolerance,
            tolerance,
        )
    return result


def run_verify(
    suite: str = "all", cfg: DictConfig = None, progress: bool = False
) -> VerifyReport:
    """Run a suite (or `all`) and collect one result per check.

    Check names take the form `suite.check`.
    """
    cfg = cfg if cfg is not None else default_config()
    names = _suite_names(suite)
    start = time.perf_counter()
    report = VerifyReport(suite)
    for suite_name in names:
        checks = SUITES[suite_name].all
        for check_name, check in tqdm(
            checks.items(), desc=suite_name, disable=not progress
        ):
            report.checks.append(run_check(f"{suite_name}.{check_name}", check, cfg))
    report.seconds = time.perf_counter() - start
    logger.info(
        "Suite %s: %d/%d checks passed.",
        suite,
        report.totals["passed"],
        report.totals["checks"],
    )
    return report
