from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import cytoolz as tz

from entangledparity.core.tools import dumps_stable


@dataclass
class CheckResult:
    """One verification check; passes iff residual <= tolerance."""

    name: str
    residual: float
    tolerance: float
    tolerance_name: str
    seconds: float = 0.0
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_dict(self, timings: bool = True) -> Dict:
        data = {
            "name": self.name,
            "residual": self.residual if math.isfinite(self.residual) else None,
            "tolerance": self.tolerance,
            "tolerance_name": self.tolerance_name,
            "pass": self.passed,
            "detail": self.detail,
        }
        if timings:
            data["seconds"] = self.seconds
        return data


@dataclass
class VerifyReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def totals(self) -> Dict[str, int]:
        counts = tz.countby(lambda check: check.passed, self.checks)
        return {
            "checks": len(self.checks),
            "passed": counts.get(True, 0),
            "failed": counts.get(False, 0),
        }

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self, timings: bool = True) -> Dict:
        data = {
            "suite": self.suite,
            "pass": self.passed,
            "totals": self.totals,
            "checks": [check.to_dict(timings) for check in self.checks],
        }
        if timings:
            data["seconds"] = self.seconds
        return data

    def to_json(self, timings: bool = True) -> str:
        return dumps_stable(self.to_dict(timings))
