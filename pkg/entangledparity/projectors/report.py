from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional


@dataclass
class ProjectorBuildReport:
    """Provenance of a built projector.

    `hermiticity_residual` is max |M - M^dagger| of the returned matrix.
    `convergence_delta` is filled by quadrature self-checks: the block
    difference between builds at step h and h/2.
    """

    method: str
    identifier: str
    cutoff: int
    hermiticity_residual: float
    seconds: float
    grid: Optional[Dict] = None
    warnings: List[str] = field(default_factory=list)
    convergence_delta: Optional[float] = None
    cached: bool = False

    def to_dict(self, timings: bool = True) -> Dict:
        data = asdict(self)
        if not timings:
            data.pop("seconds")
        return data
