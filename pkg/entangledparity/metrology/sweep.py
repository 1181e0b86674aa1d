"""Phase sweeps over an interferometer, with closed-form and sensitivity
columns."""
from __future__ import annotations

import io
import logging
from typing import List, Optional

import cytoolz as tz
import numpy as np
import pandas as pd
from multiprocess.pool import Pool
from tqdm.auto import tqdm

from entangledparity.core.constants import FINITE_DIFFERENCE_STEP
from entangledparity.core.tools import linspace_inclusive
from entangledparity.metrology.interferometer import (
    Interferometer,
    InterferometerSpec,
    ParityReading,
)

logger = logging.getLogger(__name__)

COLUMNS = ["phi", "signal", "closed_form", "abs_err", "sensitivity"]


def sensitivity(signal: float, slope: float) -> float:
    """sqrt(1 - <Pi>^2) / |d<Pi>/dphi|, NaN where the slope vanishes."""
    variance = max(1.0 - signal ** 2, 0.0)
    if slope == 0:
        return float("nan")
    return float(np.sqrt(variance) / abs(slope))


class SweepResult:
    """Table of sweep rows, ordered by phi.

    Columns are phi, signal, closed_form, abs_err and sensitivity; absent
    values are NaN and serialize as empty CSV cells or JSON nulls.
    """

    def __init__(self, data: pd.DataFrame, spec: InterferometerSpec = None):
        self.data = data[COLUMNS].reset_index(drop=True)
        self.spec = spec

    def __len__(self):
        return len(self.data)

    @property
    def max_abs_error(self) -> float:
        errors = self.data["abs_err"].dropna()
        return float(errors.max()) if len(errors) else float("nan")

    @property
    def has_closed_form(self) -> bool:
        return bool(self.data["closed_form"].notna().any())

    def to_csv(self, path: str = None) -> str:
        """CSV with 17 significant digits; returns the text."""
        buffer = io.StringIO()
        self.data.to_csv(buffer, index=False, float_format="%.17g", na_rep="")
        text = buffer.getvalue()
        if path is not None:
            with open(path, "w", newline="") as f:
                f.write(text)
        return text

    def to_records(self) -> List[dict]:
        return [
            {k: (None if pd.isna(v) else float(v)) for k, v in row.items()}
            for row in self.data.to_dict(orient="records")
        ]


def _measure_point(interferometer: Interferometer, phi: float, step: float) -> dict:
    reading: ParityReading = interferometer.measure(phi)
    slope = (interferometer(phi + step) - interferometer(phi - step)) / (2 * step)
    return {
        "phi": reading.phi,
        "signal": reading.value,
        "imag_residual": reading.imag_residual,
        "sensitivity": sensitivity(reading.value, slope),
    }


def phase_sweep(
    spec: InterferometerSpec,
    phi_min: float,
    phi_max: float,
    steps: int,
    num_proc: Optional[int] = None,
    step: float = FINITE_DIFFERENCE_STEP,
    interferometer: Interferometer = None,
    progress: bool = False,
) -> SweepResult:
    """Evaluate the parity signal on an inclusive uniform phi grid.

    Args:
        spec: the interferometer
        phi_min: first phase
        phi_max: last phase
        steps: number of points (>= 2)
        num_proc: worker processes; None or 1 evaluates serially
        step: central-difference step for the sensitivity column
        interferometer: a prebuilt interferometer for `spec`
        progress: show a progress bar (serial evaluation)

    Returns: SweepResult ordered by phi
    """
    phis = linspace_inclusive(phi_min, phi_max, steps)
    interferometer = interferometer or Interferometer(spec)

    if not num_proc or num_proc == 1:
        rows = [
            _measure_point(interferometer, phi, step)
            for phi in tqdm(phis, desc="sweep", disable=not progress)
        ]
    else:
        chunks = list(tz.partition_all(-(-len(phis) // num_proc), phis))
        with Pool(num_proc) as pool:
            rows = list(
                tz.concat(
                    pool.map(
                        lambda chunk: [
                            _measure_point(interferometer, phi, step) for phi in chunk
                        ],
                        chunks,
                    )
                )
            )

    data = pd.DataFrame(rows)
    closed = interferometer.closed_form
    if closed is not None:
        data["closed_form"] = [closed(phi) for phi in data["phi"]]
        data["abs_err"] = (data["signal"] - data["closed_form"]).abs()
    else:
        data["closed_form"] = np.nan
        data["abs_err"] = np.nan

    logger.info(
        "Swept %d phases of %s; max imaginary residual %.3e.",
        len(data),
        spec.input,
        data["imag_residual"].max(),
    )
    return SweepResult(data, spec)
