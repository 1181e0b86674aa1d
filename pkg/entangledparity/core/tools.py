import hashlib
import json
import math
import re
from typing import List, Sequence

import numpy as np
import yaml

from entangledparity.core.errors import NonFiniteError, SpecError

_PI_TOKEN = re.compile(
    r"^(?P<sign>[+-]?)(?P<coef>\d+(\.\d*)?)?\*?pi(/(?P<den>\d+(\.\d*)?))?$"
)


def persistent_hash(s: str) -> int:
    """Compute a hash that persists across multiple Python sessions for a
    string."""
    return int(hashlib.sha224(s.encode()).hexdigest(), 16)


def digest(s: str) -> str:
    """Hex sha224 of a string, used to fingerprint serialized operators."""
    return hashlib.sha224(s.encode()).hexdigest()


def check_finite(values: np.ndarray, what: str) -> None:
    """Raise `NonFiniteError` if `values` contains NaN or Inf."""
    values = np.asarray(values)
    if not np.all(np.isfinite(values)):
        bad = np.argwhere(~np.isfinite(values))[0]
        raise NonFiniteError(
            f"{what} has a non-finite entry at {tuple(int(i) for i in bad)}."
        )


def complex_pairs(values: np.ndarray) -> List[List[float]]:
    """Flatten a complex array (row-major) into `[[re, im], ...]`."""
    flat = np.asarray(values, dtype=complex).reshape(-1)
    return [[float(z.real), float(z.imag)] for z in flat]


def from_complex_pairs(pairs: Sequence[Sequence[float]]) -> np.ndarray:
    """Inverse of `complex_pairs`, returns a flat complex array."""
    pairs = np.asarray(pairs, dtype=float).reshape(-1, 2)
    return pairs[:, 0] + 1j * pairs[:, 1]


def dumps_stable(obj) -> str:
    """JSON with sorted keys and shortest round-trip floats."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False)


def parse_angle(token: str) -> float:
    """Parse an angle in radians.

    Accepts decimal radians (`0.25`, `-1e-3`) and multiples of pi written as
    `pi`, `-pi/2`, `3pi/4`, `2*pi`.

    Args:
        token: the angle as written on the command line

    Returns: the angle in radians
    """
    text = token.strip().replace(" ", "").lower()
    match = _PI_TOKEN.match(text)
    if match is not None:
        value = math.pi * float(match.group("coef") or 1.0)
        if match.group("den") is not None:
            denominator = float(match.group("den"))
            if denominator == 0:
                raise SpecError(token, "angle divides by zero")
            value /= denominator
        return -value if match.group("sign") == "-" else value

    try:
        value = float(text)
    except ValueError:
        raise SpecError(token, "malformed angle") from None
    if not math.isfinite(value):
        raise SpecError(token, "angle is not finite")
    return value


def parse_floats(token: str, count: int, what: str) -> List[float]:
    """Parse `count` comma-separated numbers, raising `SpecError` otherwise."""
    parts = [p for p in token.split(",")] if token else []
    if len(parts) != count:
        raise SpecError(token, f"{what} expects {count} comma-separated values")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise SpecError(token, f"{what} has a non-numeric value") from None
    if not all(math.isfinite(v) for v in values):
        raise SpecError(token, f"{what} has a non-finite value")
    return values


def linspace_inclusive(start: float, stop: float, steps: int) -> np.ndarray:
    """Uniform grid with both endpoints."""
    if steps < 2:
        raise ValueError(f"A sweep needs at least 2 points, got {steps}.")
    return np.linspace(start, stop, steps)


def prettyprint(s) -> None:
    """Prettyprint with YAML.

    Args:
        s: string
    """
    if hasattr(s, "__dict__"):
        print(yaml.dump(s.__dict__))
    elif isinstance(s, dict):
        print(yaml.dump(s))
    else:
        print(s)

