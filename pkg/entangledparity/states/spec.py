"""State-spec strings such as `noon:2` or `cs-sv:0.8,0,0.4`."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from fuzzywuzzy import process

from entangledparity.core.errors import SpecError
from entangledparity.core.fock import TwoModeState
from entangledparity.core.tools import parse_floats
from entangledparity.states.fock import (
    coherent_state,
    fock_state,
    noon_state,
    product_state,
    squeezed_vacuum,
)

# kind -> (number of parameters, integer-valued)
STATE_KINDS = {
    "fock": (2, True),
    "noon": (1, True),
    "coherent": (2, False),
    "sqvac": (1, False),
    "cs-sv": (3, False),
}


@dataclass(frozen=True)
class StateSpec:
    """A parsed input state.

    - `fock:m,n`: |m>_a |n>_b
    - `noon:N`: (|N,0> + |0,N>)/sqrt(2)
    - `coherent:re,im`: |alpha>_a |0>_b
    - `sqvac:r`: |0>_a |r>_b
    - `cs-sv:zre,zim,r`: |z>_a |r>_b
    """

    kind: str
    params: Tuple[float, ...]

    @classmethod
    def parse(cls, token: str) -> StateSpec:
        kind, _, rest = token.strip().partition(":")
        if kind not in STATE_KINDS:
            guess = process.extractOne(kind, list(STATE_KINDS))
            hint = f"unknown state kind (did you mean '{guess[0]}'?)" if guess else None
            raise SpecError(token, hint or "unknown state kind")
        count, integral = STATE_KINDS[kind]
        values = parse_floats(rest, count, kind)
        if integral:
            if any(v != int(v) or v < 0 for v in values):
                raise SpecError(token, f"{kind} needs non-negative integers")
            values = [int(v) for v in values]
        return cls(kind, tuple(values))

    def build(self, cutoff: int) -> TwoModeState:
        if self.kind == "fock":
            return fock_state(self.params[0], self.params[1], cutoff)
        if self.kind == "noon":
            return noon_state(self.params[0], cutoff)

        empty = np.eye(cutoff)[0]
        if self.kind == "coherent":
            alpha = complex(self.params[0], self.params[1])
            return product_state(coherent_state(alpha, cutoff), empty)
        if self.kind == "sqvac":
            return product_state(empty, squeezed_vacuum(self.params[0], cutoff))
        z = complex(self.params[0], self.params[1])
        return product_state(
            coherent_state(z, cutoff), squeezed_vacuum(self.params[2], cutoff)
        )

    def __str__(self):
        return f"{self.kind}:" + ",".join(
            str(v) if isinstance(v, int) else repr(float(v)) for v in self.params
        )
