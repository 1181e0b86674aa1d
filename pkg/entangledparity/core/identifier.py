"""Identifiers for operators, grids and verification checks."""
from __future__ import annotations

import json
from typing import Any, Callable, Union

import numpy as np


class Identifier:
    """Name plus ordered parameters, used as a cache key and report label.

    Identifiers print as `Name-index(k=v, ...)`. Float parameters are stored
    with their shortest round-trip representation so that two identifiers
    built from the same numbers compare equal across processes.
    """

    def __init__(
        self,
        _name: str,
        _index: Union[str, int] = None,
        **kwargs,
    ):

        self._name = _name
        self._index = str(_index) if _index is not None else None
        self._parameters = {}

        for param, value in kwargs.items():
            self.add_parameter(param, value)

    @property
    def name(self):
        """Base name."""
        return self._name

    @property
    def index(self):
        """Index associated with the identifier."""
        return self._index

    @property
    def parameters(self):
        """Parameters contained in the identifier."""
        return self._parameters

    def __call__(self, **kwargs) -> Identifier:
        """Return a new identifier with additional parameters."""
        ident = Identifier.loads(self.dumps())
        for parameter, value in kwargs.items():
            ident.add_parameter(parameter, value)
        return ident

    def __repr__(self):
        params = ", ".join([f"{k}={v!r}" for k, v in self.parameters.items()])
        name = f"{self.name}-{self.index}" if self.index is not None else self.name
        return f"{name}({params})" if len(params) > 0 else name

    def __hash__(self):
        return hash(str(self))

    def __eq__(self, other: Union[Identifier, str]):
        return str(self) == str(other)

    def dumps(self) -> str:
        """Dump the identifier to JSON."""
        return json.dumps(self.__dict__)

    @classmethod
    def loads(cls, s: str) -> Identifier:
        """Load the identifier from JSON."""
        identifier = Identifier(_name="")
        identifier.__dict__ = json.loads(s)
        return identifier

    def add_parameter(self, parameter: str, value: Any) -> None:
        """Add a parameter, normalizing numpy scalars and callables."""
        if isinstance(value, Callable):
            value = ".".join([str(value.__module__), str(value.__name__)])
        elif isinstance(value, (np.floating, float)):
            value = float(value)
        elif isinstance(value, (np.integer, int)) and not isinstance(value, bool):
            value = int(value)
        self._parameters[parameter] = value
