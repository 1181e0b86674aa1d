"""Dense linear algebra over the truncated two-mode Fock space.

The basis is ordered row-major with mode a major: the product state
|m>_a |n>_b sits at flat index k = m * cutoff + n. Every module in the
package relies on this ordering.
"""
from __future__ import annotations

import json
import logging
from typing import Dict, Tuple

import numpy as np
from scipy.linalg import expm

from entangledparity.core.constants import MODE_A, MODE_B
from entangledparity.core.decorators import cutoff_guard
from entangledparity.core.errors import DimensionError
from entangledparity.core.storage import StorageMixin
from entangledparity.core.tools import check_finite, complex_pairs, from_complex_pairs

logger = logging.getLogger(__name__)

_QUARTER_TURNS = np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])


def phase_factors(k: np.ndarray, phi: float) -> np.ndarray:
    """Compute exp(i k phi) for integer k.

    When phi is an exact multiple of pi/2 the result is an exact power of i,
    so discrete sums written with i^k agree with phase-parameterized ones
    bit for bit.
    """
    k = np.asarray(k, dtype=np.int64)
    quarter = phi / (np.pi / 2)
    if np.isfinite(quarter) and quarter == np.round(quarter):
        return _QUARTER_TURNS[np.mod(k * int(np.round(quarter)), 4)]
    return np.exp(1j * k * phi)


class ModeIndexer:
    """Bijection between (m, n) photon labels and flat basis indices."""

    def __init__(self, cutoff: int):
        if isinstance(cutoff, bool) or int(cutoff) != cutoff or cutoff < 1:
            raise DimensionError(f"Cutoff must be a positive integer, got {cutoff!r}.")
        self.cutoff = int(cutoff)

    @property
    def dimension(self) -> int:
        return self.cutoff ** 2

    def index(self, m: int, n: int) -> int:
        """Flat index of |m>_a |n>_b."""
        if not (0 <= m < self.cutoff and 0 <= n < self.cutoff):
            raise DimensionError(
                f"Photon numbers ({m}, {n}) outside cutoff {self.cutoff}."
            )
        return m * self.cutoff + n

    def modes(self, k: int) -> Tuple[int, int]:
        """Photon numbers (m, n) of flat index k."""
        if not 0 <= k < self.dimension:
            raise DimensionError(f"Index {k} outside dimension {self.dimension}.")
        return divmod(k, self.cutoff)

    def photon_numbers(self) -> Tuple[np.ndarray, np.ndarray]:
        """Arrays (m, n) over all flat indices."""
        return np.divmod(np.arange(self.dimension), self.cutoff)

    def total_photons(self) -> np.ndarray:
        m, n = self.photon_numbers()
        return m + n

    def swap_permutation(self) -> np.ndarray:
        """perm[k(m, n)] = k(n, m)."""
        m, n = self.photon_numbers()
        return n * self.cutoff + m

    def __eq__(self, other):
        return isinstance(other, ModeIndexer) and other.cutoff == self.cutoff

    def __hash__(self):
        return hash(("ModeIndexer", self.cutoff))

    def __repr__(self):
        return f"ModeIndexer(cutoff={self.cutoff})"


def _frozen(values: np.ndarray) -> np.ndarray:
    values.flags.writeable = False
    return values


class TwoModeState:
    """Immutable amplitude vector over the truncated two-mode basis."""

    def __init__(self, amplitudes: np.ndarray, cutoff: int):
        self.indexer = ModeIndexer(cutoff)
        amplitudes = np.array(amplitudes, dtype=complex).reshape(-1)
        if amplitudes.shape[0] != self.indexer.dimension:
            raise DimensionError(
                f"A cutoff-{cutoff} state needs {self.indexer.dimension} amplitudes, "
                f"got {amplitudes.shape[0]}."
            )
        check_finite(amplitudes, "State")
        self._amplitudes = _frozen(amplitudes)

    @classmethod
    def from_product(cls, vec_a: np.ndarray, vec_b: np.ndarray) -> TwoModeState:
        """|a> (x) |b> for two single-mode vectors of equal length."""
        vec_a = np.asarray(vec_a, dtype=complex).reshape(-1)
        vec_b = np.asarray(vec_b, dtype=complex).reshape(-1)
        if vec_a.shape != vec_b.shape:
            raise DimensionError(
                f"Mode vectors have lengths {vec_a.shape[0]} and {vec_b.shape[0]}."
            )
        return cls(np.kron(vec_a, vec_b), vec_a.shape[0])

    @property
    def cutoff(self) -> int:
        return self.indexer.cutoff

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    def __len__(self):
        return self.indexer.dimension

    def amplitude(self, m: int, n: int) -> complex:
        return complex(self._amplitudes[self.indexer.index(m, n)])

    def grid(self) -> np.ndarray:
        """Amplitudes as a (cutoff, cutoff) array indexed [m, n]."""
        return self._amplitudes.reshape(self.cutoff, self.cutoff)

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self._amplitudes, self._amplitudes).real))

    def norm_deficit(self) -> float:
        """1 - <psi|psi>."""
        return 1.0 - float(np.vdot(self._amplitudes, self._amplitudes).real)

    def sector_weight(self, max_total: int) -> float:
        """Probability in sectors with total photon number <= max_total."""
        mask = self.indexer.total_photons() <= max_total
        return float(np.sum(np.abs(self._amplitudes[mask]) ** 2))

    def normalized(self) -> TwoModeState:
        norm = self.norm()
        if norm == 0:
            raise ValueError("Cannot normalize the zero vector.")
        return TwoModeState(self._amplitudes / norm, self.cutoff)

    def inner(self, other: TwoModeState) -> complex:
        """<self|other>."""
        _check_cutoffs(self.cutoff, other.cutoff)
        return complex(np.vdot(self._amplitudes, other.amplitudes))

    def to_dict(self) -> Dict:
        return {"cutoff": self.cutoff, "entries": complex_pairs(self._amplitudes)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> TwoModeState:
        data = json.loads(s)
        return cls(from_complex_pairs(data["entries"]), data["cutoff"])

    def __repr__(self):
        return f"TwoModeState(cutoff={self.cutoff}, norm={self.norm():.6g})"


class OperatorMatrix(StorageMixin):
    """Immutable dense square matrix over a truncated Fock space.

    `modes=2` (the default) means a two-mode operator of dimension cutoff**2,
    `modes=1` a single-mode operator of dimension cutoff.
    """

    # numpy scalars defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, entries: np.ndarray, cutoff: int, modes: int = 2):
        super(OperatorMatrix, self).__init__()
        if modes not in (1, 2):
            raise DimensionError(f"Only single- and two-mode operators, got {modes}.")
        self.indexer = ModeIndexer(cutoff)
        self.modes = modes
        entries = np.array(entries, dtype=complex)
        dimension = self.indexer.cutoff ** modes
        if entries.shape != (dimension, dimension):
            raise DimensionError(
                f"A {modes}-mode cutoff-{cutoff} operator is {dimension}x{dimension}, "
                f"got shape {entries.shape}."
            )
        check_finite(entries, "Operator")
        self._entries = _frozen(entries)

    @classmethod
    def identity(cls, cutoff: int, modes: int = 2) -> OperatorMatrix:
        return cls(np.eye(cutoff ** modes, dtype=complex), cutoff, modes)

    @property
    def cutoff(self) -> int:
        return self.indexer.cutoff

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dimension(self) -> int:
        return self._entries.shape[0]

    @property
    def shape(self) -> Tuple[int, int]:
        return self._entries.shape

    def _like(self, entries: np.ndarray) -> OperatorMatrix:
        return OperatorMatrix(entries, self.cutoff, self.modes)

    def _check_compatible(self, other: OperatorMatrix) -> None:
        _check_cutoffs(self.cutoff, other.cutoff)
        if self.modes != other.modes:
            raise DimensionError(
                f"Cannot combine {self.modes}-mode and {other.modes}-mode operators."
            )

    def adjoint(self) -> OperatorMatrix:
        return self._like(self._entries.conj().T)

    def conj(self) -> OperatorMatrix:
        return self._like(self._entries.conj())

    def transpose(self) -> OperatorMatrix:
        return self._like(self._entries.T)

    def hermiticity_residual(self) -> float:
        """max |M - M^dagger|."""
        return float(np.max(np.abs(self._entries - self._entries.conj().T)))

    def unitarity_residual(self) -> float:
        """max |M^dagger M - I|."""
        product = self._entries.conj().T @ self._entries
        return float(np.max(np.abs(product - np.eye(self.dimension))))

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return self.hermiticity_residual() <= tol

    def is_unitary(self, tol: float = 1e-10) -> bool:
        return self.unitarity_residual() <= tol

    def is_diagonal(self, tol: float = 1e-12) -> bool:
        off = self._entries - np.diag(np.diag(self._entries))
        return float(np.max(np.abs(off))) <= tol

    def max_abs_diff(self, other: OperatorMatrix, mask: np.ndarray = None) -> float:
        """Max entry difference, optionally restricted to a basis mask."""
        self._check_compatible(other)
        diff = np.abs(self._entries - other.entries)
        if mask is not None:
            diff = diff[np.ix_(mask, mask)]
        return float(np.max(diff)) if diff.size else 0.0

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            self._check_compatible(other)
            return self._like(self._entries @ other.entries)
        if isinstance(other, TwoModeState):
            if self.modes != 2:
                raise DimensionError(
                    "A single-mode operator cannot act on a two-mode state."
                )
            _check_cutoffs(self.cutoff, other.cutoff)
            return TwoModeState(self._entries @ other.amplitudes, self.cutoff)
        if isinstance(other, np.ndarray):
            return self._entries @ other
        return NotImplemented

    def __add__(self, other: OperatorMatrix) -> OperatorMatrix:
        self._check_compatible(other)
        return self._like(self._entries + other.entries)

    def __sub__(self, other: OperatorMatrix) -> OperatorMatrix:
        self._check_compatible(other)
        return self._like(self._entries - other.entries)

    def __mul__(self, scalar: complex) -> OperatorMatrix:
        if not np.isscalar(scalar):
            return NotImplemented
        return self._like(self._entries * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> OperatorMatrix:
        return self._like(-self._entries)

    def to_dict(self) -> Dict:
        return {
            "cutoff": self.cutoff,
            "modes": self.modes,
            "entries": complex_pairs(self._entries),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> OperatorMatrix:
        data = json.loads(s)
        modes = data.get("modes", 2)
        dimension = data["cutoff"] ** modes
        entries = from_complex_pairs(data["entries"]).reshape(dimension, dimension)
        return cls(entries, data["cutoff"], modes)

    def __repr__(self):
        return (
            f"OperatorMatrix(cutoff={self.cutoff}, modes={self.modes}, "
            f"shape={self.shape})"
        )


def _check_cutoffs(first: int, second: int) -> None:
    if first != second:
        raise DimensionError(f"Cutoff mismatch: {first} vs {second}.")


@cutoff_guard(minimum=1)
def annihilation_matrix(cutoff: int) -> OperatorMatrix:
    """Single-mode annihilator with a[m, m+1] = sqrt(m+1)."""
    entries = np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), k=1)
    return OperatorMatrix(entries, cutoff, modes=1)


@cutoff_guard(minimum=1)
def number_matrix(cutoff: int) -> OperatorMatrix:
    """Single-mode number operator diag(0, 1, ..., cutoff-1)."""
    return OperatorMatrix(np.diag(np.arange(cutoff, dtype=float)), cutoff, modes=1)


@cutoff_guard(minimum=1)
def identity(cutoff: int, modes: int = 2) -> OperatorMatrix:
    return OperatorMatrix.identity(cutoff, modes)


def embed(op: OperatorMatrix, mode: str, cutoff: int) -> OperatorMatrix:
    """Lift a single-mode operator to op (x) I (mode A) or I (x) op (mode B)."""
    if op.modes != 1 or op.cutoff != cutoff:
        raise DimensionError(
            f"Expected a single-mode cutoff-{cutoff} operator, got {op!r}."
        )
    eye = np.eye(cutoff, dtype=complex)
    if mode == MODE_A:
        return OperatorMatrix(np.kron(op.entries, eye), cutoff)
    if mode == MODE_B:
        return OperatorMatrix(np.kron(eye, op.entries), cutoff)
    raise ValueError(f"Mode must be '{MODE_A}' or '{MODE_B}', got {mode!r}.")


def mode_operators(cutoff: int) -> Tuple[OperatorMatrix, OperatorMatrix]:
    """Two-mode annihilators (A, B)."""
    a = annihilation_matrix(cutoff)
    return embed(a, MODE_A, cutoff), embed(a, MODE_B, cutoff)


def quadrature_operators(
    cutoff: int,
) -> Tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix, OperatorMatrix]:
    """(X1, P1, X2, P2).

    x = (a + a^dagger)/sqrt(2) and p = (a - a^dagger)/(i sqrt(2)).
    """
    ops = []
    for lowering in mode_operators(cutoff):
        raising = lowering.adjoint()
        ops.append((lowering + raising) * (1 / np.sqrt(2)))
        ops.append((lowering - raising) * (-1j / np.sqrt(2)))
    return tuple(ops)


def matrix_exponential(G: OperatorMatrix) -> OperatorMatrix:
    """exp(G) by scaling-and-squaring Pade (scipy.linalg.expm)."""
    check_finite(G.entries, "Generator")
    return OperatorMatrix(expm(G.entries), G.cutoff, G.modes)


def exp_series_apply(
    G: OperatorMatrix, vector: np.ndarray, terms: int = None
) -> np.ndarray:
    """Truncated power series sum_k G^k v / k!, applied term by term.

    With `terms=None` the series runs until the next term is below 1e-17
    relative to the running sum, or until 4 * dimension terms.
    """
    vector = np.asarray(vector, dtype=complex)
    check_finite(vector, "Vector")
    limit = terms if terms is not None else 4 * G.dimension
    total = vector.copy()
    term = vector.copy()
    for k in range(1, limit + 1):
        term = (G.entries @ term) / k
        total = total + term
        if terms is None and np.max(np.abs(term)) <= 1e-17 * np.max(np.abs(total)):
            break
    return total


def expectation(state: TwoModeState, op: OperatorMatrix) -> complex:
    """<psi|O|psi>, reduced in a fixed order."""
    _check_cutoffs(state.cutoff, op.cutoff)
    if op.modes != 2:
        raise DimensionError("Expectation needs a two-mode operator.")
    psi = state.amplitudes
    return complex(np.vdot(psi, op.entries @ psi))


def total_photon_mask(cutoff: int, max_total: int) -> np.ndarray:
    """Boolean mask of basis states with m + n <= max_total."""
    return ModeIndexer(cutoff).total_photons() <= max_total


def block_projector(cutoff: int, max_total: int) -> OperatorMatrix:
    """Diagonal projector onto total photon number <= max_total."""
    mask = total_photon_mask(cutoff, max_total)
    return OperatorMatrix(np.diag(mask.astype(complex)), cutoff)


def cross_sector_leakage(op: OperatorMatrix) -> float:
    """Largest entry connecting different total photon numbers."""
    total = op.indexer.total_photons()
    if op.modes == 1:
        total = np.arange(op.cutoff)
    off = total[:, None] != total[None, :]
    return float(np.max(np.abs(op.entries[off]))) if off.any() else 0.0

