"""Pauli-string algebra and state containers.

Conventions: qubit 0 is the leftmost tensor factor and the most significant
bit of the amplitude index. Pauli sums carry real coefficients only, so every
PauliSum is Hermitian by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DimensionError

SINGLE_QUBIT = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

# Dense materialization cap: 2^13 = 8192 amplitudes.
DENSE_QUBIT_CAP = 13

NORM_ATOL = 1e-12
HERMITICITY_ATOL = 1e-12
PSD_SLACK = -1e-10


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis, e.g. "XYZI". No phase."""

    symbols: str

    def __post_init__(self):
        if len(self.symbols) < 1:
            raise ValueError("Pauli string must act on at least one qubit")
        bad = set(self.symbols) - set("IXYZ")
        if bad:
            raise ValueError(f"invalid Pauli symbols: {sorted(bad)}")

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def weight(self) -> int:
        """Number of non-identity factors (locality of the term)."""
        return sum(1 for c in self.symbols if c != "I")

    def __str__(self) -> str:
        return self.symbols


def y_parity(p: PauliString) -> str:
    """Parity of the Y count: "even" strings have real dense matrices,
    "odd" ones purely imaginary."""
    return "odd" if p.symbols.count("Y") % 2 else "even"


def dense_matrix(p: PauliString) -> np.ndarray:
    """Kronecker materialization; leftmost symbol acts on the most
    significant qubit."""
    if p.n > DENSE_QUBIT_CAP:
        raise CapacityError(
            f"dense materialization capped at {DENSE_QUBIT_CAP} qubits, got {p.n}"
        )
    out = SINGLE_QUBIT[p.symbols[0]]
    for c in p.symbols[1:]:
        out = np.kron(out, SINGLE_QUBIT[c])
    return out


def _masks(p: PauliString) -> tuple[int, int, int]:
    """(flip mask, sign mask, y count). Qubit q maps to bit n-1-q."""
    flip = sign = 0
    n = p.n
    for q, c in enumerate(p.symbols):
        bit = 1 << (n - 1 - q)
        if c in "XY":
            flip |= bit
        if c in "ZY":
            sign |= bit
    return flip, sign, p.symbols.count("Y")


def _apply_string(p: PauliString, s: np.ndarray) -> np.ndarray:
    """Matrix-free P @ s via bit manipulation."""
    dim = 1 << p.n
    if s.shape != (dim,):
        raise DimensionError(f"state has shape {s.shape}, expected ({dim},)")
    flip, sign, ny = _masks(p)
    idx = np.arange(dim)
    parity = np.zeros(dim, dtype=np.int64)
    m = sign
    while m:
        shift = m.bit_length() - 1
        parity ^= (idx >> shift) & 1
        m &= ~(1 << shift)
    phases = (1j**ny) * np.where(parity, -1.0, 1.0)
    out = np.empty(dim, dtype=complex)
    out[idx ^ flip] = phases * s
    return out


@dataclass(frozen=True)
class PauliSum:
    """Real-weighted combination of Pauli strings; Hermitian by construction.

    Duplicate strings are merged and zero-coefficient terms dropped at
    construction time.
    """

    n: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("qubit count must be >= 1")
        merged: dict[str, float] = {}
        for coeff, string in self.terms:
            if isinstance(coeff, complex):
                if abs(coeff.imag) > 0:
                    raise ValueError("PauliSum coefficients must be real")
                coeff = coeff.real
            if string.n != self.n:
                raise DimensionError(
                    f"term {string} acts on {string.n} qubits, sum declares {self.n}"
                )
            merged[string.symbols] = merged.get(string.symbols, 0.0) + float(coeff)
        canonical = tuple(
            (c, PauliString(s)) for s, c in merged.items() if c != 0.0
        )
        object.__setattr__(self, "terms", canonical)

    @classmethod
    def from_terms(
        cls, terms: Iterable[tuple[float, str | PauliString]], n: int | None = None
    ) -> "PauliSum":
        normalized = [
            (c, p if isinstance(p, PauliString) else PauliString(p))
            for c, p in terms
        ]
        if n is None:
            if not normalized:
                raise ValueError("qubit count required for an empty sum")
            n = normalized[0][1].n
        return cls(n=n, terms=tuple(normalized))

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    def dense(self) -> np.ndarray:
        if self.n > DENSE_QUBIT_CAP:
            raise CapacityError(
                f"dense materialization capped at {DENSE_QUBIT_CAP} qubits"
            )
        out = np.zeros((1 << self.n, 1 << self.n), dtype=complex)
        for coeff, string in self.terms:
            out += coeff * dense_matrix(string)
        return out

    def to_records(self) -> list[dict]:
        return [{"coeff": c, "pauli": p.symbols} for c, p in self.terms]

    @classmethod
    def from_records(cls, records: Sequence[dict], n: int | None = None) -> "PauliSum":
        return cls.from_terms([(r["coeff"], r["pauli"]) for r in records], n=n)


def apply_pauli_sum(h: PauliSum, s: np.ndarray) -> np.ndarray:
    """H @ s without materializing H."""
    s = np.asarray(s)
    dim = 1 << h.n
    if s.shape != (dim,):
        raise DimensionError(f"state has shape {s.shape}, expected ({dim},)")
    out = np.zeros(dim, dtype=complex)
    for coeff, string in h.terms:
        out += coeff * _apply_string(string, s)
    return out


def _as_vector(s) -> np.ndarray:
    return s.amplitudes if hasattr(s, "amplitudes") else np.asarray(s)


def expectation(s, o: PauliSum) -> float:
    """<s|O|s> for Hermitian O; the imaginary residue is asserted tiny and
    discarded."""
    vec = _as_vector(s)
    val = np.vdot(vec, apply_pauli_sum(o, vec))
    if abs(val.imag) >= HERMITICITY_ATOL:
        raise ValueError(
            f"expectation has imaginary residue {val.imag:.3e}; operator not Hermitian?"
        )
    return float(val.real)


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _qubit_count(dim: int, what: str) -> int:
    n = int(dim).bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise DimensionError(f"{what} length {dim} is not a power of two >= 2")
    return n


@dataclass(frozen=True)
class PureState:
    """Normalized complex amplitude vector over n qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.amplitudes, dtype=complex)
        _qubit_count(arr.size, "amplitude vector")
        norm = np.linalg.norm(arr)
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm {norm} deviates from 1 beyond {NORM_ATOL}")
        object.__setattr__(self, "amplitudes", _freeze(arr.copy()))

    @classmethod
    def from_amplitudes(cls, amplitudes, atol: float = 1e-8) -> "PureState":
        """Renormalize a nearly normalized vector (tolerance atol)."""
        arr = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(arr)
        if abs(norm - 1.0) > atol:
            raise ValueError(f"amplitudes have norm {norm}, outside tolerance {atol}")
        return cls(arr / norm)

    @property
    def n(self) -> int:
        return int(self.amplitudes.size).bit_length() - 1


@dataclass(frozen=True)
class MixedState:
    """Density matrix: Hermitian, positive semidefinite, unit trace."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionError(f"density matrix must be square, got {mat.shape}")
        _qubit_count(mat.shape[0], "density matrix")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_ATOL:
            raise ValueError("density matrix is not Hermitian within 1e-12")
        if abs(np.trace(mat).real - 1.0) > NORM_ATOL:
            raise ValueError("density matrix trace deviates from 1 beyond 1e-12")
        if np.min(np.linalg.eigvalsh(mat)) < PSD_SLACK:
            raise ValueError("density matrix has an eigenvalue below -1e-10")
        object.__setattr__(self, "matrix", _freeze(mat.copy()))

    @classmethod
    def from_pure(cls, psi: PureState) -> "MixedState":
        v = psi.amplitudes
        return cls(np.outer(v, v.conj()))

    @classmethod
    def from_ensemble(
        cls, members: Iterable[tuple[float, PureState]]
    ) -> "MixedState":
        members = list(members)
        dim = members[0][1].amplitudes.size
        mat = np.zeros((dim, dim), dtype=complex)
        for p, psi in members:
            v = psi.amplitudes
            mat += p * np.outer(v, v.conj())
        return cls(mat)

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0]).bit_length() - 1
