"""
Dense pure-state kernels.

Basis convention: amplitude index ``i`` encodes the ket ``|i_1 ... i_n>`` by
its binary expansion with the first qubit as the most significant bit, so
``|011>`` lives at index 3.  Every other module relies on this ordering.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadCut,
    BadPauliIndex,
    ImaginaryResidueTooLarge,
    NotNormalized,
    NotPowerOfTwo,
    ZeroVector,
)

NORM_TOL = 1e-12
IMAG_TOL = 1e-10
PROJECTIVE_TOL = 1e-10

# sigma_0 .. sigma_3, only used by oracles and docs; kernels never build them
PAULI = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

_SIGMA2_PHASE = np.array([-1j, 1j]).reshape(1, 2, 1)
_SIGMA3_SIGN = np.array([1.0, -1.0]).reshape(1, 2, 1)


def _qubit_count(length: int) -> int:
    if length < 2 or length & (length - 1):
        raise NotPowerOfTwo(f"amplitude count {length} is not a power of two >= 2")
    return length.bit_length() - 1


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state of ``n`` qubits.

    Use :func:`from_amplitudes` rather than the constructor; it validates and
    optionally normalizes the input.
    """

    n: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.amps.shape != (2 ** self.n,):
            raise NotPowerOfTwo(f"expected {2 ** self.n} amplitudes, got {self.amps.shape}")
        if abs(np.vdot(self.amps, self.amps).real - 1.0) > NORM_TOL:
            raise NotNormalized("amplitudes are not unit norm")

    def __len__(self):
        return self.amps.shape[0]

    def __repr__(self):
        return f"StateVector(n={self.n})"

    def tensor(self, other: "StateVector") -> "StateVector":
        return from_amplitudes(np.kron(self.amps, other.amps))

    def allclose(self, other: "StateVector", atol: float = 1e-12) -> bool:
        return self.n == other.n and np.allclose(self.amps, other.amps, rtol=0, atol=atol)


def from_amplitudes(raw: Iterable[complex], normalize: bool = True) -> StateVector:
    """Build a :class:`StateVector` from raw amplitudes.

    With ``normalize`` off the input must already have unit norm to 1e-12;
    otherwise it is rescaled.
    """
    amps = np.asarray(list(raw) if not isinstance(raw, np.ndarray) else raw, dtype=complex).ravel()
    n = _qubit_count(amps.shape[0])
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise ZeroVector("the zero vector is not a state")
    if normalize:
        amps = amps / norm
    elif abs(norm * norm - 1.0) > NORM_TOL:
        raise NotNormalized(f"norm^2 = {norm * norm!r} deviates from 1")
    return StateVector(n, _frozen(amps))


def basis_state(bits: str) -> StateVector:
    amps = np.zeros(2 ** len(bits), dtype=complex)
    amps[int(bits, 2)] = 1.0
    return StateVector(len(bits), _frozen(amps))


def tensor(*states: StateVector) -> StateVector:
    amps = np.ones(1, dtype=complex)
    for s in states:
        amps = np.kron(amps, s.amps)
    return from_amplitudes(amps)


def random_state(n: int, rng: np.random.Generator) -> StateVector:
    """Haar-random state from normalized complex Gaussian amplitudes."""
    z = rng.standard_normal(2 ** n) + 1j * rng.standard_normal(2 ** n)
    return from_amplitudes(z)


def phased(psi: StateVector, phi: float) -> StateVector:
    return from_amplitudes(np.exp(1j * phi) * psi.amps, normalize=False)


# --- projective points -----------------------------------------------------


def projective_distance(p: Sequence[complex], q: Sequence[complex]) -> float:
    """``1 - |<p, q>| / (|p| |q|)``; zero iff p and q are proportional."""
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    if p.shape != q.shape:
        return 1.0
    return float(max(0.0, 1.0 - abs(np.vdot(p, q)) / (np.linalg.norm(p) * np.linalg.norm(q))))


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """Homogeneous coordinates ``[z_0 : ... : z_N]``; equality ignores scale."""

    coords: np.ndarray = field(repr=False)

    def __post_init__(self):
        coords = _frozen(np.asarray(self.coords, dtype=complex).ravel())
        if coords.size == 0 or not np.any(np.abs(coords) > 0):
            raise ZeroVector("a projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", coords)

    __hash__ = None

    @property
    def dim(self) -> int:
        """Projective dimension N (one less than the coordinate count)."""
        return self.coords.size - 1

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return projective_distance(self.coords, other.coords) < PROJECTIVE_TOL

    def unit(self) -> np.ndarray:
        return self.coords / np.linalg.norm(self.coords)

    def affine(self, tol: float = 1e-12) -> np.ndarray:
        """Representative with the first non-negligible coordinate equal to 1."""
        scale = np.max(np.abs(self.coords))
        first = np.flatnonzero(np.abs(self.coords) > tol * scale)[0]
        return self.coords / self.coords[first]

    def __repr__(self):
        return "[" + ":".join(_short_complex(c) for c in self.affine()) + "]"


def _short_complex(z: complex, tol: float = 1e-12) -> str:
    re_, im = (0.0 if abs(z.real) < tol else z.real), (0.0 if abs(z.imag) < tol else z.imag)
    if im == 0:
        return f"{re_ + 0.0:.6g}"
    if re_ == 0:
        return f"{im:.6g}i"
    return f"({re_:.6g}{im:+.6g}i)"


def projective_point(psi: StateVector) -> ProjectivePoint:
    return ProjectivePoint(psi.amps)


# --- Pauli strings ---------------------------------------------------------


def apply_pauli(amps: np.ndarray, n: int, qubit: int, index: int) -> np.ndarray:
    """Apply ``sigma_index`` to ``qubit`` (0-based, 0 = most significant).

    The vector is viewed as ``(2**qubit, 2, rest)`` so the factor acts on the
    middle axis by a strided sweep; returns a new array.
    """
    if index == 0:
        return amps
    view = amps.reshape(1 << qubit, 2, 1 << (n - qubit - 1))
    if index == 1:
        out = view[:, ::-1, :]
    elif index == 2:
        out = view[:, ::-1, :] * _SIGMA2_PHASE
    elif index == 3:
        out = view * _SIGMA3_SIGN
    else:
        raise BadPauliIndex(f"Pauli index {index} not in 0..3")
    return np.ascontiguousarray(out).reshape(-1)


def hermitian_expectation(bra: np.ndarray, ket: np.ndarray) -> float:
    value = np.vdot(bra, ket)
    if abs(value.imag) > IMAG_TOL:
        raise ImaginaryResidueTooLarge(f"imaginary part {value.imag!r} of a Hermitian expectation")
    return float(value.real)


def pauli_string_expectation(psi: StateVector, indices: Sequence[int]) -> float:
    """``<psi| sigma_{i_1} x ... x sigma_{i_l} x I |psi>`` without building the operator."""
    indices = tuple(int(i) for i in indices)
    if not 1 <= len(indices) <= psi.n:
        raise BadPauliIndex(f"string length {len(indices)} not in 1..{psi.n}")
    for i in indices:
        if i not in (0, 1, 2, 3):
            raise BadPauliIndex(f"Pauli index {i} not in 0..3")
    phi = psi.amps
    for qubit, i in enumerate(indices):
        phi = apply_pauli(phi, psi.n, qubit, i)
    return hermitian_expectation(psi.amps, phi)


# --- reductions ------------------------------------------------------------


def _check_cut(psi: StateVector, ell: int) -> None:
    if not 1 <= ell <= psi.n - 1:
        raise BadCut(f"cut {ell} outside 1..{psi.n - 1}")


def reshape_matrix(psi: StateVector, ell: int) -> np.ndarray:
    """Row-major ``2**ell x 2**(n-ell)`` matrix; row j is the amplitude block A_j."""
    _check_cut(psi, ell)
    return psi.amps.reshape(1 << ell, 1 << (psi.n - ell))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray = field(repr=False)
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        entries = _frozen(self.entries)
        object.__setattr__(self, "entries", entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("density matrix must be square")
        if self.check:
            if not np.allclose(entries, entries.conj().T, rtol=0, atol=1e-10):
                raise ValueError("density matrix is not Hermitian")
            if abs(np.trace(entries) - 1.0) > 1e-10:
                raise ValueError("density matrix trace is not 1")
            if np.linalg.eigvalsh(entries).min() < -1e-10:
                raise ValueError("density matrix is not positive semidefinite")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def reduced_density_matrix(psi: StateVector, ell: int) -> DensityMatrix:
    """Partial trace over the trailing ``n - ell`` qubits."""
    m = reshape_matrix(psi, ell)
    # positive semidefinite and Hermitian by construction
    return DensityMatrix(m @ m.conj().T, check=False)


def purity(rho: DensityMatrix) -> float:
    """``Tr rho^2``, computed as the squared Frobenius norm of the Hermitian rho."""
    e = rho.entries
    return float(np.vdot(e, e).real)
