"""
Segre embeddings, their 2x2 minor systems and rank-1 membership tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import prod
from typing import Sequence

import numpy as np

from ..errors import ShapeMismatch
from ..state import ProjectivePoint

EPS_RANK = 1e-8
EPS_MINOR = 1e-8


@dataclass(frozen=True)
class SegreShape:
    """Projective dimensions ``(k_1, ..., k_q)`` of the factors."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(k) for k in self.dims)
        if not dims or any(k < 1 for k in dims):
            raise ShapeMismatch(f"bad Segre dims {self.dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def target_dim(self) -> int:
        return prod(k + 1 for k in self.dims) - 1

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(k + 1 for k in self.dims)

    @classmethod
    def qubits(cls, parts: Sequence[int]) -> "SegreShape":
        """Shape ``(N_{m_1}, ..., N_{m_q})`` for a composition of qubit counts."""
        return cls(tuple(2 ** m - 1 for m in parts))

    def __len__(self):
        return len(self.dims)


def segre_embed(a: ProjectivePoint, b: ProjectivePoint) -> ProjectivePoint:
    """Pairwise products ``z_ij = a_i b_j`` in lexicographic order."""
    return ProjectivePoint(np.outer(a.coords, b.coords).ravel())


def generalized_segre_embed(points: Sequence[ProjectivePoint], shape: SegreShape) -> ProjectivePoint:
    if len(points) != len(shape) or any(p.dim != k for p, k in zip(points, shape.dims)):
        raise ShapeMismatch(f"points of dims {[p.dim for p in points]} do not match {shape.dims}")
    coords = np.ones(1, dtype=complex)
    for p in points:
        # z_{i1...iq} = a^1_{i1} ... a^q_{iq}, built directly rather than by pairwise maps
        coords = (coords[:, None] * p.coords[None, :]).ravel()
    return ProjectivePoint(coords)


# --- minors ----------------------------------------------------------------


@dataclass(frozen=True)
class MinorIndex:
    """Minor ``A[j,s] A[k,t] - A[j,t] A[k,s]`` with ``j < k`` and ``s < t``."""

    rows: tuple[int, int]
    cols: tuple[int, int]

    def value(self, matrix: np.ndarray) -> complex:
        (j, k), (s, t) = self.rows, self.cols
        return matrix[j, s] * matrix[k, t] - matrix[j, t] * matrix[k, s]


def minor_count(k: int, ell: int) -> int:
    """Number of 2x2 minors of a ``(k+1) x (ell+1)`` matrix."""
    return k * (k + 1) * ell * (ell + 1) // 4


def enumerate_minors(matrix: np.ndarray) -> list[tuple[MinorIndex, complex]]:
    """Every 2x2 minor, one at a time.  Reference path; see :func:`minor_values`."""
    rows, cols = matrix.shape
    out = []
    for r in combinations(range(rows), 2):
        for c in combinations(range(cols), 2):
            idx = MinorIndex(r, c)
            out.append((idx, idx.value(matrix)))
    return out


def minor_values(matrix: np.ndarray) -> np.ndarray:
    """All 2x2 minors as a flat array, in :func:`enumerate_minors` order."""
    rows, cols = matrix.shape
    j, k = np.triu_indices(rows, 1)
    s, t = np.triu_indices(cols, 1)
    a, b = matrix[j], matrix[k]
    return (a[:, s] * b[:, t] - a[:, t] * b[:, s]).ravel()


def minor_square_sum(matrix: np.ndarray) -> float:
    """``sum_I |M_I|^2`` over all 2x2 minors without storing them.

    For a row pair (j, k) the antisymmetric matrix ``a_j b_k^T - b_k a_j^T``
    holds every minor twice, so half its squared norm is the row-pair sum.
    """
    rows = matrix.shape[0]
    j, k = np.triu_indices(rows, 1)
    outer = matrix[j][:, :, None] * matrix[k][:, None, :]
    anti = outer - outer.transpose(0, 2, 1)
    return float(0.5 * np.vdot(anti, anti).real)


# --- rank-1 tests ----------------------------------------------------------


def _phase_fix(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate so the first non-negligible entry is real positive."""
    first = np.flatnonzero(np.abs(v) > tol * np.max(np.abs(v)))[0]
    return v * (abs(v[first]) / v[first])


def rank_one_split(matrix: np.ndarray, eps_rank: float = EPS_RANK):
    """Factor ``matrix ~ sigma_1 u v^T`` when ``sigma_2 < eps_rank * sigma_1``.

    Returns ``(u, w)`` with ``u`` unit-norm and phase-fixed and ``w`` carrying
    the remaining scale, so that ``outer(u, w)`` reproduces the matrix; or
    ``None`` when the matrix is not numerically rank 1.
    """
    if min(matrix.shape) == 1:
        if matrix.shape[0] == 1:
            u = np.ones(1, dtype=complex)
            return u, matrix[0].copy()
        col = matrix[:, 0]
        u = _phase_fix(col / np.linalg.norm(col))
        return u, np.array([np.vdot(u, col)])
    uu, sv, _ = np.linalg.svd(matrix, full_matrices=False)
    if sv[0] == 0.0 or sv[1] >= eps_rank * sv[0]:
        return None
    u = _phase_fix(uu[:, 0])
    return u, u.conj() @ matrix


def peel(coords: np.ndarray, sizes: Sequence[int], eps_rank: float = EPS_RANK):
    """Recursive left-to-right rank-1 factorization along ``sizes``.

    Returns the list of unit-norm, phase-fixed factors plus the leftover
    complex scale, or ``None`` as soon as one reshape fails the rank test.
    """
    factors = []
    rest = np.asarray(coords, dtype=complex)
    for size in sizes[:-1]:
        split = rank_one_split(rest.reshape(size, -1), eps_rank)
        if split is None:
            return None
        u, rest = split
        factors.append(u)
    norm = np.linalg.norm(rest)
    last = _phase_fix(rest / norm)
    factors.append(last)
    scale = np.vdot(last, rest)
    return factors, scale


def membership(z: ProjectivePoint, shape: SegreShape, epsilon: float = EPS_MINOR) -> tuple[bool, float]:
    """Whether ``z`` lies on the Segre variety of ``shape``, and the worst minor seen.

    Bipartite shapes test all 2x2 minors of the reshaped unit vector.  For
    more factors the leading bipartite reshape must pass, then the extracted
    trailing factor is tested against the remaining shape.
    """
    if z.dim != shape.target_dim:
        raise ShapeMismatch(f"point in P^{z.dim} cannot lie in a shape targeting P^{shape.target_dim}")
    if len(shape) == 1:
        return True, 0.0
    head = shape.sizes[0]
    matrix = z.unit().reshape(head, -1)
    minors = minor_values(matrix)
    worst = float(np.max(np.abs(minors))) if minors.size else 0.0
    if worst >= epsilon:
        return False, worst
    if len(shape) == 2:
        return True, worst
    # numerically rank 1 already; the leading right singular vector is the trailing factor
    _, _, vh = np.linalg.svd(matrix, full_matrices=False)
    inside, sub_worst = membership(ProjectivePoint(vh[0]), SegreShape(shape.dims[1:]), epsilon)
    return inside, max(worst, sub_worst)


def tensor_coords(factors: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors, np.ones(1, dtype=complex))


def composition_cuts(parts: Sequence[int]) -> tuple[int, ...]:
    """Cut positions (qubits left of each boundary) of a composition."""
    cuts, total = [], 0
    for m in parts[:-1]:
        total += m
        cuts.append(total)
    return tuple(cuts)


def cuts_to_composition(cuts: Sequence[int], n: int) -> tuple[int, ...]:
    bounds = [0, *sorted(cuts), n]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def compositions(n: int):
    """All ``2**(n-1)`` ordered compositions of ``n``."""
    for mask in range(1 << (n - 1)):
        cuts = [i + 1 for i in range(n - 1) if mask >> i & 1]
        yield cuts_to_composition(cuts, n)

