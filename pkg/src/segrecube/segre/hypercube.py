"""
The directed (n-1)-cube of partial Segre contractions.

Vertex ``v = (v_1, ..., v_{n-1})``: ``v_j = 1`` means the product between
qubit ``j`` and qubit ``j+1`` has been contracted by a Segre map.  The
initial vertex ``(0, ..., 0)`` is ``P^1 x ... x P^1`` and the final vertex
``(1, ..., 1)`` is ``P^{2^n - 1}``.  An edge ``[j]`` flips one bit from 0 to 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Sequence

import numpy as np

from ..errors import ShapeMismatch
from ..state import ProjectivePoint
from .varieties import EPS_RANK, cuts_to_composition, peel, segre_embed


@dataclass(frozen=True, order=True)
class HypercubeVertex:
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"vertex bits must be 0/1, got {self.bits}")
        object.__setattr__(self, "bits", bits)

    @property
    def degree(self) -> int:
        return sum(self.bits)

    @property
    def n(self) -> int:
        return len(self.bits) + 1

    def parts(self) -> tuple[int, ...]:
        """Qubit counts of the factors at this vertex.

        Factors are separated exactly at the uncontracted positions (bits
        equal to 0).
        """
        return cuts_to_composition(self.open_cuts(), self.n)

    def open_cuts(self) -> tuple[int, ...]:
        return tuple(j for j, b in enumerate(self.bits, start=1) if b == 0)

    @classmethod
    def from_cuts(cls, cuts: Sequence[int], n: int) -> "HypercubeVertex":
        cut_set = set(cuts)
        return cls(tuple(0 if j in cut_set else 1 for j in range(1, n)))

    def __str__(self):
        return "(" + "".join(map(str, self.bits)) + ")"


@dataclass(frozen=True)
class Hypercube:
    n: int
    vertices: tuple[HypercubeVertex, ...]
    edges: tuple[tuple[HypercubeVertex, HypercubeVertex, int], ...]

    @property
    def initial(self) -> HypercubeVertex:
        return HypercubeVertex((0,) * (self.n - 1))

    @property
    def final(self) -> HypercubeVertex:
        return HypercubeVertex((1,) * (self.n - 1))

    def successors(self, v: HypercubeVertex) -> list[tuple[HypercubeVertex, int]]:
        return [(w, j) for src, w, j in self.edges if src == v]

    def maximal_paths(self) -> list[tuple[int, ...]]:
        """Edge-label sequences of every directed path from initial to final."""
        return list(permutations(range(1, self.n)))


def hypercube(n: int) -> Hypercube:
    if n < 2:
        raise ValueError("the cube needs n >= 2")
    vertices = tuple(HypercubeVertex(bits) for bits in product((0, 1), repeat=n - 1))
    edges = []
    for v in vertices:
        for j, b in enumerate(v.bits, start=1):
            if b == 0:
                w = HypercubeVertex(v.bits[:j - 1] + (1,) + v.bits[j:])
                edges.append((v, w, j))
    return Hypercube(n, vertices, tuple(edges))


def contract(points: list[ProjectivePoint], parts: list[int], j: int):
    """Apply edge ``[j]``: Segre-embed the factors on either side of position ``j``."""
    boundary = 0
    for idx, m in enumerate(parts[:-1]):
        boundary += m
        if boundary == j:
            merged = segre_embed(points[idx], points[idx + 1])
            return (points[:idx] + [merged] + points[idx + 2:],
                    parts[:idx] + [m + parts[idx + 1]] + parts[idx + 2:])
    raise ValueError(f"position {j} is already contracted")


def path_image(points: Sequence[ProjectivePoint], path: Sequence[int]) -> ProjectivePoint:
    """Run qubit points through the edges of ``path`` in order."""
    pts, parts = list(points), [1] * len(points)
    for j in path:
        pts, parts = contract(pts, parts, j)
    if len(pts) != 1:
        raise ValueError("path does not reach the final vertex")
    return pts[0]


def lives_in(z: ProjectivePoint, v: HypercubeVertex, epsilon: float = EPS_RANK) -> bool:
    """Whether ``z`` is the image of a point at ``v`` under the remaining edges.

    Equivalent to ``z`` factoring over ``v.parts()``, tested by recursive
    rank-1 peeling with relative threshold ``epsilon``.
    """
    if z.coords.size != 2 ** v.n:
        raise ShapeMismatch(f"point in P^{z.dim} does not match a {v.n}-qubit vertex")
    sizes = [2 ** m for m in v.parts()]
    return peel(z.unit(), sizes, epsilon) is not None


def vertex_points(z: ProjectivePoint, v: HypercubeVertex, epsilon: float = EPS_RANK):
    """The factor points witnessing that ``z`` lives in ``v``, or ``None``."""
    sizes = [2 ** m for m in v.parts()]
    result = peel(z.unit(), sizes, epsilon)
    if result is None:
        return None
    factors, _ = result
    return [ProjectivePoint(np.asarray(f)) for f in factors]
