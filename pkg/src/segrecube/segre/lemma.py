"""
Numerical check that a three-factor Segre variety is the intersection of its
two bipartite coarsenings:

    S(k1, k2, k3) = S(k1, N(k2, k3))  cap  S(N(k1, k2), k3)

Triple membership is decided constructively: the three mode unfoldings give
candidate factors ``a, b, c`` and the point must be proportional to
``a x b x c``.  That never consults either bipartite variety, so it is an
independent witness for the intersection side.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import TooLarge
from ..state import PROJECTIVE_TOL, ProjectivePoint, projective_distance
from .varieties import EPS_MINOR, SegreShape, membership

MAX_TARGET_DIM = 63
# factors two random triple products have in common
_SHARE_PATTERNS = ("", "a", "b", "c", "ab", "ac", "bc")


def _gauss(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def triple_witness(z: np.ndarray, dims: tuple[int, int, int]) -> bool:
    """Whether ``z`` equals ``a x b x c`` for the leading mode-unfolding vectors."""
    sizes = tuple(k + 1 for k in dims)
    t = np.asarray(z, dtype=complex).reshape(sizes)
    vecs = []
    for mode in range(3):
        unfolding = np.moveaxis(t, mode, 0).reshape(sizes[mode], -1)
        u, _, _ = np.linalg.svd(unfolding, full_matrices=False)
        vecs.append(u[:, 0])
    candidate = np.einsum("i,j,k->ijk", *vecs).ravel()
    return projective_distance(candidate, z) < PROJECTIVE_TOL


@dataclass
class LemmaReport:
    dims: tuple[int, int, int]
    trials: int
    seed: int
    passed: dict = field(default_factory=lambda: {"a": 0, "b": 0, "c": 0})
    failed: dict = field(default_factory=lambda: {"a": 0, "b": 0, "c": 0})

    @property
    def ok(self) -> bool:
        return not any(self.failed.values()) and all(v >= self.trials for v in self.passed.values())

    def lines(self) -> list[str]:
        names = {
            "a": "triple products lie in both bipartite varieties",
            "b": "one-sided bipartite points miss the intersection",
            "c": "detected intersection points are triple products",
        }
        return [f"({key}) {names[key]}: {self.passed[key]} pass, {self.failed[key]} fail"
                for key in "abc"]


def verify_tripartite_lemma(trials: int, dims=(1, 1, 1), seed: int = 0,
                            epsilon: float = EPS_MINOR) -> LemmaReport:
    """Run ``trials`` seeded checks of each class (a), (b), (c).

    (c) draws candidates as sums of two random triple products sharing 0, 1
    or 2 factors, keeps those detected in both bipartite varieties and
    requires the constructive triple witness for each.  Sums sharing two
    factors collapse to a triple product, but they are never presented as one.
    """
    dims = tuple(int(k) for k in dims)
    k1, k2, k3 = dims
    s1, s2, s3 = k1 + 1, k2 + 1, k3 + 1
    if s1 * s2 * s3 - 1 > MAX_TARGET_DIM:
        raise TooLarge(f"target dimension {s1 * s2 * s3 - 1} exceeds {MAX_TARGET_DIM}")
    left = SegreShape((k1, s2 * s3 - 1))
    right = SegreShape((s1 * s2 - 1, k3))
    rng = np.random.default_rng(seed)
    rep = LemmaReport(dims, trials, seed)

    def both(z):
        p = ProjectivePoint(z)
        return membership(p, left, epsilon)[0] and membership(p, right, epsilon)[0]

    def triple(a, b, c):
        return np.einsum("i,j,k->ijk", a, b, c).ravel()

    for _ in range(trials):
        z = triple(_gauss(rng, s1), _gauss(rng, s2), _gauss(rng, s3))
        key = "passed" if both(z) and triple_witness(z, dims) else "failed"
        getattr(rep, key)["a"] += 1

    for t in range(trials):
        if t % 2 == 0:
            # a x Y with Y generic: in the left variety only
            z = np.kron(_gauss(rng, s1), _gauss(rng, s2 * s3))
            one_sided = membership(ProjectivePoint(z), left, epsilon)[0]
        else:
            z = np.kron(_gauss(rng, s1 * s2), _gauss(rng, s3))
            one_sided = membership(ProjectivePoint(z), right, epsilon)[0]
        ok = one_sided and not both(z) and not triple_witness(z, dims)
        getattr(rep, "passed" if ok else "failed")["b"] += 1

    attempts = 0
    while rep.passed["c"] + rep.failed["c"] < trials:
        attempts += 1
        if attempts > 50 * trials:
            rep.failed["c"] += trials - rep.passed["c"] - rep.failed["c"]
            break
        a, b, c = _gauss(rng, s1), _gauss(rng, s2), _gauss(rng, s3)
        shared = _SHARE_PATTERNS[rng.integers(len(_SHARE_PATTERNS))]
        a2 = a if "a" in shared else _gauss(rng, s1)
        b2 = b if "b" in shared else _gauss(rng, s2)
        c2 = c if "c" in shared else _gauss(rng, s3)
        z = triple(a, b, c) + triple(a2, b2, c2)
        if not both(z):
            continue
        getattr(rep, "passed" if triple_witness(z, dims) else "failed")["c"] += 1
    return rep
