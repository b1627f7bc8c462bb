"""
Partite-count classification.

:func:`classify` counts vanishing observables and then extracts the tensor
factors at those cuts.  :func:`oracle_classify` ignores the observables and
brute-forces every ordered composition with rank-1 peeling; the two must
agree on every input.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import InconsistentCuts, TooLarge
from ..observables import EPS_J, ObservableReport, report
from ..state import StateVector, from_amplitudes
from .hypercube import HypercubeVertex
from .varieties import (
    EPS_RANK,
    composition_cuts,
    compositions,
    cuts_to_composition,
    peel,
    tensor_coords,
)

ORACLE_MAX_QUBITS = 12
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class DecompositionTree:
    """``psi = phase * factors[0] x ... x factors[-1]`` over contiguous spans."""

    spans: tuple[tuple[int, int], ...]
    factors: tuple[StateVector, ...]
    phase: complex
    residual: float

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in self.spans)

    def reconstruct(self) -> np.ndarray:
        return self.phase * tensor_coords([f.amps for f in self.factors])


@dataclass(frozen=True)
class Classification:
    q: int
    vanishing: tuple[int, ...]
    tree: Optional[DecompositionTree]
    vertex: HypercubeVertex
    report: ObservableReport

    @property
    def entangled(self) -> bool:
        return self.q == 1


def spans_of(parts) -> tuple[tuple[int, int], ...]:
    """1-based inclusive qubit ranges for a composition."""
    spans, start = [], 1
    for m in parts:
        spans.append((start, start + m - 1))
        start += m
    return tuple(spans)


def factorize(psi: StateVector, parts, eps_rank: float = EPS_RANK) -> Optional[DecompositionTree]:
    """Rank-1 factorization of ``psi`` over ``parts``; ``None`` if it does not factor."""
    result = peel(psi.amps, [2 ** m for m in parts], eps_rank)
    if result is None:
        return None
    factors, scale = result
    phase = scale / abs(scale)
    states = tuple(from_amplitudes(f) for f in factors)
    rebuilt = phase * tensor_coords([s.amps for s in states])
    residual = float(np.linalg.norm(psi.amps - rebuilt))
    return DecompositionTree(spans_of(parts), states, complex(phase), residual)


def classify(psi: StateVector, epsilon: float = EPS_J, engine: str = "purity",
             eps_rank: float = EPS_RANK) -> Classification:
    """Partite count from the vanishing observables, with the witnessing factors.

    The cut set ``{l : J_{n,l} < epsilon}`` fixes the composition; the state
    is then factored there.  If that factorization fails, the observables
    and the rank test disagree and :class:`InconsistentCuts` is raised.
    """
    rep = report(psi, engine=engine, epsilon=epsilon)
    cuts = rep.cuts
    vertex = HypercubeVertex.from_cuts(cuts, psi.n)
    tree = None
    if cuts:
        tree = factorize(psi, cuts_to_composition(cuts, psi.n), eps_rank)
        if tree is None or tree.residual >= RESIDUAL_TOL:
            raise InconsistentCuts(f"cuts {cuts} vanish but the state does not factor there")
    return Classification(rep.q, cuts, tree, vertex, rep)


@dataclass(frozen=True)
class OracleResult:
    q: int
    composition: tuple[int, ...]

    @property
    def cuts(self) -> tuple[int, ...]:
        return composition_cuts(self.composition)


def oracle_classify(psi: StateVector, epsilon: float = EPS_RANK) -> OracleResult:
    """Finest ordered composition whose Segre variety contains ``[psi]``.

    Brute force over all ``2**(n-1)`` compositions, each tested by recursive
    rank-1 peeling with relative singular-value threshold ``epsilon``.
    """
    if psi.n > ORACLE_MAX_QUBITS:
        raise TooLarge(f"oracle limited to {ORACLE_MAX_QUBITS} qubits, got {psi.n}")
    best = (psi.n,)
    for parts in compositions(psi.n):
        if len(parts) <= len(best):
            continue
        if peel(psi.amps, [2 ** m for m in parts], epsilon) is not None:
            best = parts
    return OracleResult(len(best), best)
