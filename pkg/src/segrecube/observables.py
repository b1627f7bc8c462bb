"""
The bipartite observables J_{n,l} and the per-state report.

Three engines compute the same number and are kept side by side so each can
certify the others:

``pauli``
    ``2 - 2**(1-l) * sum |<psi| s_1 x ... x s_l x I |psi>|^2`` over all 4**l
    Pauli strings on the leading ``l`` qubits.
``minors``
    ``4 * sum |M_I|^2`` over the 2x2 minors of the ``2**l x 2**(n-l)``
    amplitude matrix.
``purity``
    ``2 * (1 - Tr rho_A^2)`` with rho_A the leading-``l`` marginal.  Default.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BadCut, BadEngine
from .segre.varieties import minor_square_sum
from .state import (
    StateVector,
    apply_pauli,
    hermitian_expectation,
    purity,
    reduced_density_matrix,
    reshape_matrix,
)

EPS_J = 1e-9
ENGINES = ("pauli", "minors", "purity")


def _check_cut(psi: StateVector, ell: int) -> None:
    if not 1 <= ell <= psi.n - 1:
        raise BadCut(f"cut {ell} outside 1..{psi.n - 1}")


def pauli_square_sum(psi: StateVector, ell: int) -> float:
    """``sum |<sigma_{i_1..i_l} x I>|^2`` over all 4**l index tuples.

    Depth-first over string prefixes so each prefix is applied once; a leaf
    reuses its parent's vector and only adds the last factor.
    """
    n, amps = psi.n, psi.amps
    total = 0.0
    stack = [(0, amps)]
    while stack:
        qubit, phi = stack.pop()
        for index in range(4):
            child = apply_pauli(phi, n, qubit, index)
            if qubit + 1 == ell:
                total += hermitian_expectation(amps, child) ** 2
            else:
                stack.append((qubit + 1, child))
    return total


def j_pauli(psi: StateVector, ell: int) -> float:
    _check_cut(psi, ell)
    return 2.0 - pauli_square_sum(psi, ell) / 2 ** (ell - 1)


def j_minors(psi: StateVector, ell: int) -> float:
    return 4.0 * minor_square_sum(reshape_matrix(psi, ell))


def j_purity(psi: StateVector, ell: int) -> float:
    return 2.0 * (1.0 - purity(reduced_density_matrix(psi, ell)))


_ENGINE_FUNCS: dict[str, Callable[[StateVector, int], float]] = {
    "pauli": j_pauli,
    "minors": j_minors,
    "purity": j_purity,
}


def engine_function(engine: str) -> Callable[[StateVector, int], float]:
    try:
        return _ENGINE_FUNCS[engine]
    except KeyError:
        raise BadEngine(f"unknown engine {engine!r}; expected one of {ENGINES}") from None


@dataclass(frozen=True)
class ObservableReport:
    n: int
    values: tuple[float, ...]
    average: float
    vanishing: tuple[bool, ...]
    q: int
    engine: str
    epsilon: float = EPS_J

    @property
    def cuts(self) -> tuple[int, ...]:
        """Cut positions l (1-based) whose observable vanishes."""
        return tuple(ell for ell, v in enumerate(self.vanishing, start=1) if v)


def report(psi: StateVector, engine: str = "purity", epsilon: float = EPS_J,
           max_workers: int | None = None) -> ObservableReport:
    """All ``n - 1`` observables, their mean and the inferred partite count.

    Cuts are independent; with ``max_workers`` they run on a thread pool and
    are merged back in cut order, so the result never depends on scheduling.
    """
    if psi.n < 2:
        raise BadCut("a report needs at least two qubits")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    func = engine_function(engine)
    cuts = range(1, psi.n)
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            values = tuple(pool.map(lambda ell: func(psi, ell), cuts))
    else:
        values = tuple(func(psi, ell) for ell in cuts)
    vanishing = tuple(v < epsilon for v in values)
    return ObservableReport(
        n=psi.n,
        values=values,
        average=float(np.mean(values)),
        vanishing=vanishing,
        q=1 + sum(vanishing),
        engine=engine,
        epsilon=epsilon,
    )
