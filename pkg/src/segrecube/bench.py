"""Timing of the observable engines on Haar-random states."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BadCut, ShapeMismatch, TooLarge
from .observables import j_minors, j_pauli, j_purity
from .state import StateVector, random_state

MAX_PURITY_QUBITS = 24
PAULI_BUDGET = 2 ** 34  # 4**ell * 2**n
MINORS_BUDGET = 2 ** 26  # number of 2x2 minors
AGREE_TOL = 1e-8


@dataclass(frozen=True)
class EngineTiming:
    engine: str
    value: float
    reps: int
    seconds: float  # total wall time over reps

    @property
    def per_call(self) -> float:
        return self.seconds / self.reps if self.reps else float("nan")

    @property
    def ops_per_sec(self) -> float:
        return self.reps / self.seconds if self.reps and self.seconds > 0 else float("nan")


@dataclass(frozen=True)
class BenchResult:
    n: int
    ell: int
    reps: int
    seed: int
    timings: tuple[EngineTiming, ...]
    max_deviation: float

    @property
    def agree(self) -> bool:
        return self.max_deviation < AGREE_TOL

    def timing(self, engine: str) -> EngineTiming:
        return next(t for t in self.timings if t.engine == engine)

    @property
    def ratio(self) -> float:
        """Pauli time over purity time; > 1 means the purity path is faster."""
        fast = self.timing("purity").seconds
        return self.timing("pauli").seconds / fast if fast > 0 else float("nan")


def _time(func, psi, ell: int, reps: int) -> float:
    start = time.perf_counter()
    for _ in range(reps):
        func(psi, ell)
    return time.perf_counter() - start


def run_bench(n: int, ell: int, reps: int, seed: int = 0,
              psi: Optional[StateVector] = None) -> BenchResult:
    """Check the engines agree on one state, then time ``reps`` calls of each.

    The state is Haar-random from ``seed`` unless ``psi`` is given.  The minor
    engine joins only while its ``O(4**n)`` enumeration stays small.
    """
    if psi is not None and psi.n != n:
        raise ShapeMismatch(f"state has {psi.n} qubits, bench asked for {n}")
    if not 1 <= ell <= n - 1:
        raise BadCut(f"cut {ell} outside 1..{n - 1}")
    if n > MAX_PURITY_QUBITS:
        raise TooLarge(f"bench limited to {MAX_PURITY_QUBITS} qubits")
    if 4 ** ell * 2 ** n > PAULI_BUDGET:
        raise TooLarge(f"4^{ell} * 2^{n} exceeds the Pauli-engine budget 2^34")
    if reps < 0:
        raise ValueError("reps must be >= 0")
    if psi is None:
        psi = random_state(n, np.random.default_rng(seed))
    engines = {"purity": j_purity, "pauli": j_pauli}
    rows, cols = 2 ** ell, 2 ** (n - ell)
    if rows * (rows - 1) // 2 * cols * (cols - 1) // 2 <= MINORS_BUDGET:
        engines["minors"] = j_minors
    values = {name: func(psi, ell) for name, func in engines.items()}
    ref = values["purity"]
    deviation = max(abs(v - ref) for v in values.values())
    timings = tuple(
        EngineTiming(name, values[name], reps, _time(func, psi, ell, reps))
        for name, func in engines.items()
    )
    return BenchResult(n, ell, reps, seed, timings, deviation)
