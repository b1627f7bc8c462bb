"""
Seeded verification suites behind ``segrecube verify``.

Each suite returns a :class:`SuiteResult` with pass/fail counts; a suite
passes only with zero failures.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import TooLarge
from .observables import EPS_J, j_minors, j_pauli, j_purity
from .segre import classify, oracle_classify, verify_tripartite_lemma
from .segre.varieties import EPS_RANK, composition_cuts, compositions
from .state import random_state, tensor

MAX_ENGINE_QUBITS = 8
MAX_ORACLE_QUBITS = 5
ENGINE_TOL_PAULI = 1e-8
ENGINE_TOL_PURITY = 1e-9


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def line(self) -> str:
        extra = "".join(f" {k}={v}" for k, v in self.detail.items())
        return f"{self.name}: {self.passed} pass, {self.failed} fail{extra}"


def engine_agreement(n: int, trials: int, seed: int) -> SuiteResult:
    """Compare the three engines on ``trials`` Haar states at every cut of ``n`` qubits."""
    if not 2 <= n <= MAX_ENGINE_QUBITS:
        raise TooLarge(f"engine suite needs 2 <= n <= {MAX_ENGINE_QUBITS}, got {n}")
    rng = np.random.default_rng(seed)
    res = SuiteResult(f"engines n={n}")
    worst_pm = worst_mp = 0.0
    for _ in range(trials):
        psi = random_state(n, rng)
        for ell in range(1, n):
            p, m, u = j_pauli(psi, ell), j_minors(psi, ell), j_purity(psi, ell)
            d_pm, d_mp = abs(p - m), abs(m - u)
            worst_pm, worst_mp = max(worst_pm, d_pm), max(worst_mp, d_mp)
            if d_pm < ENGINE_TOL_PAULI and d_mp < ENGINE_TOL_PURITY:
                res.passed += 1
            else:
                res.failed += 1
    res.detail = {"max|pauli-minors|": f"{worst_pm:.2e}", "max|minors-purity|": f"{worst_mp:.2e}"}
    return res


def constructed_state(parts, rng: np.random.Generator):
    """Tensor product of Haar-random factors on the spans of ``parts``."""
    return tensor(*(random_state(m, rng) for m in parts))


def oracle_agreement(n: int, per_shape: int, seed: int, epsilon: float = EPS_J,
                     eps_rank: float = EPS_RANK) -> SuiteResult:
    """classify against oracle_classify on every ordered composition shape of ``n``.

    A sample passes when both report the same q, the vanishing cuts equal the
    oracle's cut set, and both recover the shape the state was built with.
    The one-part shape doubles as the Haar-random (q = 1) population.
    """
    if not 2 <= n <= MAX_ORACLE_QUBITS:
        raise TooLarge(f"oracle suite needs 2 <= n <= {MAX_ORACLE_QUBITS}, got {n}")
    rng = np.random.default_rng(seed)
    res = SuiteResult(f"classify vs oracle n={n}")
    shapes = list(compositions(n))
    for parts in shapes:
        for _ in range(per_shape):
            psi = constructed_state(parts, rng)
            c = classify(psi, epsilon=epsilon, eps_rank=eps_rank)
            o = oracle_classify(psi, eps_rank)
            built = composition_cuts(parts)
            if c.q == o.q and c.vanishing == o.cuts == built:
                res.passed += 1
            else:
                res.failed += 1
    res.detail = {"shapes": len(shapes)}
    return res


def lemma_suite(trials: int, dims, seed: int) -> SuiteResult:
    rep = verify_tripartite_lemma(trials, dims=dims, seed=seed)
    res = SuiteResult(f"tripartite lemma dims={tuple(dims)}")
    res.passed = sum(rep.passed.values())
    res.failed = sum(rep.failed.values())
    res.detail = {f"class_{k}": f"{rep.passed[k]}/{rep.passed[k] + rep.failed[k]}" for k in "abc"}
    return res


def run_suites(n: int, trials: int, seed: int) -> list[SuiteResult]:
    """Everything ``verify`` runs for one ``n``; the oracle suite only up to five qubits."""
    suites = [engine_agreement(n, trials, seed)]
    if n <= MAX_ORACLE_QUBITS:
        suites.append(oracle_agreement(n, trials, seed))
    suites.append(lemma_suite(trials, (1, 1, 1), seed))
    return suites
