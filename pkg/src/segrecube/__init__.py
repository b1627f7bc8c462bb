"""Entanglement structure of pure qubit states via bipartite observables and Segre varieties."""
from .errors import SegreCubeError
from .kets import KetExpression, ParseError, evaluate, ket, parse, permute_qubits, render
from .observables import EPS_J, ObservableReport, j_minors, j_pauli, j_purity, report
from .state import (
    DensityMatrix,
    ProjectivePoint,
    StateVector,
    basis_state,
    from_amplitudes,
    pauli_string_expectation,
    projective_point,
    purity,
    random_state,
    reduced_density_matrix,
    reshape_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "DensityMatrix",
    "EPS_J",
    "KetExpression",
    "ObservableReport",
    "ParseError",
    "ProjectivePoint",
    "SegreCubeError",
    "StateVector",
    "basis_state",
    "evaluate",
    "from_amplitudes",
    "j_minors",
    "j_pauli",
    "j_purity",
    "ket",
    "parse",
    "pauli_string_expectation",
    "permute_qubits",
    "projective_point",
    "purity",
    "random_state",
    "reduced_density_matrix",
    "render",
    "report",
    "reshape_matrix",
]
