"""Segre varieties, the contraction hypercube and decomposability tests."""
from .hypercube import Hypercube, HypercubeVertex, hypercube, lives_in, path_image
from .lemma import LemmaReport, verify_tripartite_lemma
from .varieties import (
    MinorIndex,
    SegreShape,
    compositions,
    enumerate_minors,
    generalized_segre_embed,
    membership,
    minor_count,
    minor_values,
    segre_embed,
)

__all__ = [
    "Classification",
    "DecompositionTree",
    "Hypercube",
    "HypercubeVertex",
    "LemmaReport",
    "MinorIndex",
    "OracleResult",
    "SegreShape",
    "classify",
    "compositions",
    "enumerate_minors",
    "factorize",
    "generalized_segre_embed",
    "hypercube",
    "lives_in",
    "membership",
    "minor_count",
    "minor_values",
    "oracle_classify",
    "path_image",
    "segre_embed",
    "verify_tripartite_lemma",
]

_CLASSIFY_NAMES = {
    "Classification", "DecompositionTree", "OracleResult", "classify", "factorize", "oracle_classify",
}


def __getattr__(name):
    # decompose depends on observables, which itself imports varieties from here
    if name in _CLASSIFY_NAMES:
        from . import decompose as _mod
        return getattr(_mod, name)
    raise AttributeError(name)
