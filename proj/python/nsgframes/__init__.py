"""Nonstationary Gabor frames on Z_L: transforms, inverse operators and duals."""

import json as _json

from . import _core
from ._core import (
    CompletenessError,
    ConvergenceError,
    DimensionError,
    ExistenceError,
    LatticeError,
    NotAFrameError,
    NsgError,
    PairingError,
    ParameterError,
    ParseError,
    RegimeError,
    System,
    WalnutOperator,
    analyze,
    assemble,
    dense_frame_operator,
    dense_synthesis,
    frame_apply,
    frame_bounds,
    painless_diagonal,
    synthesize,
    window,
)

__all__ = [
    "System", "WalnutOperator", "window", "analyze", "synthesize", "frame_apply", "assemble",
    "frame_bounds", "painless_diagonal", "dense_synthesis", "dense_frame_operator", "classify",
    "verify_interval_lemma", "neumann_inverse", "structure_report", "duality_defect",
    "short_support_dual", "short_support_existence", "canonical_dual", "NsgError", "ParameterError",
    "ParseError", "DimensionError", "PairingError", "CompletenessError", "NotAFrameError",
    "ConvergenceError", "ExistenceError", "RegimeError", "LatticeError",
]


def classify(system):
    return _json.loads(_core.classify(system))


def verify_interval_lemma(system):
    return _json.loads(_core.verify_interval_lemma(system))


def neumann_inverse(S, A, B, tol=1e-12, max_terms=100000):
    """Returns (inverse operator, report dict)."""
    op, report = _core.neumann_inverse(S, A, B, tol, max_terms)
    return op, _json.loads(report)


def structure_report(Sinv, system, A, B):
    return _json.loads(_core.structure_report(Sinv, system, A, B))


def duality_defect(G, H):
    return _json.loads(_core.duality_defect(G, H))


def short_support_dual(system):
    """Returns (dual system, defect report dict)."""
    dual, defect = _core.short_support_dual(system)
    return dual, _json.loads(defect)


def short_support_existence(system):
    return _json.loads(_core.short_support_existence(system))


def canonical_dual(system, Sinv=None):
    if Sinv is None:
        A, B = frame_bounds(system)
        Sinv, _ = neumann_inverse(assemble(system, system), A, B)
    return _core.canonical_dual(system, Sinv)
