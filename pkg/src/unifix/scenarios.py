"""Packaged scenario configs used by ``unifix demo`` and ``--scenario``."""
from __future__ import annotations

import copy

_LINE = {"dimension": 1, "family": [{"kind": "abs", "coords": [0], "weights": [1.0]}]}
_SOLVE = {"tolerance": 1e-8, "max_iterations": 1000, "divergence_guard": None}

SCENARIOS = {
    "halving": {
        "space": _LINE,
        "map": {"kind": "affine_contraction", "matrix": [[0.5]], "offset": [0.0]},
        "params": {"r": 1, "coefficients": [[0.2, 0.2, 0.5]]},
        "solve": dict(_SOLVE, x0=[1.0]),
        "scan": {"lower": [-1.0], "upper": [1.0], "budget": 10000, "seed": 42},
    },
    "two-branch": {
        "space": _LINE,
        "map": {"kind": "scaled_selector", "ratios": [0.5, 1 / 3]},
        "params": {"r": 1, "coefficients": [[0.0, 0.2, 0.5]]},
        "solve": dict(_SOLVE, x0=[6.0]),
        "scan": {"lower": [-10.0], "upper": [10.0], "budget": 10000, "seed": 42},
    },
    # a = -1 turns the general condition into the minus-sign variant
    "corollary": {
        "space": _LINE,
        "map": {"kind": "affine_contraction", "matrix": [[0.5]], "offset": [0.0]},
        "params": {"r": 1, "coefficients": [[-1.0, 0.2, 0.5]]},
        "solve": dict(_SOLVE, x0=[5.0]),
        "scan": {"lower": [-1.0], "upper": [1.0], "budget": 10000, "seed": 42},
    },
    "uniqueness": {
        "space": _LINE,
        "map": {"kind": "affine_contraction", "matrix": [[0.5]], "offset": [0.0]},
        "params": {"r": 1, "coefficients": [[0.6, 0.2, 0.5]]},
        "solve": dict(_SOLVE, x0=[1.0]),
        "scan": {"lower": [-1.0], "upper": [1.0], "budget": 10000, "seed": 42},
        "starts": [[-3.0], [1.0], [7.0]],
    },
}


def get(name: str) -> dict:
    return copy.deepcopy(SCENARIOS[name])
