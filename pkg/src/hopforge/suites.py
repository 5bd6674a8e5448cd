"""Fixed instance families and parameter choices shared by the acceptance tests and scripts."""
from __future__ import annotations

import math

from . import generators as gen
from .experiment import ExperimentRow, run_one
from .graph import DiGraph
from .greedy import greedy_shortcut

FAMILIES = ("path", "layered", "random_dag", "random_digraph")
ALGOS = ("greedy", "greedy-hopset", "chain-greedy", "setcover", "sqrt", "folklore", "kp")
RANDOMIZED = ("folklore", "kp")

# greedy variants are cubic per round in the worst case, so their instances stay smaller
SMALL = {"greedy", "greedy-hopset"}


def validity_n(family: str, seed: int, small: bool) -> int:
    if family == "path":
        return (16 + seed) if small else (56 + 2 * seed)
    return (24 + seed // 2) if small else (56 + 2 * seed)


def validity_instance(family: str, seed: int, small: bool = False) -> DiGraph:
    n = validity_n(family, seed, small)
    if family == "path":
        return gen.path(n)
    if family == "layered":
        return gen.layered(n, 4, 0.1, seed)
    if family == "random_dag":
        return gen.random_dag(n, 3.0 / n, seed)
    if family == "random_digraph":
        return gen.random_digraph(n, 1.5 / n, seed)
    raise ValueError(f"unknown family {family!r}")


def validity_param(algo: str, n: int):
    if algo in ("greedy", "greedy-hopset"):
        return math.ceil(2 * math.sqrt(n))
    if algo in ("setcover", "kp"):
        return math.ceil(n ** (1 / 3) - 1e-9)
    if algo == "folklore":
        return n
    return None


def run_validity(algo: str, family: str, seed: int) -> ExperimentRow:
    g = validity_instance(family, seed, algo in SMALL)
    if algo == "greedy-hopset":
        g = gen.with_weights(g, 4, seed)
    return run_one(algo, g, validity_param(algo, g.n), seed)


# ---- scaling ---------------------------------------------------------------------

SCALING_NS = (64, 128, 256, 512, 1024)


def scaling_instance(family: str, n: int, seed: int = 0) -> DiGraph:
    if family == "path":
        return gen.path(n)
    if family == "random_dag":
        return gen.random_dag(n, 0.3, seed, span=3, backbone=True)
    raise ValueError(f"unknown scaling family {family!r}")


def scaling_beta(regime: str, n: int) -> int:
    if regime == "2sqrt":
        return math.ceil(2 * math.sqrt(n))
    if regime == "cbrt":
        return math.ceil(round(n ** (1 / 3), 9))
    raise ValueError(f"unknown regime {regime!r}")


def scaling_norm(regime: str, n: int) -> float:
    """|H| is divided by n for 2sqrt and by n ln n for cbrt."""
    return n if regime == "2sqrt" else n * math.log(n)


def scaling_point(family: str, n: int, regime: str, seed: int = 0):
    """(beta, |H|, normalized size, trace) of one greedy run."""
    beta = scaling_beta(regime, n)
    h, tr = greedy_shortcut(scaling_instance(family, n, seed), beta)
    return beta, len(h), len(h) / scaling_norm(regime, n), tr


def band(values: list) -> float:
    """max/min ratio; infinite if some value is zero."""
    lo, hi = min(values), max(values)
    return math.inf if lo <= 0 else hi / lo
