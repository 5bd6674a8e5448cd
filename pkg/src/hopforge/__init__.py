"""Shortcut sets and exact hopsets for directed graphs."""
from .graph import (DiGraph, ShortcutSet, ReachMatrix, CondensedDag, condense, transitive_closure,
                    all_dist, hopdist_all, validate_shortcut_set, validate_hopset, perturb_unique)
from .greedy import greedy_shortcut, greedy_hopset, potential, delta, argmax_edge

__version__ = "0.1.0"
