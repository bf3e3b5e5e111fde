"""Exact mutation of quivers and of exchange matrices over group rings.

A finite group acting on a quiver folds it to a matrix over the rational
group ring; this package computes such foldings, mutates them (including
the closed-form rules for nonzero diagonal entries), unfolds them back to
quivers, explores mutation classes up to weaving isomorphism, and searches
for reddening sequences.  All arithmetic is exact.
"""

from .groups import Cyc, Perm, PermGroup, generate_group
from .quivers import MutationSequence, Quiver, mutate
from .ring import GroupRingElement
from .folding import FoldedMatrix, QuiverAction, act_on_quiver, canonical_unfold, fold

__all__ = [
    "Cyc",
    "Perm",
    "PermGroup",
    "generate_group",
    "MutationSequence",
    "Quiver",
    "mutate",
    "GroupRingElement",
    "FoldedMatrix",
    "QuiverAction",
    "act_on_quiver",
    "canonical_unfold",
    "fold",
]
