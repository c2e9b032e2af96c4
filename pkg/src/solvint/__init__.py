"""Exact computational toolkit for intersections of maximal subgroups in
finite solvable groups: prime-field linear algebra, a brute-force group
oracle with subgroup lattices and Moebius values, the closed-form
intersection calculus for V^t x| H, property analyzers, and the
supersolvable tower family."""

__version__ = "0.1.0"

from . import corpus, errors, ffla, groups, props, sdp, tower  # noqa: F401
