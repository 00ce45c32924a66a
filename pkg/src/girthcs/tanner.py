"""Tanner-graph structure of a binary matrix: girth, column overlap, profile,
and the local-tree unrolling around a variable node."""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from girthcs._backend import kernels
from girthcs.binmat import BinaryMatrix


@functools.total_ordering
class _Infinite:
    """Girth of a cycle-free Tanner graph. Compares greater than any integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("girthcs.INFINITE")

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()

Girth = Union[int, _Infinite]


def girth(H: BinaryMatrix) -> Girth:
    """Length of the shortest Tanner-graph cycle, or ``INFINITE`` for a forest.

    Breadth-first search from each variable node; a non-tree edge closing at
    depths ``d1``, ``d2`` certifies a closed walk of length ``d1 + d2 + 1``,
    and the minimum over all start nodes is the girth.
    """
    g = kernels.girth_bfs(*H.csr_arrays(), H.n, H.m)
    return INFINITE if g == 0 else int(g)


def max_inner_product(H: BinaryMatrix) -> int:
    """Largest number of common 1s between two distinct columns (0 if n < 2)."""
    if H.n < 2:
        return 0
    A = H.to_dense()
    G = A.T @ A
    np.fill_diagonal(G, 0)
    return int(G.max())


@dataclass(frozen=True)
class MatrixProfile:
    m: int
    n: int
    col_weights: tuple[int, ...]
    gamma: Optional[int]
    girth: Girth
    lam: int
    row_weights: tuple[int, ...] = ()

    @property
    def zero_rows(self) -> int:
        return sum(1 for w in self.row_weights if w == 0)


def profile(H: BinaryMatrix) -> MatrixProfile:
    cw = tuple(H.col_weights)
    gamma = cw[0] if len(set(cw)) == 1 else None
    return MatrixProfile(H.m, H.n, cw, gamma, girth(H), max_inner_product(H),
                         tuple(H.row_weights))


@dataclass(frozen=True)
class LocalTree:
    """Unrolled neighbourhood of ``root``.

    ``levels[u]`` is the multiset (sorted tuple) of level-u variable nodes;
    ``branch_sets[u]`` the same for the sub-branch through check
    ``branch_check``.  ``disjoint`` reports whether ``{root}`` and all levels
    are pairwise disjoint with no repeated node; ``branch_disjoint`` extends
    that check with the deepest branch set.
    """

    root: int
    depth: int
    levels: tuple[tuple[int, ...], ...]
    branch_check: int
    branch_sets: tuple[tuple[int, ...], ...]
    disjoint: bool
    branch_disjoint: bool


def _grandchildren(H: BinaryMatrix, nodes):
    """Expand (variable, parent_check) pairs by one variable-check-variable step."""
    out = []
    for j, parent in nodes:
        for f in H.col_support[j]:
            if f == parent:
                continue
            out.extend((v, f) for v in H.row_support[f] if v != j)
    return out


def _all_distinct(*groups) -> bool:
    seen = set()
    total = 0
    for g in groups:
        seen.update(g)
        total += len(g)
    return len(seen) == total


def local_tree(H: BinaryMatrix, i: int, depth: int) -> LocalTree:
    """Levels ``L_0 .. L_depth`` of the local tree of variable ``i``, and the
    branch sets ``N_0 .. N_{depth+1}`` through its lowest-index check child."""
    weights = set(H.col_weights)
    if len(weights) != 1:
        raise ValueError("local tree requires uniform column weight")
    if weights.pop() < 2:
        raise ValueError("local tree requires column weight >= 2")
    if not 0 <= i < H.n:
        raise IndexError(f"variable index {i} out of range")
    if depth < 0:
        raise ValueError("depth must be non-negative")

    frontier = _grandchildren(H, [(i, -1)])
    levels = []
    for _ in range(depth + 1):
        levels.append(tuple(sorted(v for v, _ in frontier)))
        frontier = _grandchildren(H, frontier)

    f_star = H.col_support[i][0]
    branch = [(v, f_star) for v in H.row_support[f_star] if v != i]
    branch_sets = []
    for _ in range(depth + 2):
        branch_sets.append(tuple(sorted(v for v, _ in branch)))
        branch = _grandchildren(H, branch)

    disjoint = _all_distinct((i,), *levels)
    branch_disjoint = disjoint and _all_distinct((i,), *levels, branch_sets[-1])
    return LocalTree(i, depth, tuple(levels), f_star, tuple(branch_sets),
                     disjoint, branch_disjoint)
