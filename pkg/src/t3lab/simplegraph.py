"""Plain simple graphs given by a vertex set and an adjacency set.

``delete`` and ``explode`` work on any frozen dataclass carrying
``vertices`` and ``adjacencies`` fields, so line-graph subgraphs reuse them.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Iterable

from t3lab.errors import InputError

Adjacency = tuple[int, int]


def norm_pair(x: int, y: int) -> Adjacency:
    if x == y:
        raise InputError(f"adjacency needs two distinct vertices, got {x}")
    return (x, y) if x < y else (y, x)


@dataclass(frozen=True)
class SimpleGraph:
    vertices: frozenset
    adjacencies: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        adj = frozenset(norm_pair(*p) for p in self.adjacencies)
        object.__setattr__(self, "adjacencies", adj)
        for x, y in adj:
            if x not in self.vertices or y not in self.vertices:
                raise InputError(f"adjacency {(x, y)} uses a vertex outside the graph")

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "SimpleGraph":
        return cls(frozenset(range(n)), frozenset(pairs))


def key(j) -> tuple[frozenset, frozenset]:
    """Hashable identity of a graph for memo tables."""
    return (j.vertices, j.adjacencies)


def neighbours(j, v) -> set:
    out = set()
    for x, y in j.adjacencies:
        if x == v:
            out.add(y)
        elif y == v:
            out.add(x)
    return out


def isolated_vertices(j) -> set:
    touched = {x for p in j.adjacencies for x in p}
    return set(j.vertices) - touched


def delete(j, adjacency):
    """``J - e``: drop one adjacency, keep every vertex."""
    e = norm_pair(*adjacency)
    if e not in j.adjacencies:
        raise InputError(f"adjacency {e} is not present")
    return dataclasses.replace(j, adjacencies=j.adjacencies - {e})


def explode(j, adjacency):
    """``J ⊛ e``: remove both endpoints of ``e`` and all their neighbours."""
    e = norm_pair(*adjacency)
    if e not in j.adjacencies:
        raise InputError(f"adjacency {e} is not present")
    gone = set(e) | neighbours(j, e[0]) | neighbours(j, e[1])
    return dataclasses.replace(
        j,
        vertices=j.vertices - gone,
        adjacencies=frozenset(p for p in j.adjacencies if not gone.intersection(p)),
    )


def disjoint_union(j: SimpleGraph, k: SimpleGraph) -> SimpleGraph:
    """Union after shifting ``k``'s labels above ``j``'s."""
    shift = max(j.vertices, default=-1) + 1 - min(k.vertices, default=0)
    return SimpleGraph(
        j.vertices | {v + shift for v in k.vertices},
        j.adjacencies | {(x + shift, y + shift) for x, y in k.adjacencies},
    )
