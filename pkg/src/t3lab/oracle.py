"""Slow, obviously-correct reference computations for tiny instances.

Nothing here reuses the fast paths: matchings and covers are plain subset
scans, and homology is read off sympy's Smith normal form of dense
integer boundary matrices.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, fields, replace
from itertools import combinations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from t3lab.errors import InputError, ResourceError
from t3lab.topology import EtaValue

log = logging.getLogger(__name__)

BUDGET_ENV = "T3LAB_BUDGET"


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 14
    max_edges: int = 12
    max_dim: int = 8
    max_cover_vertices: int = 18

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 1:
                raise InputError(f"budget {f.name} must be positive")

    @classmethod
    def from_env(cls) -> "OracleBudget":
        """Defaults, overridden by ``T3LAB_BUDGET="max_vertices=10,max_edges=8"``."""
        raw = os.environ.get(BUDGET_ENV, "").strip()
        if not raw:
            return cls()
        names = {f.name for f in fields(cls)}
        updates = {}
        for item in raw.split(","):
            k, sep, v = item.partition("=")
            k = k.strip()
            if not sep or k not in names:
                raise InputError(f"{BUDGET_ENV}: cannot parse {item!r}; keys are {', '.join(sorted(names))}")
            try:
                updates[k] = int(v)
            except ValueError:
                raise InputError(f"{BUDGET_ENV}: {k} needs an integer, got {v!r}") from None
        return replace(cls(), **updates)


def _budget(budget):
    return budget if budget is not None else OracleBudget.from_env()


def nu_bruteforce(g, budget: OracleBudget | None = None) -> int:
    """Largest set of pairwise disjoint edges, by scanning subsets of the
    distinct edge shapes (parallel copies never help a matching)."""
    budget = _budget(budget)
    shapes = sorted({e.shape for e in g.edges})
    if len(shapes) > budget.max_edges:
        raise ResourceError(f"nu oracle: {len(shapes)} distinct edges over budget {budget.max_edges}")
    width = len(g.class_sizes)
    for k in range(len(shapes), 0, -1):
        for combo in combinations(shapes, k):
            if all(len({s[c] for s in combo}) == k for c in range(width)):
                return k
    return 0


def tau_bruteforce(g, budget: OracleBudget | None = None) -> int:
    """Fewest vertices meeting every edge, by scanning vertex subsets."""
    budget = _budget(budget)
    verts = [(c, i) for c, n in enumerate(g.class_sizes) for i in range(n)]
    if len(verts) > budget.max_cover_vertices:
        raise ResourceError(f"tau oracle: {len(verts)} vertices over budget {budget.max_cover_vertices}")
    edge_sets = [set(e.vertices()) for e in g.edges]
    for k in range(len(verts) + 1):
        for combo in combinations(verts, k):
            chosen = set(combo)
            if all(es & chosen for es in edge_sets):
                return k
    raise AssertionError("the full vertex set always covers")  # pragma: no cover


def independence_complex(j) -> list[list[tuple]]:
    """Faces of Ind(J) grouped by size, including the empty face."""
    vs = sorted(j.vertices)
    adj = set(j.adjacencies)
    layers = [[()]]
    for k in range(1, len(vs) + 1):
        layer = [
            face
            for face in combinations(vs, k)
            if not any((a, b) in adj for a, b in combinations(face, 2))
        ]
        if not layer:
            break
        layers.append(layer)
    return layers


def _boundary(hi, lo) -> Matrix:
    index = {f: i for i, f in enumerate(lo)}
    m = [[0] * len(hi) for _ in lo]
    for col, face in enumerate(hi):
        for k in range(len(face)):
            m[index[face[:k] + face[k + 1:]]][col] = (-1) ** k
    return Matrix(m)


def _smith(hi, lo) -> list[int]:
    """Nonzero invariant factors of the boundary map from ``hi`` to ``lo``."""
    if not hi or not lo:
        return []
    return [abs(int(x)) for x in invariant_factors(_boundary(hi, lo), domain=ZZ) if x != 0]


def reduced_homology_z(layers) -> list[tuple[int, list[int]]]:
    """(free rank, torsion) of reduced integral homology per dimension,
    starting at dimension -1."""
    factors = [_smith(layers[s + 1], layers[s]) for s in range(len(layers) - 1)] + [[]]
    out = []
    for s, layer in enumerate(layers):
        incoming = factors[s]
        outgoing = factors[s - 1] if s else []
        free = len(layer) - len(outgoing) - len(incoming)
        out.append((free, [x for x in incoming if x > 1]))
    return out


def _collapses_to_point(layers) -> bool:
    """Greedy elementary collapses on the nonempty faces."""
    faces = {f for layer in layers[1:] for f in layer}
    changed = True
    while changed and len(faces) > 1:
        changed = False
        for sigma in sorted(faces, key=len, reverse=True):
            cofaces = [t for t in faces if len(t) == len(sigma) + 1 and set(sigma) <= set(t)]
            if len(cofaces) == 1:
                faces -= {sigma, cofaces[0]}
                changed = True
                break
    return len(faces) == 1


def eta_bruteforce(j, budget: OracleBudget | None = None) -> EtaValue:
    """eta from integral reduced homology of the independence complex:
    1 + the lowest dimension with nonzero reduced homology (free or
    torsion).  Cones and complexes that collapse to a point are Infinite;
    an acyclic complex that does not collapse greedily is reported as
    AtLeast(top + 2) for manual review."""
    budget = _budget(budget)
    if len(j.vertices) > budget.max_vertices:
        raise ResourceError(f"eta oracle: {len(j.vertices)} vertices over budget {budget.max_vertices}")
    touched = {v for a in j.adjacencies for v in a}
    if any(v not in touched for v in j.vertices):
        return EtaValue.infinite()
    layers = independence_complex(j)
    top = len(layers) - 2
    if top > budget.max_dim:
        raise ResourceError(f"eta oracle: complex dimension {top} over budget {budget.max_dim}")
    for dim, (free, torsion) in enumerate(reduced_homology_z(layers), start=-1):
        if free or torsion:
            return EtaValue.finite(dim + 1)
    if _collapses_to_point(layers):
        return EtaValue.infinite()
    log.warning("acyclic independence complex did not collapse greedily; reporting a lower bound")
    return EtaValue.at_least(top + 2)
