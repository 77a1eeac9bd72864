"""Detectors for r-regular C4 link components, (r/2)·F components,
hosted edges, perfect-matching components and good/bad vertices.

All matching is structural (degree profiles and shape tables); the target
patterns have at most twelve vertices and a fixed shape.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from t3lab.errors import InputError, PreconditionError, TheoryDiscrepancy
from t3lab.hypercore import (
    BipartiteMultigraph,
    Tripartite3Graph,
    components,
    degrees,
    link,
    nu_exact,
    other_classes,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class C4Report:
    left: tuple[int, int]
    right: tuple[int, int]
    r: int
    # (u, v) -> link edge ids on that side of the 4-cycle
    sides: dict = field(compare=False, hash=False)
    hosted: tuple[int, ...] = ()

    def vertex_refs(self) -> frozenset:
        return frozenset({(0, u) for u in self.left} | {(1, v) for v in self.right})

    def link_edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(i for ids in self.sides.values() for i in ids))

    def to_json(self) -> dict:
        return {
            "left": list(self.left),
            "right": list(self.right),
            "r": self.r,
            "sides": {f"{u}-{v}": list(ids) for (u, v), ids in sorted(self.sides.items())},
            "hosted": list(self.hosted),
        }


def find_c4_components(g: BipartiteMultigraph, r: int) -> list[C4Report]:
    """Components of ``g`` that are r-regular C4s: two vertices per side,
    all four cross pairs present, every vertex of degree exactly r."""
    deg = degrees(g)
    reports = []
    for comp in components(g):
        left = sorted(i for c, i in comp.vertices if c == 0)
        right = sorted(i for c, i in comp.vertices if c == 1)
        if len(left) != 2 or len(right) != 2:
            continue
        if any(deg[v] != r for v in comp.vertices):
            continue
        sides: dict = {}
        for eid in comp.edge_ids:
            sides.setdefault(g.edges[eid].shape, []).append(eid)
        if len(sides) != 4:
            continue
        hosted = ()
        if g.origin is not None:
            hosted = tuple(sorted(g.origin[i] for i in comp.edge_ids))
        reports.append(
            C4Report(tuple(left), tuple(right), r, {k: tuple(v) for k, v in sides.items()}, hosted)
        )
    return reports


def count_c4_components(g: BipartiteMultigraph, r: int) -> int:
    return len(find_c4_components(g, r))


def c4_hypergraph_vertices(class_id: int, c4: C4Report) -> frozenset:
    """The C4's vertices as hypergraph vertex refs."""
    left, right = other_classes(class_id)
    return frozenset({(left, u) for u in c4.left} | {(right, v) for v in c4.right})


def hosted_edges(h: Tripartite3Graph, class_id: int, c4: C4Report) -> list[int]:
    """Hypergraph edge ids whose link edge lies in the C4."""
    lk = link(h, class_id)
    out = []
    for (u, v), ids in c4.sides.items():
        for i in ids:
            if i >= lk.n_edges or lk.edges[i].shape != (u, v):
                raise InputError(f"stale C4 report: link edge {i} is not {(u, v)} in lk V{class_id}")
            out.append(lk.origin[i])
    return sorted(out)


@dataclass(frozen=True)
class FanoReport:
    """Six vertices (two per class) carrying the four shapes of the
    truncated Fano plane, each ``multiplicity`` times."""

    vertices: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    shapes: tuple[tuple[int, int, int], ...]
    multiplicity: int
    edge_ids: tuple[int, ...] = ()

    def vertex_refs(self) -> frozenset:
        return frozenset((c, i) for c in range(3) for i in self.vertices[c])

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "shapes": [list(s) for s in self.shapes],
            "multiplicity": self.multiplicity,
            "edge_ids": list(self.edge_ids),
        }


def match_fano(shape_counts: Counter, edge_ids: Iterable[int] = ()) -> FanoReport | None:
    """Check a multiset of triples against (s)·F for some s >= 1.

    Four distinct shapes on two vertices per class, pairwise sharing
    exactly one vertex (one parity class of the 2x2x2 cube), all with the
    same multiplicity.
    """
    shapes = sorted(shape_counts)
    if len(shapes) != 4:
        return None
    per_class = [sorted({s[c] for s in shapes}) for c in range(3)]
    if any(len(p) != 2 for p in per_class):
        return None
    for s, t in combinations(shapes, 2):
        if sum(1 for k in range(3) if s[k] == t[k]) != 1:
            return None
    mults = {shape_counts[s] for s in shapes}
    if len(mults) != 1:
        return None
    return FanoReport(
        tuple(tuple(p) for p in per_class), tuple(shapes), mults.pop(), tuple(sorted(edge_ids))
    )


@dataclass(frozen=True)
class TwoDisjoint:
    edge_ids: tuple[int, int]


@dataclass(frozen=True)
class FormsHalfFano:
    fano: FanoReport


def disjoint_pair(h: Tripartite3Graph, ids: list[int]):
    for x, y in combinations(ids, 2):
        ex, ey = h.edges[x], h.edges[y]
        if all(ex.shape[k] != ey.shape[k] for k in range(3)):
            return (x, y)
    return None


def c4_dichotomy(h: Tripartite3Graph, class_id: int, c4: C4Report):
    """Either the C4 hosts two disjoint edges, or its hosted edges form
    (r/2)·F.  Anything else raises TheoryDiscrepancy."""
    deg = degrees(h)
    touched = c4_hypergraph_vertices(class_id, c4)
    over = [v for v in touched if deg[v] > c4.r]
    if over:
        raise PreconditionError(f"vertices {sorted(over)} of the C4 have degree > r={c4.r}")
    ids = hosted_edges(h, class_id, c4)
    pair = disjoint_pair(h, ids)
    if pair is not None:
        return TwoDisjoint(pair)
    if c4.r % 2 == 0:
        rep = match_fano(Counter(h.edges[i].shape for i in ids), ids)
        if rep is not None and rep.multiplicity == c4.r // 2:
            return FormsHalfFano(rep)
    raise TheoryDiscrepancy(
        "C4 hosts neither two disjoint edges nor (r/2)·F",
        {"class_id": class_id, "c4": c4.to_json(), "hosted": ids},
    )


def find_fano_components(h: Tripartite3Graph, r: int) -> list[FanoReport]:
    """Components of ``h`` that are exactly (r/2)·F."""
    if r % 2:
        log.warning("(r/2)·F does not exist for odd r=%d", r)
        return []
    out = []
    for comp in components(h):
        if len(comp.vertices) != 6 or len(comp.edge_ids) != 2 * r:
            continue
        rep = match_fano(Counter(h.edges[i].shape for i in comp.edge_ids), comp.edge_ids)
        if rep is not None and rep.multiplicity == r // 2:
            out.append(rep)
    return out


def has_fano_subcopy(h: Tripartite3Graph, r: int) -> FanoReport | None:
    """Search every choice of two vertices per class for a sub-multigraph
    isomorphic to (r/2)·F (not necessarily a component)."""
    if r % 2:
        return None
    need = r // 2
    mult = h.multiplicities()
    pairs = [list(combinations(range(n), 2)) for n in h.class_sizes]
    for pa in pairs[0]:
        for pb in pairs[1]:
            for pc in pairs[2]:
                present = {
                    (a, b, c): mult[(a, b, c)]
                    for a in pa
                    for b in pb
                    for c in pc
                    if mult[(a, b, c)] >= need
                }
                # the two parity classes of the cube on these six vertices
                for parity in (0, 1):
                    shapes = [
                        (pa[i], pb[j], pc[k])
                        for i in (0, 1)
                        for j in (0, 1)
                        for k in (0, 1)
                        if (i + j + k) % 2 == parity
                    ]
                    if all(s in present for s in shapes):
                        return FanoReport((pa, pb, pc), tuple(sorted(shapes)), need)
    return None


def component_subgraph(h: Tripartite3Graph, comp) -> Tripartite3Graph:
    return h.sub(comp.edge_ids)


def classify_pm_component(h: Tripartite3Graph, comp) -> str:
    """"type1": 2 vertices per class with a matching of size 2;
    "type2": 4 per class with a matching of size 4; otherwise "other"."""
    counts = comp.class_counts(3)
    if counts not in ((2, 2, 2), (4, 4, 4)):
        return "other"
    nu = nu_exact(component_subgraph(h, comp)).size
    if counts == (2, 2, 2) and nu == 2:
        return "type1"
    if counts == (4, 4, 4) and nu == 4:
        return "type2"
    return "other"


def component_of(h: Tripartite3Graph, vertex):
    for comp in components(h):
        if vertex in comp.vertices:
            return comp
    raise InputError(f"vertex {vertex!r} not in graph")


@dataclass
class BadnessTable:
    """``flags[v]`` is the set of classes i for which v is Vi-bad."""

    r: int
    flags: dict
    # class i -> list of C4 components of lk Vi (as hypergraph vertex sets)
    c4_sets: dict

    def is_bad(self, v) -> bool:
        return bool(self.flags.get(v))

    def bad_vertices(self) -> set:
        return {v for v, f in self.flags.items() if f}

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "bad": {f"{c}:{i}": sorted(f) for (c, i), f in sorted(self.flags.items()) if f},
        }


def badness(h: Tripartite3Graph, r: int) -> BadnessTable:
    """A vertex is Vi-bad if its component in lk Vi is not an r-regular C4."""
    flags = {v: set() for v in h.vertices()}
    c4_sets = {}
    for i in range(3):
        lk = link(h, i)
        reps = find_c4_components(lk, r)
        c4_sets[i] = [c4_hypergraph_vertices(i, c) for c in reps]
        inside = set().union(*c4_sets[i]) if c4_sets[i] else set()
        for v in h.vertices():
            if v[0] != i and v not in inside:
                flags[v].add(i)
    return BadnessTable(r, flags, c4_sets)


def good_c4s(h: Tripartite3Graph, class_id: int, r: int, table: BadnessTable | None = None):
    """Split the r-regular C4 components of lk V_class into good (no bad
    vertex) and ruined."""
    table = table or badness(h, r)
    good, ruined = [], []
    for c4 in find_c4_components(link(h, class_id), r):
        verts = c4_hypergraph_vertices(class_id, c4)
        (ruined if any(table.is_bad(v) for v in verts) else good).append(c4)
    return good, ruined


def _c4s_meeting(table: BadnessTable, link_class: int, verts) -> list[frozenset]:
    return [s for s in table.c4_sets[link_class] if s & verts]


def check_one_bad_vertex_structure(
    h: Tripartite3Graph, r: int, class_id: int, c4: C4Report, table: BadnessTable | None = None
):
    """Verify the companion structure around an r-regular C4 of lk V_i
    whose only bad vertex is a V_k-bad vertex of V_j.

    Expected: two C4 components of lk V_j meeting it in V_k, each with one
    V_i-bad and one V_k-bad vertex; one C4 component of lk V_k meeting it
    in V_j with a single bad vertex, V_i-bad and in V_j; and no other C4
    component (of any link) touching these four.
    """
    from t3lab.reports import BoundReport

    table = table or badness(h, r)
    i = class_id
    verts = c4_hypergraph_vertices(i, c4)
    bad = [v for v in verts if table.is_bad(v)]
    if len(bad) != 1:
        raise PreconditionError(f"C4 must have exactly one bad vertex, found {len(bad)}")
    w = bad[0]
    j = w[0]
    (k,) = set(range(3)) - {i, j}
    if table.flags[w] != {k}:
        raise PreconditionError(f"bad vertex {w} must be V{k}-bad only, flags {sorted(table.flags[w])}")
    if max(degrees(h).values(), default=0) > r:
        raise PreconditionError(f"maximum degree exceeds r={r}")

    missing = []
    own = verts
    in_vk = frozenset(v for v in own if v[0] == k)
    in_vj = frozenset(v for v in own if v[0] == j)

    pair = _c4s_meeting(table, j, in_vk)
    if len(pair) != 2:
        missing.append(f"expected 2 C4 components of lk V{j} meeting V{k}, found {len(pair)}")
    for s in pair:
        bads = [v for v in s if table.is_bad(v)]
        kinds = sorted(tuple(sorted(table.flags[v])) for v in bads)
        if len(bads) != 2 or sorted(kinds) != sorted([(i,), (k,)]):
            missing.append(f"C4 {sorted(s)} of lk V{j} lacks one V{i}-bad and one V{k}-bad vertex")

    single = _c4s_meeting(table, k, in_vj)
    if len(single) != 1:
        missing.append(f"expected 1 C4 component of lk V{k} meeting V{j}, found {len(single)}")
    for s in single:
        bads = [v for v in s if table.is_bad(v)]
        if len(bads) != 1 or bads[0][0] != j or table.flags[bads[0]] != {i}:
            missing.append(f"C4 {sorted(s)} of lk V{k} lacks a single V{i}-bad vertex in V{j}")

    unit = [own] + pair + single
    union = frozenset().union(*unit)
    outside = []
    for cls in range(3):
        for s in table.c4_sets[cls]:
            if s & union and s not in unit:
                outside.append(sorted(s))
    if outside:
        missing.append(f"C4 components outside the unit touch it: {outside}")

    clauses = 4
    return BoundReport(
        "lem-4.6",
        clauses - min(len(missing), clauses),
        clauses,
        not missing,
        {
            "c4": sorted(own),
            "bad_vertex": w,
            "lk_Vj_pair": [sorted(s) for s in pair],
            "lk_Vk_single": [sorted(s) for s in single],
            "missing": missing,
        },
        {"r": r, "i": i, "j": j, "k": k},
    )
