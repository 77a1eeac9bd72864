"""Tripartite 3-multihypergraphs, bipartite multigraphs, and exact
matching / cover computations on them.

Vertices are referenced as ``(class_id, index)``.  A tripartite graph has
classes 0, 1, 2 (A, B, C); a bipartite graph has classes 0 and 1 (left,
right).  Parallel edges are separate edge instances with their own ids.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from t3lab.errors import InputError, ResourceError

VertexRef = tuple[int, int]

NU_EDGE_CAP = 60
TAU_VERTEX_CAP = 24


@dataclass(frozen=True)
class Edge3:
    a: int
    b: int
    c: int
    id: int

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def vertices(self) -> tuple[VertexRef, VertexRef, VertexRef]:
        return ((0, self.a), (1, self.b), (2, self.c))


@dataclass(frozen=True)
class Edge2:
    u: int
    v: int
    id: int

    @property
    def shape(self) -> tuple[int, int]:
        return (self.u, self.v)

    def vertices(self) -> tuple[VertexRef, VertexRef]:
        return ((0, self.u), (1, self.v))


def _check_ids(edges) -> None:
    for pos, e in enumerate(edges):
        if e.id != pos:
            raise InputError(f"edge ids must be dense 0..m-1; position {pos} has id {e.id}")


@dataclass(frozen=True)
class Tripartite3Graph:
    class_sizes: tuple[int, int, int]
    edges: tuple[Edge3, ...] = ()

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.class_sizes)
        if len(sizes) != 3 or min(sizes) < 0:
            raise InputError(f"need three non-negative class sizes, got {self.class_sizes!r}")
        object.__setattr__(self, "class_sizes", sizes)
        object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            for cls, idx in e.vertices():
                if not 0 <= idx < sizes[cls]:
                    raise InputError(f"edge {e.id}: index {idx} out of range for class {cls}")
        _check_ids(self.edges)

    @classmethod
    def from_triples(cls, class_sizes, triples: Iterable[tuple[int, ...]]) -> "Tripartite3Graph":
        """Build from ``(a, b, c)`` or ``(a, b, c, multiplicity)`` tuples.

        Parallel copies get consecutive ids, in input order.
        """
        edges = []
        for t in triples:
            a, b, c = t[:3]
            mult = t[3] if len(t) > 3 else 1
            if mult < 1:
                raise InputError(f"multiplicity must be >= 1, got {mult}")
            for _ in range(mult):
                edges.append(Edge3(a, b, c, len(edges)))
        return cls(tuple(class_sizes), tuple(edges))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> list[VertexRef]:
        return [(cls, i) for cls in range(3) for i in range(self.class_sizes[cls])]

    def multiplicities(self) -> Counter:
        return Counter(e.shape for e in self.edges)

    def sub(self, edge_ids: Iterable[int]) -> "Tripartite3Graph":
        """Same vertex set, only the given edges (renumbered densely)."""
        keep = sorted(set(edge_ids))
        return Tripartite3Graph.from_triples(self.class_sizes, [self.edges[i].shape for i in keep])

    def scaled(self, s: int) -> "Tripartite3Graph":
        """``s·H``: every edge replaced by ``s`` parallel copies."""
        if s < 1:
            raise InputError("scale factor must be >= 1")
        return Tripartite3Graph.from_triples(self.class_sizes, [e.shape + (s,) for e in self.edges])


@dataclass(frozen=True)
class BipartiteMultigraph:
    class_sizes: tuple[int, int]
    edges: tuple[Edge2, ...] = ()
    # origin[i] is the hypergraph edge id a link edge i came from
    origin: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.class_sizes)
        if len(sizes) != 2 or min(sizes) < 0:
            raise InputError(f"need two non-negative class sizes, got {self.class_sizes!r}")
        object.__setattr__(self, "class_sizes", sizes)
        object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            for cls, idx in e.vertices():
                if not 0 <= idx < sizes[cls]:
                    raise InputError(f"edge {e.id}: index {idx} out of range for side {cls}")
        _check_ids(self.edges)
        if self.origin is not None and len(self.origin) != len(self.edges):
            raise InputError("origin map must have one entry per edge")

    @classmethod
    def from_pairs(cls, class_sizes, pairs: Iterable[tuple[int, ...]]) -> "BipartiteMultigraph":
        edges = []
        for p in pairs:
            u, v = p[:2]
            mult = p[2] if len(p) > 2 else 1
            if mult < 1:
                raise InputError(f"multiplicity must be >= 1, got {mult}")
            for _ in range(mult):
                edges.append(Edge2(u, v, len(edges)))
        return cls(tuple(class_sizes), tuple(edges))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> list[VertexRef]:
        return [(cls, i) for cls in range(2) for i in range(self.class_sizes[cls])]

    def multiplicities(self) -> Counter:
        return Counter(e.shape for e in self.edges)

    def sub(self, edge_ids: Iterable[int]) -> "BipartiteMultigraph":
        """Keep all vertices and the listed edges; ids are renumbered and
        ``origin`` records the old ids."""
        keep = sorted(set(edge_ids))
        edges = tuple(Edge2(self.edges[i].u, self.edges[i].v, k) for k, i in enumerate(keep))
        return BipartiteMultigraph(self.class_sizes, edges, origin=tuple(keep))


Graph = Tripartite3Graph | BipartiteMultigraph


def disjoint_union(*graphs):
    """Disjoint union of graphs of the same kind, classes concatenated."""
    if not graphs:
        raise InputError("need at least one graph")
    kind = type(graphs[0])
    if any(type(g) is not kind for g in graphs):
        raise InputError("cannot mix tripartite and bipartite graphs")
    width = len(graphs[0].class_sizes)
    offsets = [0] * width
    items = []
    for g in graphs:
        for e in g.edges:
            shape = e.shape
            items.append(tuple(shape[k] + offsets[k] for k in range(width)))
        offsets = [offsets[k] + g.class_sizes[k] for k in range(width)]
    if kind is Tripartite3Graph:
        return Tripartite3Graph.from_triples(offsets, items)
    return BipartiteMultigraph.from_pairs(offsets, items)


def _check_vertex(g: Graph, v: VertexRef) -> None:
    cls, idx = v
    if not 0 <= cls < len(g.class_sizes) or not 0 <= idx < g.class_sizes[cls]:
        raise InputError(f"vertex {v!r} out of range for class sizes {g.class_sizes}")


def degrees(g: Graph) -> Counter:
    deg = Counter()
    for e in g.edges:
        deg.update(e.vertices())
    return deg


def degree(g: Graph, v: VertexRef) -> int:
    _check_vertex(g, v)
    return sum(1 for e in g.edges if v in e.vertices())


def max_degree(g: Graph) -> int:
    deg = degrees(g)
    return max(deg.values(), default=0)


def is_regular(g: Graph, r: int) -> bool:
    """True iff every vertex (isolated ones included) has degree exactly r."""
    deg = degrees(g)
    return all(deg[v] == r for v in g.vertices())


@dataclass(frozen=True)
class Component:
    vertices: frozenset
    edge_ids: tuple[int, ...]

    def class_counts(self, width: int) -> tuple[int, ...]:
        return tuple(sum(1 for c, _ in self.vertices if c == k) for k in range(width))


def components(g: Graph) -> list[Component]:
    """Connected components via shared vertices, isolated vertices as
    singletons.  Sorted by smallest vertex."""
    parent = {v: v for v in g.vertices()}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        vs = e.vertices()
        root = find(vs[0])
        for w in vs[1:]:
            other = find(w)
            if other != root:
                parent[other] = root
    groups: dict = {}
    for v in g.vertices():
        groups.setdefault(find(v), set()).add(v)
    edge_groups: dict = {}
    for e in g.edges:
        edge_groups.setdefault(find(e.vertices()[0]), []).append(e.id)
    comps = [Component(frozenset(vs), tuple(edge_groups.get(root, ()))) for root, vs in groups.items()]
    comps.sort(key=lambda c: min(c.vertices))
    return comps


def other_classes(class_id: int) -> tuple[int, int]:
    if class_id not in (0, 1, 2):
        raise InputError(f"class id must be 0, 1 or 2, got {class_id}")
    return tuple(k for k in range(3) if k != class_id)


def link(h: Tripartite3Graph, class_id: int, S: Iterable[int] | None = None) -> BipartiteMultigraph:
    """Link of ``S`` (a set of indices in class ``class_id``; ``None`` means
    the whole class).

    One link edge per hypergraph edge meeting ``S``, in hypergraph id order;
    ``origin`` maps link edge ids back to hypergraph edge ids.
    """
    left, right = other_classes(class_id)
    if S is None:
        chosen = set(range(h.class_sizes[class_id]))
    else:
        chosen = set(S)
        for s in chosen:
            _check_vertex(h, (class_id, s))
    edges, origin = [], []
    for e in h.edges:
        shape = e.shape
        if shape[class_id] in chosen:
            edges.append(Edge2(shape[left], shape[right], len(edges)))
            origin.append(e.id)
    return BipartiteMultigraph(
        (h.class_sizes[left], h.class_sizes[right]), tuple(edges), origin=tuple(origin)
    )


class MatchingResult(NamedTuple):
    size: int
    edge_ids: frozenset


class CoverResult(NamedTuple):
    size: int
    vertices: frozenset


def _dedup(g: Graph) -> list:
    """One representative (lowest id) per parallel class."""
    seen = {}
    for e in g.edges:
        seen.setdefault(e.shape, e)
    return list(seen.values())


def _bit_offsets(g: Graph) -> list[int]:
    offs, acc = [], 0
    for s in g.class_sizes:
        offs.append(acc)
        acc += s
    return offs


def _edge_mask(e, offs) -> int:
    m = 0
    for cls, idx in e.vertices():
        m |= 1 << (offs[cls] + idx)
    return m


def nu_exact(h: Graph, cap: int = NU_EDGE_CAP) -> MatchingResult:
    """Maximum matching by branch and bound over parallel-deduplicated
    edges.  Edges are tried in order of decreasing degree sum, then id."""
    reps = _dedup(h)
    if len(reps) > cap:
        raise ResourceError(f"nu_exact: {len(reps)} distinct edges exceeds cap {cap}")
    offs = _bit_offsets(h)
    deg = degrees(h)
    reps.sort(key=lambda e: (-sum(deg[v] for v in e.vertices()), e.id))
    items = [(_edge_mask(e, offs), e.id) for e in reps]
    class_masks = [((1 << s) - 1) << o for s, o in zip(h.class_sizes, offs)]

    best: list = []

    def bound(cands) -> int:
        union = 0
        for m, _ in cands:
            union |= m
        return min([len(cands)] + [bin(union & cm).count("1") for cm in class_masks])

    def rec(cands, chosen):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if not cands or len(chosen) + bound(cands) <= len(best):
            return
        m, eid = cands[0]
        rest = cands[1:]
        chosen.append(eid)
        rec([c for c in rest if not c[0] & m], chosen)
        chosen.pop()
        rec(rest, chosen)

    rec(items, [])
    return MatchingResult(len(best), frozenset(best))


def _is_matching(g: Graph, ids) -> bool:
    used = set()
    for i in ids:
        for v in g.edges[i].vertices():
            if v in used:
                return False
            used.add(v)
    return True


def _greedy_disjoint(edges) -> int:
    used, count = set(), 0
    for vs in edges:
        if not used.intersection(vs):
            used.update(vs)
            count += 1
    return count


def tau_exact(h: Graph, cap: int = TAU_VERTEX_CAP) -> CoverResult:
    """Minimum vertex cover by bounded search: some vertex of the first
    uncovered edge is in every cover.  Depth runs from nu up to 3*nu; any
    set of disjoint uncovered edges lower-bounds what is still needed."""
    reps = [e.vertices() for e in _dedup(h)]
    touched = {v for vs in reps for v in vs}
    if len(touched) > cap:
        raise ResourceError(f"tau_exact: {len(touched)} non-isolated vertices exceeds cap {cap}")
    nu = nu_exact(h).size
    if not reps:
        return CoverResult(0, frozenset())

    def search(edges, budget, chosen):
        if not edges:
            return list(chosen)
        if budget == 0 or _greedy_disjoint(edges) > budget:
            return None
        for v in edges[0]:
            chosen.append(v)
            found = search([vs for vs in edges if v not in vs], budget - 1, chosen)
            chosen.pop()
            if found is not None:
                return found
        return None

    width = len(h.class_sizes)
    for k in range(nu, width * nu + 1):
        found = search(reps, k, [])
        if found is not None:
            return CoverResult(len(found), frozenset(found))
    raise AssertionError("the vertices of a maximum matching always cover")


def _bip_adjacency(g: BipartiteMultigraph) -> list[list[int]]:
    adj = [[] for _ in range(g.class_sizes[0])]
    for u, v in sorted({e.shape for e in g.edges}):
        adj[u].append(v)
    return adj


def _kuhn(g: BipartiteMultigraph):
    adj = _bip_adjacency(g)
    match_r = [-1] * g.class_sizes[1]

    def augment(u, seen):
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if match_r[v] == -1 or augment(match_r[v], seen):
                match_r[v] = u
                return True
        return False

    for u in range(g.class_sizes[0]):
        augment(u, set())
    return adj, match_r


def nu_bip(g: BipartiteMultigraph) -> MatchingResult:
    """Maximum matching by augmenting paths; witness uses lowest-id
    representatives of each parallel class."""
    _, match_r = _kuhn(g)
    rep = {}
    for e in g.edges:
        rep.setdefault(e.shape, e.id)
    ids = frozenset(rep[(u, v)] for v, u in enumerate(match_r) if u != -1)
    return MatchingResult(len(ids), ids)


def tau_bip(g: BipartiteMultigraph) -> CoverResult:
    """Minimum vertex cover from the alternating-reachability cut of a
    maximum matching (König)."""
    adj, match_r = _kuhn(g)
    match_l = [-1] * g.class_sizes[0]
    for v, u in enumerate(match_r):
        if u != -1:
            match_l[u] = v
    seen_l = {u for u in range(g.class_sizes[0]) if match_l[u] == -1}
    seen_r = set()
    stack = list(seen_l)
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen_r:
                seen_r.add(v)
                w = match_r[v]
                if w != -1 and w not in seen_l:
                    seen_l.add(w)
                    stack.append(w)
    cover = {(0, u) for u in range(g.class_sizes[0]) if u not in seen_l and adj[u]}
    cover |= {(1, v) for v in seen_r}
    nu = sum(1 for u in match_r if u != -1)
    assert len(cover) == nu, "König: cover size must equal matching size"
    return CoverResult(len(cover), frozenset(cover))


def is_cover(g: Graph, cover) -> bool:
    cover = set(cover)
    return all(cover.intersection(e.vertices()) for e in g.edges)
