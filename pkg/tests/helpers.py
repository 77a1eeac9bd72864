"""Shared generators and the fixture corpus for the test suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from t3lab.constructions import GadgetSpec, build, random_regular
from t3lab.hypercore import BipartiteMultigraph, Tripartite3Graph, link, max_degree
from t3lab.simplegraph import SimpleGraph
from t3lab.structure import find_c4_components


def path_bmg(n_edges: int) -> BipartiteMultigraph:
    """Path with ``n_edges`` edges, alternating sides."""
    pairs = [((k + 1) // 2, k // 2) for k in range(n_edges)]
    left = max((p[0] for p in pairs), default=-1) + 1
    right = max((p[1] for p in pairs), default=-1) + 1
    return BipartiteMultigraph.from_pairs((left, right), pairs)


def cycle_bmg(length: int) -> BipartiteMultigraph:
    """Even cycle with ``length`` edges."""
    half = length // 2
    pairs = []
    for i in range(half):
        pairs += [(i, i), (i, (i + 1) % half)]
    return BipartiteMultigraph.from_pairs((half, half), pairs)


def single_edge_bmg() -> BipartiteMultigraph:
    return BipartiteMultigraph.from_pairs((1, 1), [(0, 0)])


CUBE = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]

# lk of each class is a 4-regular C4 and the component has a perfect matching
TYPE1_FIXTURE = Tripartite3Graph.from_triples((2, 2, 2), CUBE)

# 2-regular, every link a union of two C4s, perfect matching of size 4
TYPE2_FIXTURE = Tripartite3Graph.from_triples(
    (4, 4, 4),
    [(0, 0, 0), (1, 1, 1), (2, 0, 1), (3, 1, 0), (0, 2, 3), (1, 3, 2), (2, 2, 2), (3, 3, 3)],
)

# a 2-regular C4 of the first link whose only bad vertex sits in the third class
ONE_BAD_FIXTURE = Tripartite3Graph.from_triples(
    (4, 4, 5),
    [(0, 0, 0), (1, 1, 1), (2, 0, 1), (3, 1, 0), (0, 2, 2), (3, 3, 2), (2, 2, 3), (1, 3, 4)],
)


def named_specs() -> list[GadgetSpec]:
    fano = GadgetSpec("fano")
    return [
        fano,
        GadgetSpec("scaled-fano", {"s": 2}),
        GadgetSpec("extremal", {"r": 2, "n": 4}),
        GadgetSpec("extremal", {"r": 4, "n": 2}),
        GadgetSpec("thm53-even", {"r": 2}),
        GadgetSpec("thm53-even", {"r": 4}),
        GadgetSpec("thm53-odd", {"r": 3}),
        GadgetSpec("thm53-odd", {"r": 5}),
        GadgetSpec("parallel-triple", {"r": 3}),
        GadgetSpec("mixture", {"parts": [fano, GadgetSpec("parallel-triple", {"r": 2})]}),
    ]


def random_tripartite(rng: random.Random, max_class: int = 3, max_edges: int = 8) -> Tripartite3Graph:
    sizes = tuple(rng.randint(1, max_class) for _ in range(3))
    m = rng.randint(0, max_edges)
    triples = [tuple(rng.randrange(s) for s in sizes) for _ in range(m)]
    return Tripartite3Graph.from_triples(sizes, triples)


def random_bmg(rng: random.Random, max_side: int = 4, max_edges: int = 8) -> BipartiteMultigraph:
    sizes = (rng.randint(1, max_side), rng.randint(1, max_side))
    m = rng.randint(0, max_edges)
    return BipartiteMultigraph.from_pairs(sizes, [(rng.randrange(sizes[0]), rng.randrange(sizes[1])) for _ in range(m)])


def random_c4_free_bmg(rng: random.Random, max_edges: int = 8, max_deg: int = 3):
    """Rejection-sample a nonempty bipartite multigraph of maximum degree
    <= max_deg with no r-regular C4 component, r = max(2, max degree)."""
    while True:
        g = random_bmg(rng, max_side=5, max_edges=max_edges)
        if not g.n_edges:
            continue
        r = max(2, max_degree(g))
        if r <= max_deg and not find_c4_components(g, r):
            return g, r


def random_simple_graph(rng: random.Random, max_vertices: int = 9) -> SimpleGraph:
    n = rng.randint(0, max_vertices)
    p = rng.random()
    return SimpleGraph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])


def corpus() -> list[tuple[str, object]]:
    """Named and seeded instances, tripartite and bipartite, for the
    oracle-equivalence sweep."""
    items: list[tuple[str, object]] = []
    for spec in named_specs():
        items.append((f"{spec.family}{spec.params}", build(spec)))
    items += [("type1", TYPE1_FIXTURE), ("type2", TYPE2_FIXTURE), ("one-bad", ONE_BAD_FIXTURE)]
    items.append(("empty", Tripartite3Graph((0, 0, 0))))
    for seed in range(12):
        items.append((f"random-regular-{seed}", random_regular(1 + seed % 3, 2 + seed % 3, seed)))
    rng = random.Random(2024)
    for k in range(15):
        items.append((f"random-tripartite-{k}", random_tripartite(rng)))
    for k in (1, 2, 3, 4, 5, 7):
        items.append((f"path-{k}", path_bmg(k)))
    for k in (4, 6, 8, 10):
        items.append((f"cycle-{k}", cycle_bmg(k)))
    for k in range(10):
        items.append((f"random-bmg-{k}", random_bmg(rng)))
    for name, h in list(items):
        if isinstance(h, Tripartite3Graph) and h.n_edges and name.startswith(("fano", "thm53-even", "type")):
            items.append((f"{name}-link0", link(h, 0)))
    return items


# -- hypothesis strategies -----------------------------------------------------


@st.composite
def tripartite_graphs(draw, max_class: int = 3, max_edges: int = 8):
    sizes = tuple(draw(st.integers(1, max_class)) for _ in range(3))
    triples = draw(
        st.lists(
            st.tuples(*(st.integers(0, s - 1) for s in sizes)),
            max_size=max_edges,
        )
    )
    return Tripartite3Graph.from_triples(sizes, triples)


@st.composite
def bipartite_graphs(draw, max_side: int = 4, max_edges: int = 8):
    sizes = (draw(st.integers(1, max_side)), draw(st.integers(1, max_side)))
    pairs = draw(st.lists(st.tuples(st.integers(0, sizes[0] - 1), st.integers(0, sizes[1] - 1)), max_size=max_edges))
    return BipartiteMultigraph.from_pairs(sizes, pairs)


@st.composite
def simple_graphs(draw, max_vertices: int = 8):
    n = draw(st.integers(0, max_vertices))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return SimpleGraph.from_edges(n, chosen)
