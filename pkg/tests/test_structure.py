import pytest

from helpers import ONE_BAD_FIXTURE, TYPE1_FIXTURE, TYPE2_FIXTURE, cycle_bmg
from t3lab.constructions import GadgetSpec, build
from t3lab.errors import PreconditionError
from t3lab.hypercore import BipartiteMultigraph, Tripartite3Graph, components, link
from t3lab.structure import (
    FormsHalfFano,
    TwoDisjoint,
    badness,
    c4_dichotomy,
    check_one_bad_vertex_structure,
    classify_pm_component,
    count_c4_components,
    find_c4_components,
    find_fano_components,
    good_c4s,
    has_fano_subcopy,
)


def fano():
    return build(GadgetSpec("fano"))


class TestC4:
    def test_cycle_of_length_four(self):
        assert count_c4_components(cycle_bmg(4), 2) == 1
        assert count_c4_components(cycle_bmg(6), 2) == 0

    def test_regularity_required(self):
        doubled = BipartiteMultigraph.from_pairs((2, 2), [(0, 0, 2), (0, 1, 2), (1, 0, 2), (1, 1, 2)])
        assert count_c4_components(doubled, 2) == 0
        assert count_c4_components(doubled, 4) == 1

    def test_unbalanced_sides_do_not_count(self):
        # 4-cycle needs alternating multiplicities summing to r at each vertex
        g = BipartiteMultigraph.from_pairs((2, 2), [(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 1)])
        assert count_c4_components(g, 3) == 1
        g = BipartiteMultigraph.from_pairs((2, 2), [(0, 0, 1), (0, 1, 1), (1, 0, 2), (1, 1, 1)])
        assert count_c4_components(g, 3) == 0


class TestFano:
    def test_fano_component(self):
        reps = find_fano_components(fano(), 2)
        assert len(reps) == 1 and reps[0].multiplicity == 1

    def test_extremal_count(self):
        h = build(GadgetSpec("extremal", {"r": 4, "n": 6}))
        assert len(find_fano_components(h, 4)) == 3

    def test_odd_parity_copy_found(self):
        odd = Tripartite3Graph.from_triples((2, 2, 2), [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)])
        assert len(find_fano_components(odd, 2)) == 1

    def test_subcopy_inside_larger_component(self):
        h = Tripartite3Graph.from_triples((3, 2, 2), [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (2, 0, 0)])
        assert find_fano_components(h, 2) == []
        assert has_fano_subcopy(h, 2) is not None

    def test_gadgets_are_free(self):
        for r in (2, 4):
            h = build(GadgetSpec("thm53-even", {"r": r}))
            assert has_fano_subcopy(h, r) is None


class TestDichotomy:
    def test_fano_link_forms_half_fano(self):
        (c4,) = find_c4_components(link(fano(), 0), 2)
        assert isinstance(c4_dichotomy(fano(), 0, c4), FormsHalfFano)

    def test_cube_link_has_disjoint_edges(self):
        (c4,) = find_c4_components(link(TYPE1_FIXTURE, 0), 4)
        assert isinstance(c4_dichotomy(TYPE1_FIXTURE, 0, c4), TwoDisjoint)

    def test_degree_precondition(self):
        h = Tripartite3Graph.from_triples((2, 2, 3), [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (0, 0, 2)])
        (c4,) = find_c4_components(link(h, 2, [0, 1]), 2)
        with pytest.raises(PreconditionError):
            c4_dichotomy(h, 2, c4)


class TestPerfectMatchingComponents:
    def test_type1(self):
        (comp,) = [c for c in components(TYPE1_FIXTURE) if c.edge_ids]
        assert classify_pm_component(TYPE1_FIXTURE, comp) == "type1"

    def test_type2(self):
        (comp,) = [c for c in components(TYPE2_FIXTURE) if c.edge_ids]
        assert classify_pm_component(TYPE2_FIXTURE, comp) == "type2"

    def test_fano_is_other(self):
        (comp,) = components(fano())
        assert classify_pm_component(fano(), comp) == "other"


class TestBadness:
    def test_fano_has_no_bad_vertices(self):
        assert not badness(fano(), 2).bad_vertices()

    def test_one_bad_vertex(self):
        table = badness(ONE_BAD_FIXTURE, 2)
        assert table.flags[(2, 1)] == {1}
        good, ruined = good_c4s(ONE_BAD_FIXTURE, 0, 2, table)
        assert len(ruined) == 1

    def test_one_bad_vertex_structure(self):
        table = badness(ONE_BAD_FIXTURE, 2)
        _, (c4,) = good_c4s(ONE_BAD_FIXTURE, 0, 2, table)
        rep = check_one_bad_vertex_structure(ONE_BAD_FIXTURE, 2, 0, c4, table)
        assert rep.passed and rep.lhs == rep.rhs == 4
