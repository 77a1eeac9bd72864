import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from helpers import (
    ONE_BAD_FIXTURE,
    TYPE1_FIXTURE,
    TYPE2_FIXTURE,
    bipartite_graphs,
    cycle_bmg,
    path_bmg,
    random_c4_free_bmg,
    single_edge_bmg,
    tripartite_graphs,
)
from t3lab import bounds
from t3lab.constructions import GadgetSpec, build
from t3lab.errors import InputError, PreconditionError
from t3lab.hypercore import BipartiteMultigraph, Tripartite3Graph, disjoint_union, max_degree, nu_exact
from t3lab.linegraph import full_line
from t3lab.topology import EtaEvaluator, EtaValue, eta, eta_le


def gadget(family, **params):
    return build(GadgetSpec(family, params))


def mixture(m, j):
    parts = [GadgetSpec("fano")] * m + [GadgetSpec("parallel-triple", {"r": 2})] * j
    return build(GadgetSpec("mixture", {"parts": parts}))


class TestLinearProgram:
    def test_worked_example(self):
        sol = bounds.lp_min(5, 10, 2)
        assert (sol.t, sol.x1, sol.x2, sol.x3) == (3, 0, 1, 1)
        assert sol.gap == 0 and sol.closed_form_applies

    def test_zero(self):
        assert bounds.lp_min(0, 0, 3).t == 0

    def test_dual_point(self):
        sol = bounds.lp_min(4, 12, 3)
        assert sol.dual_value == sol.t == Fraction(3 * 4 + 12, 11)

    def test_rejects_bad_arguments(self):
        with pytest.raises(InputError):
            bounds.lp_min(1, 1, 1)

    def test_outside_closed_form_range(self):
        # many vertices per unit of nu: type-3 explosions alone are cheapest
        sol = bounds.lp_min(1, 8, 2)
        assert not sol.closed_form_applies
        assert sol.t == 2 > Fraction(1 + 8, 5)
        assert sol.gap == 0

    @settings(max_examples=300, deadline=None)
    @given(st.integers(2, 8), st.integers(0, 15), st.integers(0, 200))
    def test_strong_duality_everywhere(self, r, nu, v):
        sol = bounds.lp_min(nu, v, r)
        assert sol.gap == 0
        assert min(sol.x1, sol.x2, sol.x3, sol.y1, sol.y2) >= 0
        assert sol.x1 + 2 * sol.x2 + 3 * sol.x3 >= nu
        assert (3 * r - 2) * sol.x1 + (2 * r - 1) * sol.x2 + (6 * r - 5) * sol.x3 >= v
        assert sol.t >= bounds.connectedness_bound(nu, v, r)

    @settings(max_examples=300, deadline=None)
    @given(st.integers(2, 8), st.integers(0, 15), st.data())
    def test_closed_form_on_its_range(self, r, nu, data):
        low = -(-(2 * r - 1) * nu // 2)
        high = (6 * r - 5) * nu // 3
        v = data.draw(st.integers(low, max(low, high)))
        assume(3 * v <= (6 * r - 5) * nu)
        sol = bounds.lp_min(nu, v, r)
        assert sol.x1 == 0
        assert sol.t == bounds.connectedness_bound(nu, v, r)


class TestMatchingCover:
    def test_cover_at_most_twice_matching(self):
        rep = bounds.check_thm_1_3(gadget("fano"))
        assert rep.passed and (rep.lhs, rep.rhs) == (2, 2)

    def test_regular_half(self):
        rep = bounds.check_thm_1_2(gadget("extremal", r=2, n=4), 2)
        assert rep.passed and rep.lhs == 2 == rep.rhs

    def test_single_parallel_triple(self):
        rep = bounds.check_thm_1_2(gadget("parallel-triple", r=3), 3)
        assert rep.passed and rep.lhs == 1 and rep.rhs == Fraction(1, 2)

    def test_regularity_precondition(self):
        with pytest.raises(PreconditionError):
            bounds.check_thm_1_2(gadget("fano"), 3)
        with pytest.raises(PreconditionError):
            bounds.check_thm_1_2(Tripartite3Graph.from_triples((1, 2, 1), [(0, 0, 0)]), 1)

    @settings(max_examples=100, deadline=None)
    @given(tripartite_graphs(max_class=4, max_edges=10))
    def test_cover_bound_always_holds(self, h):
        assert bounds.check_thm_1_3(h).passed


class TestConnectedness:
    def test_cycle_tight(self):
        rep = bounds.check_thm_3_1(cycle_bmg(10), r=2)
        assert rep.passed and rep.lhs == EtaValue.finite(3) and rep.rhs == 3

    def test_path_tight(self):
        rep = bounds.check_thm_3_1(path_bmg(3), r=2)
        assert rep.passed and rep.rhs == 1

    def test_single_edge(self):
        rep = bounds.check_thm_3_1(single_edge_bmg(), r=2)
        assert rep.passed and rep.lhs.is_infinite and rep.rhs == Fraction(2, 5)

    def test_c4_component_is_a_precondition_failure(self):
        with pytest.raises(PreconditionError):
            bounds.check_thm_3_1(cycle_bmg(4), r=2)

    def test_c4_allowance(self):
        rep = bounds.check_cor_3_8(cycle_bmg(4), r=2)
        assert rep.passed and rep.context["k"] == 1 and rep.rhs == 1

    def test_supplied_k_too_small(self):
        with pytest.raises(PreconditionError):
            bounds.check_cor_3_8(cycle_bmg(4), r=2, k=0)

    def test_disjoint_union_superadditive(self):
        c4, p4 = cycle_bmg(4), path_bmg(3)
        both = disjoint_union(c4, p4)
        total = eta(full_line(both))
        assert total == EtaValue.finite(eta(full_line(c4)).value + eta(full_line(p4)).value)
        assert bounds.check_cor_3_8(both, r=2).passed

    def test_random_c4_free_graphs(self):
        rng = random.Random(5)
        ev = EtaEvaluator(vertex_limit=64)
        for _ in range(40):
            g, r = random_c4_free_bmg(rng)
            assert bounds.check_thm_3_1(g, r=r, eta_fn=ev).passed

    @settings(max_examples=60, deadline=None)
    @given(bipartite_graphs(max_side=4, max_edges=8))
    def test_allowance_bound_on_random_graphs(self, g):
        assume(1 <= max_degree(g) <= 3)
        assert bounds.check_cor_3_8(g).passed

    def test_half_matching_lower_bound(self):
        rng = random.Random(3)
        for _ in range(60):
            g, _ = random_c4_free_bmg(rng)
            value = eta(full_line(g), cap=16)
            assert eta_le(EtaValue.finite(-(-nu_exact(g).size // 2)), value)


class TestHallWitness:
    def test_extremal(self):
        h = gadget("extremal", r=2, n=4)
        w = bounds.hall_witness(h, 0)
        assert w.defect >= 4 - w.nu == 2
        assert w.S == (0, 1, 2, 3)

    def test_single_edge(self):
        h = Tripartite3Graph.from_triples((1, 1, 1), [(0, 0, 0)])
        for c in range(3):
            assert bounds.hall_witness(h, c).defect == 0

    def test_perfect_matching(self):
        h = Tripartite3Graph.from_triples((3, 3, 3), [(i, i, i, 2) for i in range(3)])
        w = bounds.hall_witness(h, 1)
        assert w.defect <= 0 and w.nu == 3
        assert bounds.check_thm_2_2(h, 1).passed

    @settings(max_examples=40, deadline=None)
    @given(tripartite_graphs(max_class=3, max_edges=6))
    def test_matching_at_least_class_minus_defect(self, h):
        w = bounds.hall_witness(h, 0)
        assert w.nu >= h.class_sizes[0] - max(w.defect, 0)


class TestStability:
    @pytest.mark.parametrize("r,n", [(2, 2), (2, 4), (4, 4), (4, 8)])
    def test_extremal(self, r, n):
        h = gadget("extremal", r=r, n=n)
        rep = bounds.check_thm_4_1(h, r)
        assert rep.passed and rep.context["eps"] == 0 and rep.lhs == n // 2 == rep.rhs
        assert bounds.check_lemma_4_2(h, r).lhs == n // 2
        assert bounds.check_thm_4_2(h, r).passed

    @pytest.mark.parametrize("m,j", [(1, 0), (2, 1), (3, 3), (6, 2)])
    def test_mixtures(self, m, j):
        h = mixture(m, j)
        rep = bounds.check_thm_4_1(h, 2)
        assert rep.context["eps"] == Fraction(j, 2 * m + j)
        assert rep.passed and rep.lhs == m
        assert bounds.check_lemma_4_2(h, 2).passed

    def test_even_gadget(self):
        rep = bounds.check_thm_4_1(gadget("thm53-even", r=2), 2)
        assert rep.lhs == 0 and rep.rhs < 0 and rep.passed

    def test_trimming(self):
        h = Tripartite3Graph.from_triples((2, 3, 3), [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (0, 2, 2)])
        trimmed = bounds.trim_class_degrees(h, 2)
        assert trimmed.n_edges == 4
        rep = bounds.check_thm_4_2(h, 2)
        assert rep.passed and rep.witnesses["fano_components_transformed"] == 1

    def test_perfect_matching_components_collapse(self):
        out = bounds.replace_pm_components(TYPE1_FIXTURE, 4)
        shapes = out.multiplicities()
        assert out.n_edges == 8 and set(shapes.values()) == {4}
        a, b = shapes
        assert all(x != y for x, y in zip(a, b))

    def test_degree_conditions(self):
        with pytest.raises(PreconditionError):
            bounds.check_thm_4_2(gadget("fano"), 3)
        with pytest.raises(PreconditionError):
            bounds.check_thm_4_1(gadget("thm53-even", r=2), 4)

    def test_large_eps_is_vacuous(self):
        rep = bounds.check_lemma_4_2(mixture(1, 3), 2)
        assert rep.rhs <= 0 and rep.passed


class TestStructureBounds:
    def test_classification_fixtures(self):
        one = bounds.check_lemma_4_5(TYPE1_FIXTURE, 4)
        two = bounds.check_lemma_4_5(TYPE2_FIXTURE, 2)
        assert one.passed and {c["component_type"] for c in one.witnesses["cases"]} == {"type1"}
        assert two.passed and {c["component_type"] for c in two.witnesses["cases"]} == {"type2"}

    def test_one_bad_vertex(self):
        rep = bounds.check_lemma_4_6(ONE_BAD_FIXTURE, 2)
        assert rep.passed and rep.witnesses["checked"] >= 1

    def test_vacuous(self):
        rep = bounds.check_lemma_4_6(gadget("fano"), 2)
        assert rep.passed and rep.witnesses["vacuous"]

    @settings(max_examples=100, deadline=None)
    @given(tripartite_graphs(max_class=4, max_edges=10))
    def test_dichotomy_never_errors(self, h):
        r = max(2, max_degree(h))
        assert bounds.check_lemma_4_3(h, r).passed
        assert bounds.check_lemma_4_5(h, r).passed
        assert bounds.check_lemma_4_6(h, r).passed

    def test_fano_free_matching_bound(self):
        for r in (2, 4):
            assert bounds.check_cor_5_1(gadget("thm53-even", r=r), r).passed
        with pytest.raises(PreconditionError):
            bounds.check_cor_5_1(gadget("fano"), 2)
