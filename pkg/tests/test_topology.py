import pytest
from hypothesis import given, settings

from helpers import cycle_bmg, path_bmg, simple_graphs, single_edge_bmg
from t3lab.errors import InputError, ResourceError
from t3lab.linegraph import full_line
from t3lab.simplegraph import SimpleGraph, delete, explode
from t3lab.topology import (
    COEFFS,
    EtaEvaluator,
    EtaValue,
    eta,
    eta_ge_rational,
    eta_le,
    eta_min,
    homology,
    meshulam_game_lb,
    rank_f2,
    rank_q,
    smith_diagonal,
)


def cycle(n):
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


class TestEtaValue:
    def test_order(self):
        one, two, inf = EtaValue.finite(1), EtaValue.finite(2), EtaValue.infinite()
        assert eta_le(one, two) and eta_le(two, inf) and not eta_le(inf, two)
        assert eta_min(two, inf) == two
        assert inf.plus(1) == inf

    def test_at_least_comparisons(self):
        low = EtaValue.at_least(4)
        assert eta_le(EtaValue.finite(3), low)
        assert eta_ge_rational(low, 4)
        with pytest.raises(ResourceError):
            eta_le(low, EtaValue.finite(5))

    @pytest.mark.parametrize("v", [EtaValue.finite(3), EtaValue.infinite(), EtaValue.at_least(6)])
    def test_json_round_trip(self, v):
        assert EtaValue.from_json(v.to_json()) == v


class TestLinearAlgebra:
    def test_ranks_agree_on_small_matrix(self):
        cols = [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: 1}]
        assert rank_q(cols) == 3
        assert rank_f2(cols) == 2

    def test_smith_diagonal_detects_torsion(self):
        assert sorted(smith_diagonal([{0: 2}, {1: 3}], 2)) == [1, 6]


class TestGoldenValues:
    @pytest.mark.parametrize("coeff", COEFFS)
    def test_line_graphs(self, coeff):
        assert eta(full_line(path_bmg(3)), coeff) == EtaValue.finite(1)
        assert eta(full_line(cycle_bmg(10)), coeff) == EtaValue.finite(3)
        assert eta(full_line(single_edge_bmg()), coeff).is_infinite

    def test_vertexless(self):
        assert eta(SimpleGraph.from_edges(0, [])) == EtaValue.finite(0)

    def test_cycle_betti_numbers(self):
        # Ind(C_n) has one sphere, or two when 3 divides n
        for n in range(3, 12):
            dims = homology(cycle(n)).nonzero_dims()
            expected = 1 if n % 3 else 2
            assert len(dims) == 1
            assert homology(cycle(n)).betti[dims[0] + 1] == expected

    def test_cap_gives_lower_bound(self):
        assert eta(cycle(12), cap=2) == EtaValue.at_least(2)

    def test_vertex_limit(self):
        with pytest.raises(ResourceError):
            eta(cycle(12), vertex_limit=10)

    def test_bad_coefficients(self):
        with pytest.raises(InputError):
            eta(cycle(4), coeff="r")


class TestEvaluator:
    def test_memo(self):
        ev = EtaEvaluator()
        j = cycle(7)
        assert ev(j) == ev(cycle(7))
        assert ev.calls == 1


@settings(max_examples=150, deadline=None)
@given(simple_graphs(max_vertices=8))
def test_coefficients_agree_without_torsion(j):
    assert eta(j, "q") == eta(j, "f2") == eta(j, "z")


@settings(max_examples=150, deadline=None)
@given(simple_graphs(max_vertices=8))
def test_deletion_explosion_recursion(j):
    ev = EtaEvaluator()
    for e in sorted(j.adjacencies):
        assert eta_le(eta_min(ev(delete(j, e)), ev(explode(j, e)).plus(1)), ev(j))


@settings(max_examples=80, deadline=None)
@given(simple_graphs(max_vertices=7))
def test_game_lower_bound(j):
    assert eta_le(meshulam_game_lb(j), eta(j, cap=16))
