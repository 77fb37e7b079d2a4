from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mstci.bounds import (
    bounds_report,
    build_mu_regular,
    dense_shortcut,
    effective_bound,
    is_mu_regular,
    lower_bound_bar,
    lower_bound_l,
    qr_decompose,
    ratios,
    regular_family_ratio,
)
from mstci.canon import generate_connected
from mstci.errors import InfeasibleSize, ZeroIntersection
from mstci.graph import (
    cocktail_party_graph,
    complete_graph,
    cycle_graph,
    degrees,
    from_edge_list,
    is_connected,
    star_graph,
    universal_vertex,
    wheel_graph,
)
from mstci.solver import solve_mstci


def feasible(max_n):
    for n in range(2, max_n + 1):
        for m in range(n - 1, n * (n - 1) // 2 + 1):
            yield n, m


class TestFormulas:
    def test_l_values(self):
        assert lower_bound_l(4, 6) == 0
        assert lower_bound_l(6, 15) == 5
        assert lower_bound_l(8, 24) == Fraction(85, 7)
        assert lower_bound_l(5, 4) == 0  # trees: mu = 0
        assert lower_bound_l(6, 7) < 0

    def test_qr(self):
        assert qr_decompose(8, 24) == (4, 6)
        assert qr_decompose(6, 15) == (4, 0)
        assert qr_decompose(5, 8) == (2, 0)

    def test_l_bar(self):
        assert lower_bound_bar(8, 24) == 66
        assert lower_bound_bar(6, 15) == 30
        for n in range(3, 12):
            assert lower_bound_bar(n, n) == 0

    @pytest.mark.parametrize("n, m", [(1, 0), (4, 2), (4, 7), (0, 0)])
    def test_infeasible(self, n, m):
        with pytest.raises(InfeasibleSize):
            lower_bound_l(n, m)
        with pytest.raises(InfeasibleSize):
            lower_bound_bar(n, m)

    def test_report(self):
        rep = bounds_report(8, 24)
        assert (rep.mu, rep.l, rep.q, rep.r, rep.l_bar) == (17, Fraction(85, 7), 4, 6, 66)
        assert 2 * rep.mu == rep.q * (rep.n - 1) + rep.r

    def test_effective_bound(self):
        assert effective_bound(8, 24) == 13
        assert effective_bound(6, 7) == 0

    @given(st.integers(2, 40).flatmap(
        lambda n: st.tuples(st.just(n), st.integers(n - 1, n * (n - 1) // 2))))
    def test_l_bar_forms_and_nonnegative(self, nm):
        n, m = nm
        q, r = qr_decompose(n, m)
        assert 0 <= r < n - 1
        assert lower_bound_bar(n, m) == (n - 1 - r) * comb(q, 2) + r * comb(q + 1, 2) >= 0

    def test_positivity_threshold(self):
        for n, m in feasible(12):
            assert (lower_bound_l(n, m) > 0) == (m > 2 * (n - 1)), (n, m)

    def test_l_bar_dominates_twice_l(self):
        checked = 0
        for n, m in feasible(12):
            if m > 2 * (n - 1):
                assert lower_bound_bar(n, m) > 2 * lower_bound_l(n, m), (n, m)
                checked += 1
        assert checked > 100


class TestMuRegular:
    def test_k6(self):
        assert is_mu_regular(complete_graph(6))

    def test_wheel(self):
        assert is_mu_regular(wheel_graph(5))

    def test_cycle(self):
        assert not is_mu_regular(cycle_graph(5))

    def test_hub_with_uneven_rest(self):
        # hub 0 plus edges 1-2, 1-3, 1-4: non-hub G-degrees 4,2,2,2; q=1, r=2
        g = from_edge_list(5, [(0, i) for i in range(1, 5)] + [(1, 2), (1, 3), (1, 4)])
        assert universal_vertex(g) is not None and not is_mu_regular(g)

    def test_build_examples(self):
        g = build_mu_regular(5, 8)
        assert g.m == 8 and degrees(g) == [4, 3, 3, 3, 3]
        rest = from_edge_list(4, [(u - 1, v - 1) for u, v in g.edges if u != 0])
        assert is_connected(rest) and set(degrees(rest)) == {2}
        assert build_mu_regular(6, 15) == complete_graph(6)
        assert build_mu_regular(7, 6) == star_graph(7)

    def test_build_all_feasible(self):
        for n, m in feasible(12):
            g = build_mu_regular(n, m)
            assert (g.n, g.m) == (n, m) and is_mu_regular(g)
        assert build_mu_regular(8, 20) == build_mu_regular(8, 20)

    def test_tight_on_mu_regular(self):
        for n, m in feasible(7):
            g = build_mu_regular(n, m)
            assert solve_mstci(g, allow_star_shortcut=False).intersection_number == lower_bound_bar(n, m)

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_mu_regular_strictly_minimal_among_universal(self, n):
        for g in generate_connected(n):
            if universal_vertex(g) is None:
                continue
            cap = solve_mstci(g).intersection_number
            if is_mu_regular(g):
                assert cap == lower_bound_bar(n, g.m)
            else:
                assert cap > lower_bound_bar(n, g.m)


class TestDenseShortcut:
    def test_k8(self):
        assert dense_shortcut(complete_graph(8)) == 7 * comb(6, 2) == 105

    def test_threshold_not_reached(self):
        assert dense_shortcut(cocktail_party_graph(8)) is None

    def test_k4(self):
        assert dense_shortcut(complete_graph(4)) == 3

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_every_dense_graph_has_universal_vertex(self, n):
        for g in generate_connected(n):
            val = dense_shortcut(g)
            if 2 * g.m > n * (n - 2):
                assert val == solve_mstci(g, allow_star_shortcut=False).intersection_number
            else:
                assert val is None


class TestRatios:
    def test_k6(self):
        rep = ratios(complete_graph(6), 30)
        assert rep.r_G == Fraction(1, 6) and rep.r_bar_G == 1

    def test_cocktail_party(self):
        rep = ratios(cocktail_party_graph(8), 82)
        assert rep.r_G == Fraction(85, 7) / 82
        assert abs(float(rep.r_G) - 0.148) < 5e-4

    def test_zero(self):
        with pytest.raises(ZeroIntersection):
            ratios(cycle_graph(5), 0)

    def test_regular_family_formula(self):
        assert regular_family_ratio(4) == Fraction(1, 8)
        for k in range(4, 200):
            assert Fraction(1, 8) <= regular_family_ratio(k) < Fraction(1, 4)

    @staticmethod
    def hub_plus(rest_n, rest_edges):
        return from_edge_list(rest_n + 1, [(0, i) for i in range(1, rest_n + 1)]
                              + [(u + 1, v + 1) for u, v in rest_edges])

    def test_family_with_g_degree_k(self):
        # non-hub vertices have degree k in G, i.e. G - hub is (k-1)-regular
        k5 = self.hub_plus(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        prism = self.hub_plus(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
        circ = self.hub_plus(7, [(i, (i + d) % 7) for i in range(7) for d in (1, 2)])  # 4-regular
        for g, k in [(k5, 4), (prism, 4), (circ, 5)]:
            assert set(degrees(g)[1:]) == {k}
            cap = solve_mstci(g, allow_star_shortcut=False).intersection_number
            assert cap == (g.n - 1) * (k - 1) * (k - 2) // 2
            assert ratios(g, cap).r_G == regular_family_ratio(k)
            assert ratios(g, cap).r_bar_G == 1

    def test_family_literal_reading_differs(self):
        # G - hub itself 4-regular: G-degree is 5, so the ratio is (5-3)/(4*3) = 1/6, not 1/8
        g = self.hub_plus(7, [(i, (i + d) % 7) for i in range(7) for d in (1, 2)])
        cap = solve_mstci(g).intersection_number
        assert ratios(g, cap).r_G == Fraction(1, 6) != regular_family_ratio(4)
