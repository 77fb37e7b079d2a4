from fractions import Fraction

import pytest

from mstci.bounds import is_mu_regular, lower_bound_bar, lower_bound_l
from mstci.experiments import (
    aggregate_csv,
    cocktail_party_check,
    dominance_csv,
    histogram_csv,
    load_scan_csv,
    maxdeg_csv,
    random_sample_scan,
    read_checkpoint,
    scan_bounds,
    scan_csv,
    scan_maxdeg,
    scan_record,
    scan_successor_dominance,
    verify_lemmas,
)
from mstci.graph import (
    complete_graph,
    cycle_graph,
    from_edge_list,
    max_deg,
    parse_graph6,
    universal_vertex,
)
from mstci.solver import solve_mstci


class TestScanBounds:
    def test_n5(self, connected_graphs):
        records, agg = scan_bounds(5, connected_graphs(5))
        assert len(records) == 21
        assert [(r.m, r.graph6) for r in records] == sorted((r.m, r.graph6) for r in records)
        for r in records:
            g = parse_graph6(r.graph6)
            assert r.intersection_number == solve_mstci(g, allow_star_shortcut=False).intersection_number
            assert r.has_universal_vertex == (universal_vertex(g) is not None)
            assert r.is_mu_regular == is_mu_regular(g)
            assert r.max_deg_g == max_deg(g)
            assert r.l == lower_bound_l(5, r.m) and r.l_bar == lower_bound_bar(5, r.m)
            if r.mu > 0:
                assert r.l < r.intersection_number
        assert sum(a.graph_count for a in agg) == 21
        for a in agg:
            assert a.min_cap <= a.mean_cap <= a.max_cap
        top = agg[-1]
        assert top.m == 10 and top.graph_count == 1 and top.min_cap == top.max_cap == 12

    def test_shortcut_does_not_change_results(self, connected_graphs):
        fast, _ = scan_bounds(6, connected_graphs(6))
        full, _ = scan_bounds(6, connected_graphs(6), star_shortcut=False)
        assert fast == full

    def test_rejects_wrong_n(self):
        with pytest.raises(ValueError):
            scan_bounds(5, [complete_graph(4)])

    def test_csv_round_trip(self, connected_graphs):
        records, agg = scan_bounds(5, connected_graphs(5))
        text = scan_csv(records)
        assert text.splitlines()[0] == (
            "graph6,n,m,mu,cap,universal,mu_regular,l_num,l_den,l_bar,max_deg_g,minimizer_matches_max_deg"
        )
        assert load_scan_csv(text) == records
        agg_lines = aggregate_csv(agg).splitlines()
        assert agg_lines[0] == "n,m,count,min_cap,max_cap,mean_cap,l,l_bar,r_mean,r_std,rbar_mean,rbar_std"
        # K5 row: l = 3/2, cap = 12, r = 1/8 with zero spread
        assert agg_lines[-1] == "5,10,1,12,12,12.000000,1.500000,12,0.125000,0.000000,1.000000,0.000000"

    def test_parallel_matches_serial(self, connected_graphs):
        a, _ = scan_bounds(6, connected_graphs(6), jobs=1)
        b, _ = scan_bounds(6, connected_graphs(6), jobs=2)
        assert scan_csv(a) == scan_csv(b)


class TestDominance:
    @pytest.mark.parametrize("n", [5, 6])
    def test_no_dominant_graphs(self, n, connected_graphs):
        recs = scan_successor_dominance(n, connected_graphs(n))
        assert len(recs) == len(connected_graphs(n))
        assert not any(r.dominant for r in recs)
        total = n * (n - 1) // 2
        for r in recs:
            assert r.successor_count == total - r.m == len(r.successor_intersections)
            if not r.dominant and r.successor_count:
                assert max(r.successor_intersections) >= r.own_intersection

    def test_complete_graph_has_no_successors(self, connected_graphs):
        recs = scan_successor_dominance(5, connected_graphs(5))
        k5 = [r for r in recs if r.m == 10][0]
        assert k5.successor_count == 0 and not k5.dominant

    def test_memo_fills_missing_classes(self):
        memo = {}
        recs = scan_successor_dominance(5, [cycle_graph(5)], memo=memo)
        assert recs[0].successor_count == 5
        # C5 plus any chord is the same class: one extra memo entry
        assert len(memo) == 2 and set(recs[0].successor_intersections) == {1}

    def test_csv(self, connected_graphs):
        text = dominance_csv(scan_successor_dominance(5, connected_graphs(5)))
        lines = text.splitlines()
        assert lines[0] == "graph6,m,successors,cap,successor_caps,dominant"
        assert len(lines) == 22 and all(line.endswith(",false") for line in lines[1:])


class TestMaxDeg:
    def test_n5_n6(self, connected_graphs):
        assert scan_maxdeg(5, connected_graphs(5)).counterexamples == 0
        scan = scan_maxdeg(6, connected_graphs(6))
        assert scan.counterexamples == 2
        assert sum(scan.graphs_by_m.values()) == 112
        assert sum(scan.counterexamples_by_m.values()) == 2

    def test_counterexamples_against_all_minimizers(self, connected_graphs):
        scan = scan_maxdeg(6, connected_graphs(6))
        for s, m, cap, d, ok in scan.records:
            g = parse_graph6(s)
            res = solve_mstci(g, want_all_minimizers=True)
            assert cap == res.intersection_number and d == max_deg(g)
            assert ok == any(t.max_deg(g) == d for t in res.all_minimizers)

    def test_checkpoint_resume(self, connected_graphs, tmp_path):
        ck = tmp_path / "ck.tsv"
        full = scan_maxdeg(6, connected_graphs(6), checkpoint=str(ck))
        lines = ck.read_text().splitlines()
        assert len(lines) == 112 and all(len(x.split("\t")) == 3 for x in lines)
        # keep 40 finished lines plus a torn partial one
        ck.write_text("\n".join(lines[:40]) + "\n" + lines[40][:3])
        assert len(read_checkpoint(str(ck))) == 40
        with open(ck, "w") as fh:
            fh.write("\n".join(lines[:40]) + "\n")
        resumed = scan_maxdeg(6, connected_graphs(6), checkpoint=str(ck))
        assert resumed.records == full.records
        assert len(ck.read_text().splitlines()) == 112
        assert maxdeg_csv(resumed) == maxdeg_csv(full)
        assert histogram_csv(full).splitlines()[0] == "m,graphs,counterexamples"


class TestSampling:
    def test_n5(self):
        res = random_sample_scan(5, 50, seed=1)
        assert len(res.records) == 50 and res.violations == 0
        assert all(r.n == 5 for r in res.records)
        assert "uniform" in res.metadata["scheme"] and res.metadata["seed"] == 1

    def test_deterministic(self):
        a = random_sample_scan(6, 20, seed=99)
        b = random_sample_scan(6, 20, seed=99)
        assert scan_csv(a.records) == scan_csv(b.records)
        c = random_sample_scan(6, 20, seed=100)
        assert scan_csv(a.records) != scan_csv(c.records)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            random_sample_scan(1, 5, 0)
        with pytest.raises(ValueError):
            random_sample_scan(5, 0, 0)


class TestRecords:
    def test_ratios_on_record(self):
        r = scan_record(complete_graph(6))
        assert r.r_G == Fraction(1, 6) and r.r_bar_G == 1

    def test_zero_cap_has_no_ratio(self):
        r = scan_record(cycle_graph(6))
        assert r.intersection_number == 0 and r.r_G is None and r.r_bar_G is None


class TestVerifyLemmas:
    @pytest.mark.parametrize("g", [complete_graph(4), cycle_graph(5), complete_graph(5)])
    def test_small(self, g):
        checks = verify_lemmas(g)
        assert all(c.passed for c in checks), [c for c in checks if not c.passed]
        assert {c.name for c in checks} >= {
            "bond_pairwise_intersect", "cycle_edge_every_bond", "bound_counting",
            "predecessor_along_chord", "successor_minimizers_use_new_edge",
        }

    def test_all_n5(self, connected_graphs):
        for g in connected_graphs(5):
            assert all(c.passed for c in verify_lemmas(g))

    def test_rejects_large(self):
        with pytest.raises(ValueError):
            verify_lemmas(cycle_graph(9))


class TestCocktailParty:
    def test_n8_beats_successor(self):
        assert cocktail_party_check(8) == (82, 75)

    def test_n6_does_not(self):
        # the octahedron sits below its successor, consistent with no dominant 6-vertex graph
        assert cocktail_party_check(6) == (17, 18)
