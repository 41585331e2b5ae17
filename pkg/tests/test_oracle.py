from __future__ import annotations

import pytest
from hypothesis import given, settings

from subgrad import (
    GraphError,
    OracleMapping,
    RandomGraphSpec,
    SizeLimitError,
    compare_matcher_oracle,
    enumerate_subgraph_isomorphisms,
    parse_edge_list,
    random_digraph,
)
from subgrad.oracle import run_self_test

import expected
from strategies import graphs


class TestBruteForce:
    @pytest.mark.parametrize("name", list(expected.TOTALS))
    def test_demo_counts(self, name, demo_queries, demo_source):
        found = enumerate_subgraph_isomorphisms(demo_queries[name], demo_source)
        assert len(found) == expected.TOTALS[name]

    def test_two_cycle_absent(self, demo_source):
        q = parse_edge_list("a b\nb a\n")
        assert enumerate_subgraph_isomorphisms(q, demo_source) == frozenset()

    def test_cycle_count_is_rotations_times_symmetry(self, cycle3_query):
        # A cycle mapped onto itself: one mapping per rotation.
        found = enumerate_subgraph_isomorphisms(cycle3_query, cycle3_query)
        assert len(found) == 3

    def test_single_edge_count_skips_self_loops(self):
        src = parse_edge_list("x x\nx y\ny x\n")
        q = parse_edge_list("a b\n")
        assert len(enumerate_subgraph_isomorphisms(q, src)) == 2

    def test_extra_source_edges_allowed(self):
        # Non-induced semantics: the path embeds although "1 3" also exists.
        src = parse_edge_list("1 2\n2 3\n1 3\n")
        q = parse_edge_list("a b\nb c\n")
        found = enumerate_subgraph_isomorphisms(q, src)
        assert OracleMapping.from_dict({"a": "1", "b": "2", "c": "3"}) in found

    def test_size_limit(self):
        src = random_digraph(RandomGraphSpec(13, 0.2, 1))
        q = parse_edge_list("a b\n")
        with pytest.raises(SizeLimitError):
            enumerate_subgraph_isomorphisms(q, src)
        assert enumerate_subgraph_isomorphisms(q, src, max_source_nodes=13)

    @given(graphs(min_nodes=2, max_nodes=6, self_loops=True))
    @settings(max_examples=60)
    def test_single_edge_count_is_loop_free_edge_count(self, source):
        q = parse_edge_list("a b\n")
        found = enumerate_subgraph_isomorphisms(q, source)
        loop_free = [e for e in source.edges if e[0] != e[1]]
        assert len(found) == len(loop_free)


class TestRandomDigraph:
    def test_deterministic(self):
        spec = RandomGraphSpec(9, 0.35, 77)
        assert random_digraph(spec) == random_digraph(spec)

    def test_different_seeds_differ(self):
        a = random_digraph(RandomGraphSpec(9, 0.35, 1))
        b = random_digraph(RandomGraphSpec(9, 0.35, 2))
        assert a != b

    def test_probability_zero(self):
        assert random_digraph(RandomGraphSpec(5, 0.0, 7)).edges == frozenset()

    def test_probability_one_is_complete(self):
        g = random_digraph(RandomGraphSpec(4, 1.0, 7))
        assert len(g.edges) == 12

    def test_no_self_loops(self):
        g = random_digraph(RandomGraphSpec(12, 0.5, 3))
        assert g.self_loop_nodes() == ()

    def test_labels(self):
        g = random_digraph(RandomGraphSpec(3, 0.0, 0))
        assert g.nodes == ("1", "2", "3")

    def test_mean_edge_count(self):
        # n=6, p=0.3: 30 candidate pairs, expected 9 edges per graph.
        total = sum(
            len(random_digraph(RandomGraphSpec(6, 0.3, seed)).edges)
            for seed in range(1000)
        )
        mean = total / 1000
        # var = 30 * 0.3 * 0.7 = 6.3; 3 standard errors of the sample mean.
        assert abs(mean - 9.0) <= 3 * (6.3 / 1000) ** 0.5

    def test_spec_validation(self):
        with pytest.raises(GraphError):
            RandomGraphSpec(0, 0.5, 1)
        with pytest.raises(GraphError):
            RandomGraphSpec(3, 1.5, 1)
        with pytest.raises(GraphError):
            RandomGraphSpec(3, 0.5, -1)
        with pytest.raises(GraphError):
            RandomGraphSpec(3, 0.5, 2**64)


class TestComparison:
    def test_demo_pairs_pass(self, demo_queries, demo_source):
        for name, q in demo_queries.items():
            report = compare_matcher_oracle(q, demo_source)
            assert report.passed
            assert len(report.matcher_mappings) == expected.TOTALS[name]
            assert len(report.oracle_mappings) == expected.TOTALS[name]

    def test_absence_agrees(self, demo_source):
        report = compare_matcher_oracle(parse_edge_list("a b\nb a\n"), demo_source)
        assert report.passed
        assert report.matcher_mappings == frozenset()

    def test_report_difference_properties(self):
        a = OracleMapping.from_dict({"a": "1", "b": "2"})
        b = OracleMapping.from_dict({"a": "2", "b": "1"})
        from subgrad import ComparisonReport

        report = ComparisonReport(frozenset({a}), frozenset({a, b}))
        assert report.missing == frozenset({b})
        assert report.extra == frozenset()
        assert not report.passed

    def test_self_test_passes(self):
        result = run_self_test(seed=7, instances=40)
        assert result.passed
        assert result.instances == 40

    def test_self_test_deterministic(self):
        assert run_self_test(3, 10) == run_self_test(3, 10)


class TestOracleMapping:
    def test_normalized_and_printable(self):
        m = OracleMapping.from_dict({"b": "2", "a": "1"})
        assert m.pairs == (("a", "1"), ("b", "2"))
        assert m.as_dict() == {"a": "1", "b": "2"}
        assert str(m) == "{a->1, b->2}"
