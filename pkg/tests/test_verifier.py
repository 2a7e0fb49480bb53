import dataclasses
from itertools import combinations

import pytest

from distance_games import (
    CorpusSpec,
    InvalidParameterError,
    Outcome,
    Player,
    Position,
    all_labelled_bipartite,
    check_play_for_play,
    check_vertex_condition,
    check_winnability,
    outcome,
    reduce_bgnk_to_d12,
    reduce_bgnk_window,
    reduce_snort_family,
    replays_violation,
    run_corpus,
    verify_instance,
)
from distance_games.verifier import (
    KIND_SOURCE_ONLY,
    PLAY_FOR_PLAY,
    VERTEX_CONDITION,
    WINNABILITY,
    resolve_depth_cap,
)

from helpers import build_graph

L, R = Player.LEFT, Player.RIGHT


def bgnk_edge_instance(s=frozenset()):
    g = build_graph("ab", [("a", "b")])
    return reduce_bgnk_to_d12(g, [0], [1], s=s)


def example_one_instance():
    """Bipartite path x - y - z, d = {1,2}, s = {1,2,3,4}: k = 2*max(d)."""
    g = build_graph("xyz", [("x", "y"), ("y", "z")])
    return reduce_bgnk_window(g, ["x", "z"], ["y"], d={1, 2}, k=4,
                              allow_out_of_range=True)


class TestVertexCondition:
    def test_passes_on_anchor_reduction(self):
        report = check_vertex_condition(bgnk_edge_instance())
        assert report.passed

    def test_sabotaged_instance_fails_with_vertex_named(self):
        ri = bgnk_edge_instance()
        removed = ri.target_graph.index_of("g0.R")
        broken = dataclasses.replace(
            ri,
            initial_position=Position(
                ri.initial_position.blue,
                ri.initial_position.red & ~(1 << removed),
            ),
        )
        result = check_vertex_condition(broken).checks[0]
        assert not result.passed
        assert result.vertex == "g0.v2"
        assert result.player is L
        assert replays_violation(broken, result)

    def test_degenerate_identity_passes_vacuously(self):
        g = build_graph("ab", [("a", "b")])
        ri = reduce_snort_family(g, 1)
        result = check_vertex_condition(ri).checks[0]
        assert result.passed and "checked=0" in result.detail


class TestPlayForPlay:
    def test_passes_on_anchor_reduction(self):
        assert check_play_for_play(bgnk_edge_instance()).passed

    def test_depth_cap_zero_checks_only_the_root(self):
        ri = example_one_instance()
        assert check_play_for_play(ri, depth_cap=0).passed
        assert not check_play_for_play(ri, depth_cap=1).passed

    def test_example_one_exact_trace(self):
        ri = example_one_instance()
        result = check_play_for_play(ri).checks[0]
        assert not result.passed
        assert result.trace == ((L, "x"),)
        assert result.vertex == "z"
        assert result.player is L
        assert result.kind == KIND_SOURCE_ONLY
        assert replays_violation(ri, result)

    def test_snort_family_full_depth_small_corpus(self):
        from distance_games import all_labelled_graphs

        for g in all_labelled_graphs(3):
            ri = reduce_snort_family(g, 2)
            assert check_play_for_play(ri, depth_cap=None).passed


class TestWinnability:
    def test_equal_outcomes_on_anchor_reduction(self):
        ri = bgnk_edge_instance()
        result = check_winnability(ri).checks[0]
        assert result.passed
        assert outcome(ri.source_graph, ri.source_ruleset) is Outcome.FIRST_WINS

    def test_degenerate_identity(self):
        g = build_graph("ab", [("a", "b")])
        assert check_winnability(reduce_snort_family(g, 1)).passed

    def test_example_one_winnability_recorded_either_way(self):
        # The negative example is pinned by play-for-play; here we only
        # require a definite report.
        result = check_winnability(example_one_instance()).checks[0]
        assert "source=" in result.detail and "target=" in result.detail


class TestVerifyInstance:
    def test_all_checks_present(self):
        report = verify_instance(bgnk_edge_instance(), descriptor="edge")
        assert [c.name for c in report.checks] == [
            VERTEX_CONDITION, PLAY_FOR_PLAY, WINNABILITY,
        ]
        assert report.passed

    def test_depth_cap_auto(self):
        ri = bgnk_edge_instance()
        assert resolve_depth_cap(ri, "auto") is None
        g = build_graph("abcdefg", [("a", "b")])
        ri7 = reduce_snort_family(g, 2)
        assert resolve_depth_cap(ri7, "auto") == 6
        assert resolve_depth_cap(ri7, None) is None
        assert resolve_depth_cap(ri7, 3) == 3


class TestCorpus:
    def test_empty_corpus(self):
        report = run_corpus("snort-family", CorpusSpec(), {"n": [2]})
        assert report.records == () and report.passed

    def test_unknown_reduction(self):
        with pytest.raises(InvalidParameterError):
            run_corpus("nope", CorpusSpec(exhaustive_max=2))

    def test_random_without_seed(self):
        with pytest.raises(InvalidParameterError):
            run_corpus(
                "snort-family",
                CorpusSpec(random_count=2, random_size=4, random_edge_prob=0.5),
                {"n": [2]},
            )

    def test_snort_family_small_exhaustive(self):
        report = run_corpus(
            "snort-family", CorpusSpec(exhaustive_max=3),
            {"n": [2], "s": [frozenset()]},
        )
        assert report.passed
        assert len(report.records) == 12  # 1 + 1 + 2 + 8 labelled graphs
        assert report.lines()[-1].startswith("summary status=PASS total=12")

    def test_out_of_range_window_failures_exactly_where_predicted(self):
        # With k = 2n, an instance must fail exactly when two same-side
        # vertices share a neighbour (they end up 2n = k apart).
        report = run_corpus(
            "bgnk-window", CorpusSpec(exhaustive_max=4),
            {"d": [frozenset({1, 2})], "k": [4], "allow_out_of_range": [True]},
        )
        graphs = []
        for p in range(3):
            for q in range(3):
                graphs.extend(all_labelled_bipartite(p, q))
        assert len(graphs) == len(report.records)
        for record, (g, (left, right)) in zip(report.records, graphs):
            shares = False
            for side in (left, right):
                for u, v in combinations(sorted(side), 2):
                    if set(g.neighbors(u)) & set(g.neighbors(v)):
                        shares = True
            failed_names = [c.name for c in record.report.failed_checks()]
            assert (PLAY_FOR_PLAY in failed_names) == shares, record.descriptor
            assert VERTEX_CONDITION not in failed_names
        assert not report.passed
        assert report.first_failures()

    def test_jobs_give_identical_reports(self):
        spec = CorpusSpec(exhaustive_max=2, random_count=3, random_size=4,
                          random_edge_prob=0.5, seed=11)
        one = run_corpus("col-family", spec, {"k": [2]}, jobs=1)
        two = run_corpus("col-family", spec, {"k": [2]}, jobs=2)
        assert one.lines() == two.lines()

    def test_corpus_spec_parse(self):
        assert CorpusSpec.parse("exhaustive:4") == CorpusSpec(exhaustive_max=4)
        assert CorpusSpec.parse("random:30:7:0.4:9") == CorpusSpec(
            random_count=30, random_size=7, random_edge_prob=0.4, seed=9
        )
        with pytest.raises(InvalidParameterError):
            CorpusSpec.parse("everything")
