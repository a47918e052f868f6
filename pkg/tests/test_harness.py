"""Experiment records: schema, determinism, replay, and failure validation."""

import dataclasses
import itertools
import json

import pytest

from exfree import (
    ExperimentRecord,
    Graph,
    Pattern,
    append_record,
    compare_prediction,
    complete,
    cycle,
    empty,
    load_records,
    replay,
    threshold_scan,
    validate_failure,
    verify_dichotomy,
    verify_extremal_colorable,
    verify_near_colorable,
)
from exfree.solver import DEFAULT_BUDGETS

K2 = Pattern.clique(2)
TRIANGLE = complete(3)


def tamper(record: ExperimentRecord, mutate) -> ExperimentRecord:
    blob = json.loads(record.to_json_line())
    mutate(blob)
    return ExperimentRecord.from_json_line(json.dumps(blob))


def test_record_round_trips_bit_exact():
    rec = verify_extremal_colorable(complete(4), TRIANGLE, K2, 3)
    line = rec.to_json_line()
    again = ExperimentRecord.from_json_line(line)
    assert again == rec
    assert again.to_json_line() == line
    # canonical serialization: keys sorted, no whitespace padding
    assert ": " not in line and ", " not in line
    assert json.loads(line) == json.loads(line)


def test_append_and_load_records(tmp_path):
    path = str(tmp_path / "runs.jsonl")
    first = verify_extremal_colorable(complete(4), TRIANGLE, K2, 3)
    second = verify_near_colorable(complete(5), TRIANGLE, K2, 3)
    append_record(path, first)
    append_record(path, second)
    loaded = load_records(path)
    assert loaded == [first, second]


def test_experiment_ids_stable_and_spec_sensitive():
    a = verify_extremal_colorable(complete(5), TRIANGLE, K2, 3)
    b = verify_extremal_colorable(complete(5), TRIANGLE, K2, 3)
    c = verify_extremal_colorable(complete(6), TRIANGLE, K2, 3)
    assert a.experiment_id == b.experiment_id
    assert a.experiment_id != c.experiment_id
    assert len(a.experiment_id) == 16


def test_extremal_colorable_holds_on_complete_host():
    rec = verify_extremal_colorable(complete(6), TRIANGLE, K2, 3)
    assert rec.verdicts == {
        "witness-colorable": "holds",
        "all-optima-colorable": "holds",
    }
    solve = rec.results["solve"]
    assert solve["optimum"] == 9
    assert solve["num_optima"] == 10
    assert rec.results["chi_forbidden"] == 3
    assert rec.results["chi_matches_k"] is True
    assert rec.results["forbidden_edge_critical"] is True
    assert rec.results["rebuild_count"] == 9


def test_extremal_colorable_near_complete_host():
    edges = [
        e for e in itertools.combinations(range(5), 2) if e not in ((0, 1), (2, 3))
    ]
    g = Graph.from_edges(5, edges)
    rec = verify_extremal_colorable(g, TRIANGLE, K2, 3)
    assert rec.verdicts["witness-colorable"] == "holds"
    assert rec.results["solve"]["optimum"] == 6


def test_extremal_colorable_fails_outside_degree_hypothesis():
    rec = verify_extremal_colorable(cycle(5), TRIANGLE, K2, 3, eps="1/10")
    assert rec.verdicts["witness-colorable"] == "fails"
    assert rec.results["hypothesis_met"] is False
    solve = rec.results["solve"]
    assert solve["optimum"] == 5  # all of C_5 is triangle-free
    assert solve["counterexample"]["graph6"] == "Dhc"
    assert solve["counterexample"]["colors_refuted"] == 2


def test_validate_failure_accepts_genuine_and_detects_tampering():
    rec = verify_extremal_colorable(cycle(5), TRIANGLE, K2, 3)
    ok, messages = validate_failure(rec)
    assert ok
    assert messages == ["solve: validated"]

    def bump_count(blob):
        blob["results"]["solve"]["counterexample"]["count"] = 99

    ok2, messages2 = validate_failure(tamper(rec, bump_count))
    assert not ok2
    assert any("count mismatch" in m for m in messages2)

    def add_triangle(blob):
        blob["results"]["solve"]["counterexample"]["edges"] = [
            [0, 1], [1, 2], [0, 2]
        ]

    ok3, _ = validate_failure(tamper(rec, add_triangle))
    assert not ok3


def test_near_colorable_zero_deletions_for_bipartite_witness():
    rec = verify_near_colorable(complete(6), TRIANGLE, K2, 3)
    assert rec.verdicts == {
        "deletion-distance": "holds",
        "within-edge-bound": "holds",
    }
    assert rec.results["deletions"] == 0
    assert rec.results["deletion_ratio_to_n2"] == "0"
    assert rec.results["partite_exact"] is True


def test_near_colorable_with_noncomplete_forbidden_graph():
    pendant = Graph.from_edges(
        5, list(itertools.combinations(range(4), 2)) + [(0, 4)]
    )
    rec = verify_near_colorable(complete(6), pendant, K2, 4)
    assert rec.verdicts["deletion-distance"] == "holds"
    assert rec.results["deletions"] == 0


def test_compare_prediction_table():
    rec = compare_prediction(range(4, 9), 3, 2, 1, TRIANGLE)
    assert rec.verdicts == {"table-complete": "holds"}
    rows = rec.results["rows"]
    assert [row["exact"] for row in rows] == [4, 6, 9, 12, 16]
    assert [row["prediction"] for row in rows] == ["4", "25/4", "9", "49/4", "16"]
    assert [row["ratio"] for row in rows] == ["1", "24/25", "1", "48/49", "1"]
    assert all(row["status"] == "ok" for row in rows)


def test_compare_prediction_degrades_to_unknown_past_budget():
    tiny = dataclasses.replace(
        DEFAULT_BUDGETS, exhaustive_edges=3, bnb_edges=3, ties_edges=0
    )
    rec = compare_prediction([4, 5], 3, 2, 1, TRIANGLE, budgets=tiny)
    assert rec.verdicts == {"table-complete": "unknown"}
    assert [row["status"] for row in rec.results["rows"]] == ["unknown", "unknown"]


def test_threshold_scan_counts_and_validates_failures():
    rec = threshold_scan(TRIANGLE, K2, 3, 5, [0], trials=8, seed=0)
    assert rec.verdicts == {"completed": "holds"}
    row = rec.results["fractions"][0]
    assert (row["passing"], row["failing"], row["unknown"]) == (7, 1, 0)
    assert row["rate"] == "7/8"
    bad = [t for t in row["trials"] if t["verdict"] == "fails"]
    assert len(bad) == 1
    assert bad[0]["graph6"] == "DtS"
    assert bad[0]["optimum"] == 5
    assert bad[0]["counterexample"]["colors_refuted"] == 2
    ok, messages = validate_failure(rec)
    assert ok
    assert messages == ["fraction 0 trial 6: validated"]


def test_threshold_scan_rejects_bad_fractions():
    with pytest.raises(ValueError):
        threshold_scan(TRIANGLE, K2, 3, 5, ["3/2"], trials=2, seed=0)
    with pytest.raises(ValueError):
        threshold_scan(TRIANGLE, K2, 3, 5, [0], trials=0, seed=0)


def test_replay_is_thread_count_invariant():
    rec = threshold_scan(TRIANGLE, K2, 3, 5, [0, "1/2"], trials=6, seed=11)
    for threads in (1, 8):
        ok, fresh = replay(rec, threads=threads)
        assert ok
        assert fresh.comparable() == rec.comparable()


def test_replay_covers_every_record_kind():
    records = [
        verify_extremal_colorable(complete(5), TRIANGLE, K2, 3),
        verify_near_colorable(complete(5), TRIANGLE, K2, 3),
        compare_prediction([4, 5], 3, 2, 1, TRIANGLE),
        threshold_scan(TRIANGLE, K2, 3, 4, [0], trials=3, seed=2),
        verify_dichotomy(complete(5), 3, K2, "9/10"),
    ]
    for rec in records:
        ok, fresh = replay(rec)
        assert ok, rec.kind
        assert fresh.experiment_id == rec.experiment_id


def test_replay_detects_divergence():
    rec = verify_extremal_colorable(complete(5), TRIANGLE, K2, 3)

    def lie_about_optimum(blob):
        blob["results"]["solve"]["optimum"] = 7

    ok, _ = replay(tamper(rec, lie_about_optimum))
    assert not ok


def test_dichotomy_frontier_on_complete_host():
    rec = verify_dichotomy(complete(6), 3, K2, "9/10")
    assert rec.verdicts == {"frontier-complete": "holds"}
    assert rec.results["maximal_subgraphs"] == 211
    assert rec.results["optimum"] == 9
    frontier = rec.results["frontier"]
    assert len(frontier) == 211
    extremal = [row for row in frontier if row["ratio"] == "1"]
    # ten labeled copies of the optimal balanced bipartite subgraph, each
    # already bipartite: zero deletions to reach k-1 parts
    assert len(extremal) == 10
    assert all(row["deletion_distance"] == 0 for row in extremal)
    assert all(not row["count_within_gamma"] for row in extremal)
    near_misses = [
        row for row in frontier
        if not row["count_within_gamma"] and row["ratio"] != "1"
    ]
    for row in near_misses:
        assert row["deletion_distance"] <= 2


def test_dichotomy_handles_edgeless_host():
    rec = verify_dichotomy(empty(3), 3, K2, "1/2")
    assert rec.verdicts == {"frontier-complete": "holds"}
    assert rec.results["maximal_subgraphs"] == 1
    row = rec.results["frontier"][0]
    assert row["count"] == 0
    assert row["ratio"] is None
    assert row["count_within_gamma"] is True


def test_timings_excluded_from_comparable():
    rec = verify_extremal_colorable(complete(4), TRIANGLE, K2, 3)

    def slow_it_down(blob):
        blob["timings"]["total_s"] = 1e9

    slowed = tamper(rec, slow_it_down)
    assert slowed.comparable() == rec.comparable()
    assert slowed.to_json_line() != rec.to_json_line()
