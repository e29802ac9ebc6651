import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import default_run
from uxagent.trace import (
    CSV_HEADER,
    AffectEnvelope,
    EnvelopeWindow,
    RunResult,
    TraceBuilder,
    TraceError,
    TraceRecord,
    evaluate_envelope,
    parse_csv,
    quadrant_occupancy,
    read_json,
    read_trace,
    run_from_dict,
    trace_to_csv,
    trace_to_json,
    write_csv,
    write_json,
)


def rec(tick: int, v: float = 0.0, a: float = 0.0, events=()) -> TraceRecord:
    return TraceRecord(tick, round(tick * 0.1, 9), (tick % 3, 1), v, a, tuple(events))


def small_run() -> RunResult:
    b = TraceBuilder(seed=9, map_id="toy", config={"tick_s": 0.1})
    b.record_tick(rec(0))
    b.record_tick(rec(1, -0.4, 1.0, ["new_interactable:b2", "press_no_effect:b3"]))
    b.record_tick(rec(2, 0.6, 1.0, ["door_opened:d1", "goal_found"]))
    return b.finish("GoalFound")


def test_builder_contiguity():
    b = TraceBuilder()
    b.record_tick(rec(0)).record_tick(rec(1))
    assert len(b.records) == 2
    with pytest.raises(TraceError):
        TraceBuilder().record_tick(rec(0)).record_tick(rec(2))


def test_outcome_must_agree_with_goal_tag():
    b = TraceBuilder().record_tick(rec(0))
    with pytest.raises(TraceError):
        b.finish("GoalFound")
    assert b.finish("Exhausted").outcome == "Exhausted"


def test_quadrants_constant():
    q = quadrant_occupancy([rec(i, 1, 1) for i in range(5)])
    assert q == {"pp": 1.0, "pm": 0.0, "mp": 0.0, "mm": 0.0}


def test_quadrants_alternating():
    q = quadrant_occupancy([rec(i, *((-1, -1) if i % 2 else (1, 1))) for i in range(10)])
    assert q["pp"] == q["mm"] == 0.5


def test_zero_counts_as_non_negative():
    assert quadrant_occupancy([rec(0, 0.0, 0.0)])["pp"] == 1.0


def test_quadrants_of_empty_trace():
    with pytest.raises(TraceError):
        quadrant_occupancy([])


@pytest.mark.parametrize("map_id", ["M1", "M2", "M3", "M4"])
def test_quadrants_sum_to_one(map_id):
    assert abs(sum(quadrant_occupancy(default_run(map_id).trace).values()) - 1) < 1e-9


def test_vacuous_envelope_passes():
    run = default_run("M1")
    assert evaluate_envelope(run.trace, AffectEnvelope.vacuous()).passed


def test_envelope_lists_every_violating_tick():
    trace = [rec(i, -1.0) for i in range(4)]
    env = AffectEnvelope((EnvelopeWindow(0, math.inf, 0, 5, -5, 5),))
    result = evaluate_envelope(trace, env)
    assert not result.passed
    assert result.violations == tuple((i, "v_min") for i in range(4))


def test_window_edges_are_inclusive():
    trace = [rec(i, -1.0) for i in range(11)]
    env = AffectEnvelope((EnvelopeWindow(0.5, 1.0, 0, 5, -5, 5),))
    assert [t for t, _ in evaluate_envelope(trace, env).violations] == [5, 6, 7, 8, 9, 10]


def test_inverted_window_rejected():
    with pytest.raises(ValueError):
        EnvelopeWindow(0, 1, 2, 1, -5, 5)
    with pytest.raises(ValueError):
        EnvelopeWindow(3, 1, -5, 5, -5, 5)


def test_envelope_range_check():
    env = AffectEnvelope((EnvelopeWindow(0, 1, -6, 5, -5, 5),))
    with pytest.raises(ValueError):
        env.check_range(-5, 5)


def test_envelope_json_round_trip():
    env = AffectEnvelope(
        (EnvelopeWindow(0, 10, -1, 5, -5, 5), EnvelopeWindow(10, math.inf, 0, 5, 0, 5))
    )
    text = env.to_json()
    assert json.loads(text)[1]["to_s"] == "end"
    assert AffectEnvelope.from_json(text) == env


bound = st.floats(-5, 5, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.tuples(bound, bound), min_size=1, max_size=30),
    st.tuples(bound, bound, bound, bound),
    st.tuples(*[st.floats(0, 3)] * 4),
)
def test_loosening_never_breaks_a_pass(points, box, slack):
    trace = [rec(i, v, a) for i, (v, a) in enumerate(points)]
    v_lo, v_hi = sorted(box[:2])
    a_lo, a_hi = sorted(box[2:])
    tight = AffectEnvelope((EnvelopeWindow(0, math.inf, v_lo, v_hi, a_lo, a_hi),))
    loose = AffectEnvelope(
        (EnvelopeWindow(0, math.inf, v_lo - slack[0], v_hi + slack[1], a_lo - slack[2], a_hi + slack[3]),)
    )
    t, lo = evaluate_envelope(trace, tight), evaluate_envelope(trace, loose)
    if t.passed:
        assert lo.passed
    assert set(lo.violations) <= set(t.violations)


def test_csv_shape():
    text = trace_to_csv(small_run())
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 4
    assert lines[2].endswith("new_interactable:b2;press_no_effect:b3")


def test_csv_round_trip():
    run = small_run()
    assert tuple(parse_csv(trace_to_csv(run))) == run.trace


@pytest.mark.parametrize("map_id", ["M2", "M4"])
def test_csv_round_trip_on_real_runs(map_id):
    run = default_run(map_id)
    assert tuple(parse_csv(trace_to_csv(run))) == run.trace


def test_json_round_trip(tmp_path):
    run = small_run()
    write_json(run, str(tmp_path / "r.json"))
    back = read_json(str(tmp_path / "r.json"))
    assert back == run
    data = json.loads(trace_to_json(run))
    assert data["meta"]["seed"] == 9
    assert data["meta"]["outcome"] == "GoalFound"
    assert run_from_dict(data) == run


def test_read_trace_from_csv(tmp_path):
    run = small_run()
    path = tmp_path / "r.csv"
    write_csv(run, str(path))
    back = read_trace(str(path))
    assert back.trace == run.trace
    assert back.outcome == "GoalFound"


def test_shortest_float_formatting():
    run = default_run("M1")
    body = trace_to_csv(run)
    assert "0.30000000000000004" not in body
    assert ",-0.4," in body


def test_time_is_tick_times_tick_length():
    for r in default_run("M3").trace:
        assert r.time_s == round(r.tick * 0.1, 9)
