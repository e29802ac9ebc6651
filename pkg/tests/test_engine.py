import random

import pytest

from _support import fov_oracle, level_from_grid, random_level
from uxagent.engine import (
    EventKind,
    IllegalAction,
    KnownCell,
    Move,
    Press,
    Wait,
    initial_state,
    line_offsets,
    perceive,
    step,
    visible_cells,
)
from uxagent.level import builtin


def test_open_room_sees_everything():
    level = level_from_grid([".....", ".....", "..S..", ".....", "....."])
    assert visible_cells(level, {}, (2, 2), 10) == {(x, y) for x in range(5) for y in range(5)}


def test_wall_occludes_but_is_seen():
    level = level_from_grid(["....", ".S#.", "...."])
    seen = visible_cells(level, {}, (1, 1), 5)
    assert (2, 1) in seen
    assert (3, 1) not in seen


def test_closed_door_occludes_open_door_does_not():
    level = level_from_grid(["S.d.."])
    assert (4, 0) not in visible_cells(level, {"d1": False}, (0, 0), 6)
    assert (4, 0) in visible_cells(level, {"d1": True}, (0, 0), 6)
    assert (2, 0) in visible_cells(level, {"d1": False}, (0, 0), 6)


def test_radius_is_euclidean():
    level = level_from_grid(["S" + "." * 8] + ["." * 9] * 8)
    seen = visible_cells(level, {}, (4, 4), 3)
    assert (7, 4) in seen
    assert (7, 5) not in seen  # 3^2 + 1^2 > 9
    assert (6, 6) in seen  # 2^2 + 2^2 <= 9


def test_line_offsets_are_symmetric_under_reflection():
    for dx in range(-6, 7):
        for dy in range(-6, 7):
            line = line_offsets(dx, dy)
            assert line[0] == (0, 0) and line[-1] == (dx, dy)
            assert line_offsets(-dx, dy) == [(-x, y) for x, y in line]
            assert line_offsets(dx, -dy) == [(x, -y) for x, y in line]


def test_fov_matches_oracle_on_random_levels():
    rng = random.Random(5)
    for _ in range(10):
        level = random_level(rng, 12, 12, wall_p=0.25, doors=4)
        door_open = {d.id: rng.random() < 0.5 for d in level.doors}
        origin = level.spawn
        for radius in (1, 3, 6):
            assert visible_cells(level, door_open, origin, radius) == fov_oracle(level, door_open, origin, radius)


def test_perceive_reports_door_state_and_links():
    level = level_from_grid(["Sbd."], links={"b1": "d1"})
    state = initial_state(level)
    p = perceive(state, 6)
    assert p.cells[(2, 0)] is KnownCell.CLOSED_DOOR
    assert (3, 0) not in p.cells
    button = next(s for s in p.objects if s.id == "b1")
    assert button.door == "d1"


# ---------------------------------------------------------------------------
# dynamics


def corridor():
    return level_from_grid(["Sbd.G", ".c..."], links={"b1": "d1"})


def test_move_takes_five_ticks():
    state = initial_state(corridor())
    for _ in range(4):
        state, events = step(state, Move((0, 1)))
        assert state.agent_pos == (0, 0)
        assert events == []
    state, _ = step(state, Move((0, 1)))
    assert state.agent_pos == (0, 1)
    assert state.tick == 5
    assert state.clock_s == 0.5


def test_interrupted_move_restarts():
    state = initial_state(corridor())
    state, _ = step(state, Move((0, 1)))
    state, _ = step(state, Wait())
    for _ in range(4):
        state, _ = step(state, Move((0, 1)))
    assert state.agent_pos == (0, 0)


def test_press_opens_linked_door():
    state = initial_state(corridor())
    state, events = step(state, Press("b1"))
    assert state.door_open["d1"]
    assert [(e.kind, e.ref) for e in events] == [(EventKind.DOOR_OPENED, "d1")]
    state, events = step(state, Press("b1"))
    assert events == []


def test_press_decoy_changes_nothing_but_pressed():
    level = corridor()
    state = initial_state(level)
    for _ in range(5):
        state, _ = step(state, Move((0, 1)))
    before = state
    state, events = step(state, Press("b2"))
    assert [(e.kind, e.ref) for e in events] == [(EventKind.PRESS_NO_EFFECT, "b2")]
    assert state.door_open == before.door_open
    assert state.pressed == {"b2"}


def test_illegal_actions():
    state = initial_state(corridor())
    with pytest.raises(IllegalAction):
        step(state, Move((2, 0)))  # not adjacent
    with pytest.raises(IllegalAction):
        step(state, Press("b2"))  # out of reach
    with pytest.raises(IllegalAction):
        step(state, Press("d1"))  # not a button
    walled = level_from_grid(["S#"])
    with pytest.raises(IllegalAction):
        step(initial_state(walled), Move((1, 0)))


def test_closed_door_blocks_movement():
    level = level_from_grid(["Sd."])
    with pytest.raises(IllegalAction):
        step(initial_state(level), Move((1, 0)))


def test_reaching_goal_finishes():
    level = level_from_grid(["SG"])
    state = initial_state(level)
    for _ in range(5):
        state, events = step(state, Move((1, 0)))
    assert state.finished
    assert [e.kind for e in events] == [EventKind.GOAL_FOUND]
    with pytest.raises(IllegalAction):
        step(state, Wait())


def test_clock_has_no_drift():
    state = initial_state(builtin("M1"))
    for _ in range(1000):
        state, _ = step(state, Wait())
    assert state.clock_s == 100.0
