import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import level_from_grid
from uxagent.engine import visible_cells
from uxagent.level import (
    BUILTIN_IDS,
    Cell,
    GameObject,
    Level,
    LevelError,
    LevelSyntaxError,
    ObjectKind,
    builtin,
    builtin_text,
    load_level,
    parse_level,
    reachable_cells,
    serialize_level,
    validate,
)
from uxagent.simulation import goal_doors

MINIMAL = "labrecruits-level v1\n...\n.S.\n...\n"


def test_minimal_level():
    level = parse_level(MINIMAL)
    assert (level.width, level.height) == (3, 3)
    assert level.spawn == (1, 1)
    assert level.objects == ()
    assert all(c is Cell.FLOOR for row in level.cells for c in row)


def test_link_to_unknown_door():
    text = "labrecruits-level v1\nSb.\nbutton b1 1 0\nlink b1 -> d9\n"
    with pytest.raises(LevelError, match="link to unknown door"):
        parse_level(text)


def test_link_from_unknown_button():
    text = "labrecruits-level v1\nSD.\ndoor d1 1 0\nlink b7 -> d1\n"
    with pytest.raises(LevelError, match="link from unknown button"):
        parse_level(text)


def test_duplicate_id():
    text = "labrecruits-level v1\nSbb\nbutton b1 1 0\nbutton b1 2 0\n"
    with pytest.raises(LevelError, match="duplicate object id"):
        parse_level(text)


def test_object_on_wall():
    text = "labrecruits-level v1\nS#.\nbutton b1 1 0\n"
    with pytest.raises(LevelError, match="wall"):
        parse_level(text)


def test_syntax_error_reports_position():
    text = "labrecruits-level v1\nS..\n.x.\n"
    with pytest.raises(LevelSyntaxError) as info:
        parse_level(text)
    assert info.value.line == 3
    assert info.value.column == 2


def test_bad_header():
    with pytest.raises(LevelSyntaxError):
        parse_level("not a level\nS\n")


def test_ragged_grid():
    with pytest.raises(LevelSyntaxError, match="width"):
        parse_level("labrecruits-level v1\nS..\n..\n")


def test_spawn_count():
    with pytest.raises(LevelSyntaxError, match="spawn"):
        parse_level("labrecruits-level v1\nS.S\n")


def test_object_must_match_grid_marker():
    with pytest.raises(LevelError, match="does not match"):
        parse_level("labrecruits-level v1\nS..\ndoor d1 1 0\n")


def test_comments_anywhere_after_header():
    text = (
        "labrecruits-level v1\n# a comment\n###\n#S#\n# another one\n###\n"
        "# objects follow\n"
    )
    level = parse_level(text)
    assert (level.width, level.height) == (3, 3)
    assert level.cell((0, 0)) is Cell.WALL


def test_wall_row_is_not_a_comment():
    level = parse_level("labrecruits-level v1\n#####\n#.S.#\n#####\n")
    assert level.height == 3


def test_validate_enclosed_goal():
    level = level_from_grid(["S.#.", "..#G", "..#."])
    assert validate(level) == ["goal unreachable"]


def test_validate_multiple_goals():
    text = "labrecruits-level v1\nSGG\ngoal g1 1 0\ngoal g2 2 0\n"
    assert validate(parse_level(text)) == ["multiple goals"]


def test_goal_behind_door_is_reachable():
    level = level_from_grid(["S.b", "##d", "G.."], links={})
    # the door is assumed openable even without a button
    assert validate(level) == []


def test_validate_direct_construction_problems():
    cells = ((Cell.FLOOR, Cell.WALL),)
    level = Level(2, 1, cells, (0, 0), (GameObject("b", ObjectKind.BUTTON, (1, 0)),), {"b": "nope"})
    problems = validate(level)
    assert any("wall" in p for p in problems)
    assert any("unknown door" in p for p in problems)


@pytest.mark.parametrize("map_id", BUILTIN_IDS)
def test_builtins_validate(map_id):
    assert validate(builtin(map_id)) == []


def test_builtin_object_counts():
    def counts(level):
        decoys = sum(1 for b in level.buttons if not b.linked)
        return len(level.doors), len(level.buttons) - decoys, decoys, len(level.goals)

    assert counts(builtin("M1")) == (1, 1, 0, 1)
    assert counts(builtin("M2")) == (1, 1, 6, 1)
    assert counts(builtin("M3")) == (4, 4, 2, 1)
    assert counts(builtin("M4")) == (28, 28, 0, 1)


def test_m1_and_m2_share_their_grid():
    m1, m2 = builtin("M1"), builtin("M2")
    assert m1.cells == m2.cells
    assert m1.spawn == m2.spawn
    assert set(m1.objects) <= set(m2.objects)


def test_m4_goal_hidden_while_its_door_is_closed():
    level = builtin("M4")
    goal = level.goal.position
    (gdoor,) = goal_doors(level)
    door_pos = level.objects_by_id[gdoor].position
    alcove = reachable_cells(level, goal, blocked=[door_pos])
    others_open = {d.id: d.id != gdoor for d in level.doors}
    radius = level.width + level.height
    for cell in level.floor_cells():
        if cell in alcove or cell == door_pos:
            continue
        assert goal not in visible_cells(level, others_open, cell, radius), cell


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin("M9")


def test_load_level_accepts_path_and_id(tmp_path):
    path = tmp_path / "m3.level"
    path.write_text(builtin_text("M3"), encoding="utf-8")
    assert load_level(str(path)) == load_level("M3")


@pytest.mark.parametrize("map_id", BUILTIN_IDS)
def test_builtin_round_trip(map_id):
    level = builtin(map_id)
    assert parse_level(serialize_level(level, comments=["round trip"])) == level


@st.composite
def levels(draw):
    w = draw(st.integers(1, 9))
    h = draw(st.integers(1, 9))
    coords = [(x, y) for y in range(h) for x in range(w)]
    walls = draw(st.sets(st.sampled_from(coords), max_size=len(coords) - 1))
    free = [c for c in coords if c not in walls]
    spawn = draw(st.sampled_from(free))
    free.remove(spawn)
    placed = draw(st.lists(st.sampled_from(free), unique=True, max_size=len(free))) if free else []
    kinds = draw(st.lists(st.sampled_from(list(ObjectKind)), min_size=len(placed), max_size=len(placed)))
    objects = [GameObject(f"{k.value[0]}{i}", k, p) for i, (k, p) in enumerate(zip(kinds, placed))]
    doors = [o.id for o in objects if o.kind is ObjectKind.DOOR]
    buttons = [o.id for o in objects if o.kind is ObjectKind.BUTTON]
    n = draw(st.integers(0, min(len(doors), len(buttons))))
    links = dict(zip(buttons[:n], doors[:n]))
    objects = [
        GameObject(o.id, o.kind, o.position, o.id in links) if o.kind is ObjectKind.BUTTON else o
        for o in objects
    ]
    cells = tuple(tuple(Cell.WALL if (x, y) in walls else Cell.FLOOR for x in range(w)) for y in range(h))
    return Level(w, h, cells, spawn, tuple(objects), links)


@settings(max_examples=150, deadline=None)
@given(levels())
def test_serialize_parse_round_trip(level):
    assert parse_level(serialize_level(level)) == level
