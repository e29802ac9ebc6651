"""Ground-truth world dynamics: clock, movement, buttons/doors and field of view."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Mapping, Union

from .level import Cell, Coord, GameObject, Level, ObjectKind

_TIME_DIGITS = 9


class EventKind(enum.Enum):
    DOOR_OPENED = "door_opened"
    GOAL_FOUND = "goal_found"
    NEW_INTERACTABLE = "new_interactable"
    PRESS_NO_EFFECT = "press_no_effect"


@dataclass(frozen=True)
class SimEvent:
    kind: EventKind
    at_s: float
    at_pos: Coord
    ref: str | None = None

    @property
    def tag(self) -> str:
        return self.kind.value if self.ref is None else f"{self.kind.value}:{self.ref}"


@dataclass(frozen=True)
class Move:
    target: Coord


@dataclass(frozen=True)
class Press:
    button: str


@dataclass(frozen=True)
class Wait:
    pass


AgentAction = Union[Move, Press, Wait]


class IllegalAction(RuntimeError):
    pass


class KnownCell(enum.Enum):
    FLOOR = "floor"
    WALL = "wall"
    CLOSED_DOOR = "closed_door"
    OPEN_DOOR = "open_door"

    @property
    def passable(self) -> bool:
        return self is KnownCell.FLOOR or self is KnownCell.OPEN_DOOR


@dataclass(frozen=True)
class Sighting:
    """An object as the agent perceives it; ``door`` is set for linked buttons."""

    id: str
    kind: ObjectKind
    position: Coord
    door: str | None = None


@dataclass(frozen=True)
class Percept:
    cells: Mapping[Coord, KnownCell]
    objects: tuple[Sighting, ...] = ()


@dataclass(frozen=True)
class WorldState:
    level: Level
    agent_pos: Coord
    door_open: Mapping[str, bool]
    pressed: frozenset[str] = frozenset()
    tick: int = 0
    clock_s: float = 0.0
    finished: bool = False
    # in-flight move: target cell and ticks already spent on it
    move_target: Coord | None = None
    move_elapsed: int = 0


def initial_state(level: Level) -> WorldState:
    return WorldState(level, level.spawn, {d.id: False for d in level.doors})


# ---------------------------------------------------------------------------
# field of view


def line_offsets(dx: int, dy: int) -> list[Coord]:
    """Cells of the discretised segment from (0,0) to (dx,dy), endpoints included.

    Steps one cell along the major axis; the minor coordinate is the exact
    ratio rounded half away from zero.
    """
    n = max(abs(dx), abs(dy))
    if n == 0:
        return [(0, 0)]
    sx = 1 if dx >= 0 else -1
    sy = 1 if dy >= 0 else -1
    adx, ady = abs(dx), abs(dy)
    out = []
    if adx >= ady:
        for i in range(n + 1):
            out.append((sx * i, sy * ((2 * i * ady + n) // (2 * n))))
    else:
        for i in range(n + 1):
            out.append((sx * ((2 * i * adx + n) // (2 * n)), sy * i))
    return out


@lru_cache(maxsize=None)
def _ray_table(radius: int) -> tuple[tuple[Coord, tuple[Coord, ...]], ...]:
    rows = []
    r2 = radius * radius
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            if dx * dx + dy * dy <= r2:
                rows.append(((dx, dy), tuple(line_offsets(dx, dy)[1:-1])))
    return tuple(rows)


def closed_door_cells(level: Level, door_open: Mapping[str, bool]) -> set[Coord]:
    return {d.position for d in level.doors if not door_open.get(d.id, False)}


def visible_cells(
    level: Level, door_open: Mapping[str, bool], origin: Coord, radius: int
) -> set[Coord]:
    """Cells within Euclidean ``radius`` whose sight line is not occluded.

    Walls and closed doors block the line but are themselves visible.
    """
    closed = closed_door_cells(level, door_open)
    ox, oy = origin
    w, h = level.width, level.height
    cells = level.cells
    out = set()
    for (dx, dy), between in _ray_table(radius):
        tx, ty = ox + dx, oy + dy
        if not (0 <= tx < w and 0 <= ty < h):
            continue
        for bx, by in between:
            p = (ox + bx, oy + by)
            if cells[p[1]][p[0]] is Cell.WALL or p in closed:
                break
        else:
            out.add((tx, ty))
    return out


def perceive(state: WorldState, radius: int) -> Percept:
    level = state.level
    cells: dict[Coord, KnownCell] = {}
    sightings = []
    for pos in visible_cells(level, state.door_open, state.agent_pos, radius):
        obj = level.object_at.get(pos)
        if level.is_wall(pos):
            cells[pos] = KnownCell.WALL
        elif obj is not None and obj.kind is ObjectKind.DOOR:
            cells[pos] = KnownCell.OPEN_DOOR if state.door_open[obj.id] else KnownCell.CLOSED_DOOR
        else:
            cells[pos] = KnownCell.FLOOR
        if obj is not None:
            sightings.append(Sighting(obj.id, obj.kind, pos, level.links.get(obj.id)))
    sightings.sort(key=lambda s: s.id)
    return Percept(cells, tuple(sightings))


# ---------------------------------------------------------------------------
# dynamics


def is_passable(state: WorldState, pos: Coord) -> bool:
    level = state.level
    if not level.in_bounds(pos) or level.is_wall(pos):
        return False
    obj = level.object_at.get(pos)
    if obj is not None and obj.kind is ObjectKind.DOOR:
        return state.door_open[obj.id]
    return True


def in_interaction_range(a: Coord, b: Coord) -> bool:
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) <= 1


def step(
    state: WorldState, action: AgentAction, tick_s: float = 0.1, ticks_per_move: int = 5
) -> tuple[WorldState, list[SimEvent]]:
    """Advance the world by one tick under ``action``.

    A move spans ``ticks_per_move`` consecutive ``Move`` actions with the same
    target; the position changes on the last of them. Any other action
    abandons a move in flight.
    """
    if state.finished:
        raise IllegalAction("the run has already finished")
    level = state.level
    tick = state.tick + 1
    clock = round(tick * tick_s, _TIME_DIGITS)
    pos = state.agent_pos
    events: list[SimEvent] = []
    changes: dict = {"tick": tick, "clock_s": clock, "move_target": None, "move_elapsed": 0}

    if isinstance(action, Move):
        target = action.target
        if not in_interaction_range(pos, target) or target == pos:
            raise IllegalAction(f"move from {pos} to non-adjacent cell {target}")
        if not is_passable(state, target):
            raise IllegalAction(f"move into blocked cell {target}")
        elapsed = state.move_elapsed + 1 if state.move_target == target else 1
        if elapsed >= ticks_per_move:
            pos = target
            changes["agent_pos"] = pos
            goal = level.goal
            if goal is not None and pos == goal.position:
                changes["finished"] = True
                events.append(SimEvent(EventKind.GOAL_FOUND, clock, pos, None))
        else:
            changes["move_target"] = target
            changes["move_elapsed"] = elapsed
    elif isinstance(action, Press):
        button: GameObject | None = level.objects_by_id.get(action.button)
        if button is None or button.kind is not ObjectKind.BUTTON:
            raise IllegalAction(f"no button {action.button!r}")
        if not in_interaction_range(pos, button.position):
            raise IllegalAction(f"button {button.id!r} is out of reach from {pos}")
        changes["pressed"] = state.pressed | {button.id}
        door_id = level.links.get(button.id)
        if door_id is None:
            events.append(SimEvent(EventKind.PRESS_NO_EFFECT, clock, pos, button.id))
        elif not state.door_open[door_id]:
            changes["door_open"] = {**state.door_open, door_id: True}
            events.append(SimEvent(EventKind.DOOR_OPENED, clock, pos, door_id))
    elif not isinstance(action, Wait):
        raise IllegalAction(f"unknown action {action!r}")

    return replace(state, **changes), events
