"""Level data model, the ``labrecruits-level v1`` text format and built-in maps.

Coordinates are ``(x, y)`` = (column, row) with the origin at the top-left
cell. The grid is 4-connected.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Iterable, Iterator, Mapping

Coord = tuple[int, int]

HEADER = "labrecruits-level v1"
GRID_ALPHABET = frozenset("#.SGDb")
BUILTIN_IDS = ("M1", "M2", "M3", "M4")

# up, right, down, left
NEIGHBOUR_OFFSETS: tuple[Coord, ...] = ((0, -1), (1, 0), (0, 1), (-1, 0))


class Cell(enum.Enum):
    FLOOR = "floor"
    WALL = "wall"


class ObjectKind(enum.Enum):
    DOOR = "door"
    BUTTON = "button"
    GOAL = "goal"


class LevelError(ValueError):
    """Raised for a level file that parses but breaks the data model."""


class LevelSyntaxError(LevelError):
    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class GameObject:
    id: str
    kind: ObjectKind
    position: Coord
    # only meaningful for buttons; False marks a decoy
    linked: bool = False


@dataclass(frozen=True)
class Level:
    width: int
    height: int
    cells: tuple[tuple[Cell, ...], ...]
    spawn: Coord
    objects: tuple[GameObject, ...] = ()
    links: Mapping[str, str] = field(default_factory=dict)

    def in_bounds(self, pos: Coord) -> bool:
        x, y = pos
        return 0 <= x < self.width and 0 <= y < self.height

    def cell(self, pos: Coord) -> Cell:
        x, y = pos
        return self.cells[y][x]

    def is_wall(self, pos: Coord) -> bool:
        return self.cells[pos[1]][pos[0]] is Cell.WALL

    @cached_property
    def objects_by_id(self) -> dict[str, GameObject]:
        return {obj.id: obj for obj in self.objects}

    @cached_property
    def object_at(self) -> dict[Coord, GameObject]:
        return {obj.position: obj for obj in self.objects}

    @cached_property
    def doors(self) -> tuple[GameObject, ...]:
        return tuple(o for o in self.objects if o.kind is ObjectKind.DOOR)

    @cached_property
    def buttons(self) -> tuple[GameObject, ...]:
        return tuple(o for o in self.objects if o.kind is ObjectKind.BUTTON)

    @cached_property
    def goals(self) -> tuple[GameObject, ...]:
        return tuple(o for o in self.objects if o.kind is ObjectKind.GOAL)

    @property
    def goal(self) -> GameObject | None:
        return self.goals[0] if self.goals else None

    def neighbours(self, pos: Coord) -> Iterator[Coord]:
        x, y = pos
        for dx, dy in NEIGHBOUR_OFFSETS:
            nxt = (x + dx, y + dy)
            if self.in_bounds(nxt):
                yield nxt

    def floor_cells(self) -> Iterator[Coord]:
        for y, row in enumerate(self.cells):
            for x, c in enumerate(row):
                if c is Cell.FLOOR:
                    yield (x, y)

    def without_goal(self) -> "Level":
        return Level(
            self.width,
            self.height,
            self.cells,
            self.spawn,
            tuple(o for o in self.objects if o.kind is not ObjectKind.GOAL),
            dict(self.links),
        )


# ---------------------------------------------------------------------------
# parsing / serialization

_OBJECT_RE = re.compile(r"^(door|button|goal)\s+(\S+)\s+(-?\d+)\s+(-?\d+)\s*$")
_LINK_RE = re.compile(r"^link\s+(\S+)\s*->\s*(\S+)\s*$")
_GRID_CHAR_FOR = {ObjectKind.DOOR: "D", ObjectKind.BUTTON: "b", ObjectKind.GOAL: "G"}


def _is_grid_row(line: str) -> bool:
    return bool(line) and set(line) <= GRID_ALPHABET


def _is_comment(line: str) -> bool:
    # A line made only of grid characters is a grid row, even when it starts
    # with '#'; comments need some other character (typically "# ...").
    return line.startswith("#") and not _is_grid_row(line)


def parse_level(text: str) -> Level:
    """Parse a ``labrecruits-level v1`` document into a :class:`Level`."""
    lines = text.split("\n")
    if not lines or lines[0].rstrip("\r") != HEADER:
        raise LevelSyntaxError(f"expected header {HEADER!r}", 1)

    rows: list[tuple[int, str]] = []
    obj_lines: list[tuple[int, re.Match]] = []
    link_lines: list[tuple[int, re.Match]] = []
    in_grid = True
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped or _is_comment(stripped):
            continue
        if in_grid and _is_grid_row(line):
            rows.append((lineno, line))
            continue
        if not rows:
            bad = next(i for i, ch in enumerate(line, 1) if ch not in GRID_ALPHABET)
            raise LevelSyntaxError(f"unexpected character {line[bad - 1]!r} in grid", lineno, bad)
        in_grid = False
        if m := _OBJECT_RE.match(stripped):
            obj_lines.append((lineno, m))
        elif m := _LINK_RE.match(stripped):
            link_lines.append((lineno, m))
        elif " " not in stripped:
            # most likely a grid row with a stray character
            bad = next(i for i, ch in enumerate(line, 1) if ch not in GRID_ALPHABET)
            raise LevelSyntaxError(f"unexpected character {line[bad - 1]!r} in grid", lineno, bad)
        else:
            col = len(line) - len(line.lstrip()) + 1
            raise LevelSyntaxError(f"unrecognised line {stripped!r}", lineno, col)

    if not rows:
        raise LevelSyntaxError("missing grid block", len(lines))
    width = len(rows[0][1])
    for lineno, row in rows:
        if len(row) != width:
            raise LevelSyntaxError(
                f"grid row has width {len(row)}, expected {width}", lineno, min(len(row), width) + 1
            )

    cells = tuple(
        tuple(Cell.WALL if ch == "#" else Cell.FLOOR for ch in row) for _, row in rows
    )
    markers: dict[Coord, str] = {}
    spawns: list[Coord] = []
    for y, (_, row) in enumerate(rows):
        for x, ch in enumerate(row):
            if ch == "S":
                spawns.append((x, y))
            elif ch in "GDb":
                markers[(x, y)] = ch
    if len(spawns) != 1:
        raise LevelSyntaxError(f"expected exactly one spawn 'S', found {len(spawns)}", rows[0][0])

    objects: list[GameObject] = []
    seen_ids: set[str] = set()
    claimed: set[Coord] = set()
    for lineno, m in obj_lines:
        kind = ObjectKind(m.group(1))
        oid, x, y = m.group(2), int(m.group(3)), int(m.group(4))
        if oid in seen_ids:
            raise LevelError(f"line {lineno}: duplicate object id {oid!r}")
        seen_ids.add(oid)
        if not (0 <= x < width and 0 <= y < len(rows)):
            raise LevelError(f"line {lineno}: {kind.value} {oid!r} at ({x},{y}) is out of bounds")
        if cells[y][x] is Cell.WALL:
            raise LevelError(f"line {lineno}: {kind.value} {oid!r} placed on a wall cell ({x},{y})")
        if markers.get((x, y)) != _GRID_CHAR_FOR[kind]:
            raise LevelError(
                f"line {lineno}: {kind.value} {oid!r} at ({x},{y}) does not match grid "
                f"character {rows[y][1][x]!r}"
            )
        if (x, y) in claimed:
            raise LevelError(f"line {lineno}: cell ({x},{y}) already holds an object")
        claimed.add((x, y))
        objects.append(GameObject(oid, kind, (x, y)))
    unclaimed = sorted(set(markers) - claimed, key=lambda p: (p[1], p[0]))
    if unclaimed:
        x, y = unclaimed[0]
        raise LevelError(f"grid marker {markers[(x, y)]!r} at ({x},{y}) has no object line")

    by_id = {o.id: o for o in objects}
    links: dict[str, str] = {}
    for lineno, m in link_lines:
        button_id, door_id = m.group(1), m.group(2)
        button = by_id.get(button_id)
        if button is None or button.kind is not ObjectKind.BUTTON:
            raise LevelError(f"line {lineno}: link from unknown button {button_id!r}")
        door = by_id.get(door_id)
        if door is None or door.kind is not ObjectKind.DOOR:
            raise LevelError(f"line {lineno}: link to unknown door {door_id!r}")
        if button_id in links:
            raise LevelError(f"line {lineno}: button {button_id!r} is already linked")
        if door_id in links.values():
            raise LevelError(f"line {lineno}: door {door_id!r} already has a button")
        links[button_id] = door_id

    objects = [
        GameObject(o.id, o.kind, o.position, linked=o.id in links)
        if o.kind is ObjectKind.BUTTON
        else o
        for o in objects
    ]
    return Level(width, len(rows), cells, spawns[0], tuple(objects), links)


def serialize_level(level: Level, comments: Iterable[str] = ()) -> str:
    out = [HEADER]
    out.extend(f"# {c}" for c in comments)
    grid = [["#" if c is Cell.WALL else "." for c in row] for row in level.cells]
    for obj in level.objects:
        x, y = obj.position
        grid[y][x] = _GRID_CHAR_FOR[obj.kind]
    sx, sy = level.spawn
    grid[sy][sx] = "S"
    out.extend("".join(row) for row in grid)
    for obj in level.objects:
        out.append(f"{obj.kind.value} {obj.id} {obj.position[0]} {obj.position[1]}")
    for button_id, door_id in level.links.items():
        out.append(f"link {button_id} -> {door_id}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# validation


def reachable_cells(level: Level, start: Coord, blocked: Iterable[Coord] = ()) -> set[Coord]:
    """Floor cells 4-connected to ``start``; ``blocked`` cells are impassable."""
    blocked = set(blocked)
    if not level.in_bounds(start) or level.is_wall(start) or start in blocked:
        return set()
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in level.neighbours(cur):
            if nxt not in seen and nxt not in blocked and not level.is_wall(nxt):
                seen.add(nxt)
                queue.append(nxt)
    return seen


def validate(level: Level) -> list[str]:
    """Return human-readable violations; an empty list means the level is sound."""
    problems: list[str] = []
    if not level.in_bounds(level.spawn) or level.is_wall(level.spawn):
        problems.append(f"spawn {level.spawn} is not on a floor cell")

    ids: set[str] = set()
    occupied: dict[Coord, str] = {}
    for obj in level.objects:
        if obj.id in ids:
            problems.append(f"duplicate object id {obj.id!r}")
        ids.add(obj.id)
        if not level.in_bounds(obj.position):
            problems.append(f"{obj.kind.value} {obj.id!r} is out of bounds")
            continue
        if level.is_wall(obj.position):
            problems.append(f"{obj.kind.value} {obj.id!r} is on a wall cell")
        if obj.position in occupied:
            problems.append(f"{obj.kind.value} {obj.id!r} shares a cell with {occupied[obj.position]!r}")
        occupied[obj.position] = obj.id
        if obj.kind is ObjectKind.DOOR and obj.position == level.spawn:
            problems.append(f"door {obj.id!r} sits on the spawn cell")

    by_id = level.objects_by_id
    doors_linked: dict[str, str] = {}
    for button_id, door_id in level.links.items():
        button = by_id.get(button_id)
        door = by_id.get(door_id)
        if button is None or button.kind is not ObjectKind.BUTTON:
            problems.append(f"link from unknown button {button_id!r}")
        if door is None or door.kind is not ObjectKind.DOOR:
            problems.append(f"link to unknown door {door_id!r}")
        elif door_id in doors_linked:
            problems.append(
                f"door {door_id!r} is linked from both {doors_linked[door_id]!r} and {button_id!r}"
            )
        doors_linked[door_id] = button_id
    for button in level.buttons:
        if button.linked != (button.id in level.links):
            state = "linked" if button.linked else "a decoy"
            problems.append(f"button {button.id!r} is marked {state} but links disagree")

    if len(level.goals) > 1:
        problems.append("multiple goals")
    elif level.goal is not None and not problems:
        # doors are assumed openable for this check
        if level.goal.position not in reachable_cells(level, level.spawn):
            problems.append("goal unreachable")
    return problems


# ---------------------------------------------------------------------------
# built-in maps


def builtin_text(map_id: str) -> str:
    if map_id not in BUILTIN_IDS:
        raise KeyError(f"unknown map id {map_id!r}; expected one of {', '.join(BUILTIN_IDS)}")
    return resources.files("uxagent.maps").joinpath(f"{map_id}.level").read_text(encoding="utf-8")


def builtin(map_id: str) -> Level:
    """Load one of the shipped maps ``M1`` .. ``M4``."""
    return parse_level(builtin_text(map_id))


def load_level(ref: str) -> Level:
    """Resolve a built-in id or read a level file from disk."""
    if ref in BUILTIN_IDS:
        return builtin(ref)
    with open(ref, encoding="utf-8") as fh:
        return parse_level(fh.read())
