"""The exploring agent: spatial memory, frontiers, pathfinding and policy.

Each tick the agent works through a fixed priority list:

1. integrate what it currently sees into its internal map;
2. if the chair (goal) is known and reachable, walk to it;
3. otherwise, if it knows a button wired to a still-closed door, walk to
   one such button and press it (picked at random when there are several,
   then kept until pressed);
4. otherwise walk to the nearest information limit (frontier).

When none of these applies the map is exhausted.
"""

from __future__ import annotations

import enum
from collections import deque
from typing import Iterable, Sequence, Union

from .engine import (
    AgentAction,
    KnownCell,
    Move,
    Percept,
    Press,
    Sighting,
    Wait,
    in_interaction_range,
)
from .level import NEIGHBOUR_OFFSETS, Coord, ObjectKind
from .rng import Xoshiro256StarStar


class Stop(enum.Enum):
    FINISHED = "finished"
    EXHAUSTED = "exhausted"


Decision = Union[AgentAction, Stop]


class PerceptionError(RuntimeError):
    """A percept contradicts what the agent already knows."""


class NoPath(LookupError):
    pass


class AgentWorldModel:
    """What one agent knows about the level, plus its private RNG."""

    def __init__(
        self,
        width: int,
        height: int,
        seed: int = 0,
        door_order: Sequence[str] | None = None,
    ) -> None:
        self.width = width
        self.height = height
        self.known: dict[Coord, KnownCell] = {}
        self._passable: set[Coord] = set()
        self.known_objects: dict[str, Sighting] = {}
        self.frontiers: set[Coord] = set()
        self.rng = Xoshiro256StarStar(seed)
        self.door_order = tuple(door_order) if door_order else None
        self.pressed: set[str] = set()
        self.open_doors: set[str] = set()
        self.target_button: str | None = None
        self._goal: Sighting | None = None
        # bumped on every knowledge change; keys the BFS cache
        self.version = 0
        self._bfs_cache: tuple[tuple[int, Coord], dict, dict] | None = None

    # -- knowledge ----------------------------------------------------------

    @property
    def goal(self) -> Sighting | None:
        return self._goal

    def passable(self, pos: Coord) -> bool:
        return pos in self._passable

    def known_passable(self) -> set[Coord]:
        return set(self._passable)

    def _neighbours(self, pos: Coord) -> Iterable[Coord]:
        x, y = pos
        for dx, dy in NEIGHBOUR_OFFSETS:
            nx, ny = x + dx, y + dy
            if 0 <= nx < self.width and 0 <= ny < self.height:
                yield (nx, ny)

    def _is_frontier(self, pos: Coord) -> bool:
        if not self.passable(pos):
            return False
        return any(n not in self.known for n in self._neighbours(pos))

    def _refresh_frontiers(self, changed: Iterable[Coord]) -> None:
        touched = set()
        for pos in changed:
            touched.add(pos)
            touched.update(self._neighbours(pos))
        for pos in touched:
            if self._is_frontier(pos):
                self.frontiers.add(pos)
            else:
                self.frontiers.discard(pos)

    def _set_cell(self, pos: Coord, kind: KnownCell) -> bool:
        old = self.known.get(pos)
        if old is kind:
            return False
        if old is not None and not (old is KnownCell.CLOSED_DOOR and kind is KnownCell.OPEN_DOOR):
            raise PerceptionError(f"cell {pos} was {old.value}, now perceived as {kind.value}")
        self.known[pos] = kind
        if kind.passable:
            self._passable.add(pos)
        return True

    def integrate_percepts(self, percept: Percept) -> tuple[list[str], bool]:
        """Merge a percept into memory.

        Returns the ids of buttons/doors seen for the first time (sorted) and
        whether the goal is in view.
        """
        changed = [pos for pos, kind in percept.cells.items() if self._set_cell(pos, kind)]
        new_ids = []
        goal_seen = False
        for s in percept.objects:
            if s.kind is ObjectKind.GOAL:
                goal_seen = True
                if self._goal is None:
                    self._goal = s
            if s.id not in self.known_objects:
                self.known_objects[s.id] = s
                if s.kind is not ObjectKind.GOAL:
                    new_ids.append(s.id)
                changed.append(s.position)
        if changed:
            self._refresh_frontiers(changed)
            self.version += 1
        return new_ids, goal_seen

    def note_pressed(self, button_id: str) -> None:
        self.pressed.add(button_id)
        if self.target_button == button_id:
            self.target_button = None
        self.version += 1

    def note_door_opened(self, door_id: str) -> None:
        """The agent knows its press opened the door even before seeing it."""
        self.open_doors.add(door_id)
        door = self.known_objects.get(door_id)
        if door is not None and self._set_cell(door.position, KnownCell.OPEN_DOOR):
            self._refresh_frontiers([door.position])
        self.version += 1

    def pending_buttons(self) -> list[Sighting]:
        """Known linked buttons whose door is not yet open, sorted by id."""
        return sorted(
            (
                s
                for s in self.known_objects.values()
                if s.kind is ObjectKind.BUTTON
                and s.door is not None
                and s.id not in self.pressed
                and s.door not in self.open_doors
            ),
            key=lambda s: s.id,
        )

    # -- search -------------------------------------------------------------

    def bfs(self, start: Coord) -> tuple[dict[Coord, int], dict[Coord, Coord]]:
        """Distances and BFS-tree parents over known passable cells."""
        key = (self.version, start)
        if self._bfs_cache is not None and self._bfs_cache[0] == key:
            return self._bfs_cache[1], self._bfs_cache[2]
        passable = self._passable
        dist = {start: 0}
        parent: dict[Coord, Coord] = {}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            x, y = cur
            d = dist[cur] + 1
            # known passable cells are always in bounds
            for dx, dy in NEIGHBOUR_OFFSETS:
                nxt = (x + dx, y + dy)
                if nxt in passable and nxt not in dist:
                    dist[nxt] = d
                    parent[nxt] = cur
                    queue.append(nxt)
        self._bfs_cache = (key, dist, parent)
        return dist, parent


def _unwind(parent: dict[Coord, Coord], start: Coord, end: Coord) -> list[Coord]:
    path = [end]
    while path[-1] != start:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def plan_path(model: AgentWorldModel, start: Coord, goal: Coord) -> list[Coord]:
    """Shortest 4-connected path over known passable cells, both ends included.

    Ties are settled by exploring neighbours up, right, down, left.
    """
    dist, parent = model.bfs(start)
    if goal not in dist:
        raise NoPath(f"{goal} is not reachable from {start} in the known map")
    return _unwind(parent, start, goal)


def frontier_rank(distance: int, cell: Coord) -> tuple[int, int, int]:
    """Sort key for frontiers: path length, then row, then column."""
    return (distance, cell[1], cell[0])


def nearest_frontier(model: AgentWorldModel, pos: Coord) -> Coord | None:
    """Reachable frontier closest by path length; ties go to the lowest (row, column)."""
    dist, _ = model.bfs(pos)
    best = None
    best_key = None
    for f in model.frontiers:
        d = dist.get(f)
        if d is None:
            continue
        key = frontier_rank(d, f)
        if best_key is None or key < best_key:
            best, best_key = f, key
    return best


def _step_towards(model: AgentWorldModel, pos: Coord, target: Coord) -> Move:
    _, parent = model.bfs(pos)
    path = _unwind(parent, pos, target)
    return Move(path[1])


def _pick_button(model: AgentWorldModel, candidates: list[Sighting]) -> Sighting:
    if model.door_order:
        by_id = {c.id: c for c in candidates}
        for bid in model.door_order:
            if bid in by_id:
                return by_id[bid]
    return model.rng.choice(candidates)


def choose_action(model: AgentWorldModel, pos: Coord) -> Decision:
    """Apply the priority list above to the current memory."""
    dist, _ = model.bfs(pos)

    goal = model.goal
    if goal is not None and goal.position in dist:
        if goal.position == pos:
            return Stop.FINISHED
        return _step_towards(model, pos, goal.position)

    reachable = [b for b in model.pending_buttons() if b.position in dist]
    if reachable:
        target = next((b for b in reachable if b.id == model.target_button), None)
        if target is None:
            target = _pick_button(model, reachable)
            model.target_button = target.id
        if in_interaction_range(pos, target.position):
            return Press(target.id)
        return _step_towards(model, pos, target.position)

    frontier = nearest_frontier(model, pos)
    if frontier is None:
        return Stop.EXHAUSTED
    if frontier == pos:
        # only possible before the first percept at this position
        return Wait()
    return _step_towards(model, pos, frontier)
