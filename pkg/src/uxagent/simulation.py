"""The per-tick simulation loop.

Tick 0 is the spawn snapshot. Every later tick runs

    decide -> act -> perceive -> integrate -> affect events -> affect decay -> record

so a percept always reflects the position reached by the same tick's action,
and any event's affect bump shows up in that tick's record.
"""

from __future__ import annotations

from . import affect
from .agent import AgentWorldModel, Stop, choose_action
from .config import RunConfig
from .engine import EventKind, Press, SimEvent, WorldState, initial_state, perceive, step
from .level import Level, ObjectKind, reachable_cells
from .trace import OUTCOME_EXHAUSTED, OUTCOME_GOAL, RunResult, TraceBuilder, TraceRecord


class TickLimitExceeded(RuntimeError):
    def __init__(self, limit: int, partial: RunResult | None = None) -> None:
        super().__init__(f"run did not finish within {limit} ticks")
        self.partial = partial


def goal_doors(level: Level) -> list[str]:
    """Doors that, closed on their own, cut the goal off from spawn."""
    goal = level.goal
    if goal is None:
        return []
    out = []
    for door in level.doors:
        if goal.position not in reachable_cells(level, level.spawn, blocked=[door.position]):
            out.append(door.id)
    return sorted(out)


def resolve_door_order(level: Level, door_order) -> tuple[str, ...] | None:
    """Turn ``goal-first`` / ``goal-last`` into an explicit button order."""
    if door_order is None:
        return None
    if not isinstance(door_order, str):
        unknown = [b for b in door_order if b not in level.links]
        if unknown:
            raise ValueError(f"door order names unlinked or unknown button(s): {unknown}")
        return tuple(door_order)
    critical = set(goal_doors(level))
    if not critical:
        raise ValueError(f"{door_order!r} needs a level whose goal sits behind a door")
    first = sorted(b for b, d in level.links.items() if d in critical)
    rest = sorted(b for b, d in level.links.items() if d not in critical)
    return tuple(first + rest) if door_order == "goal-first" else tuple(rest + first)


class Simulation:
    """One run of one agent on one level. Holds all mutable run state."""

    def __init__(self, level: Level, config: RunConfig | None = None, map_id: str = "") -> None:
        self.level = level
        self.config = config or RunConfig()
        self.map_id = map_id
        self.world: WorldState = initial_state(level)
        self.model = AgentWorldModel(
            level.width,
            level.height,
            seed=self.config.seed,
            door_order=resolve_door_order(level, self.config.door_order),
        )
        self.affect = affect.init()
        self.builder = TraceBuilder(self.config.seed, map_id, self.config.to_dict())

    def _record(self, events: list[SimEvent]) -> None:
        w = self.world
        self.builder.record_tick(
            TraceRecord(
                w.tick, w.clock_s, w.agent_pos,
                self.affect.valence, self.affect.arousal,
                tuple(e.tag for e in events),
            )
        )

    def _perceive(self) -> list[SimEvent]:
        new_ids, _ = self.model.integrate_percepts(perceive(self.world, self.config.fov_radius))
        w = self.world
        return [SimEvent(EventKind.NEW_INTERACTABLE, w.clock_s, w.agent_pos, oid) for oid in new_ids]

    def run(self) -> RunResult:
        cfg = self.config
        appraisal = cfg.appraisal
        tpm = cfg.ticks_per_move

        spawn_events = self._perceive()
        if not cfg.spawn_percepts_arouse:
            spawn_events = []
        self.affect = affect.apply_events(self.affect, spawn_events, appraisal)
        self._record(spawn_events)

        while True:
            if self.world.tick >= cfg.max_ticks:
                raise TickLimitExceeded(cfg.max_ticks, self.builder.finish(OUTCOME_EXHAUSTED))
            decision = choose_action(self.model, self.world.agent_pos)
            if decision is Stop.EXHAUSTED or decision is Stop.FINISHED:
                # FINISHED cannot occur: arriving on the goal ends the run first
                return self.builder.finish(OUTCOME_EXHAUSTED)

            before = self.world
            self.world, events = step(before, decision, cfg.tick_s, tpm)
            if isinstance(decision, Press):
                self.model.note_pressed(decision.button)
            doors_changed = False
            for ev in events:
                if ev.kind is EventKind.DOOR_OPENED:
                    self.model.note_door_opened(ev.ref)
                    doors_changed = True
            if doors_changed or self.world.agent_pos != before.agent_pos:
                events.extend(self._perceive())

            self.affect = affect.step(self.affect, events, cfg.tick_s, appraisal)
            self._record(events)
            if self.world.finished:
                return self.builder.finish(OUTCOME_GOAL)


def run_simulation(level: Level, config: RunConfig | None = None, map_id: str = "") -> RunResult:
    return Simulation(level, config, map_id).run()


def interactable_ids(level: Level) -> list[str]:
    return sorted(o.id for o in level.objects if o.kind is not ObjectKind.GOAL)
