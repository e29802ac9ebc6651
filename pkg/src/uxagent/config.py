"""Run configuration and its JSON file form."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Union

from .affect import AppraisalConfig

# "goal-first", "goal-last", or an explicit list of button ids
DoorOrder = Union[str, tuple[str, ...], None]


@dataclass(frozen=True)
class RunConfig:
    tick_s: float = 0.1
    move_period_s: float = 0.5
    fov_radius: int = 6
    appraisal: AppraisalConfig = field(default_factory=AppraisalConfig)
    spawn_percepts_arouse: bool = False
    seed: int = 0
    door_order: DoorOrder = None
    max_ticks: int = 100_000

    def __post_init__(self) -> None:
        if not self.tick_s > 0:
            raise ValueError("tick_s must be positive")
        ratio = self.move_period_s / self.tick_s
        if self.move_period_s <= 0 or abs(ratio - round(ratio)) > 1e-9:
            raise ValueError("move_period_s must be a positive multiple of tick_s")
        if self.fov_radius < 1:
            raise ValueError("fov_radius must be at least 1")
        if self.max_ticks < 1:
            raise ValueError("max_ticks must be at least 1")
        if isinstance(self.door_order, list):
            object.__setattr__(self, "door_order", tuple(self.door_order))
        if isinstance(self.door_order, str) and self.door_order not in ("goal-first", "goal-last"):
            raise ValueError("door_order must be 'goal-first', 'goal-last' or a list of button ids")

    @property
    def ticks_per_move(self) -> int:
        return round(self.move_period_s / self.tick_s)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        if isinstance(self.door_order, tuple):
            d["door_order"] = list(self.door_order)
        return d

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        kwargs = dict(data)
        if "appraisal" in kwargs:
            appraisal = kwargs["appraisal"]
            app_known = {f.name for f in fields(AppraisalConfig)}
            bad = set(appraisal) - app_known
            if bad:
                raise ValueError(f"unknown appraisal field(s): {', '.join(sorted(bad))}")
            kwargs["appraisal"] = AppraisalConfig(**appraisal)
        return cls(**kwargs)

    def with_seed(self, seed: int) -> "RunConfig":
        return replace(self, seed=seed)


def load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    with open(path, encoding="utf-8") as fh:
        return RunConfig.from_dict(json.load(fh))
