"""Many seeded runs on one level, summarised into a single report."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Sequence

from .config import RunConfig
from .level import Level
from .simulation import run_simulation
from .trace import AffectEnvelope, RunResult, evaluate_envelope, quadrant_occupancy


def _one(args: tuple[Level, RunConfig, str]) -> RunResult:
    level, config, map_id = args
    return run_simulation(level, config, map_id)


def run_many(
    level: Level,
    config: RunConfig,
    seeds: Sequence[int],
    workers: int | None = None,
    map_id: str = "",
) -> list[RunResult]:
    """One independent run per seed, returned in the order the seeds were given.

    ``workers`` > 1 spreads runs over processes; each run owns all of its
    state, so the results do not depend on scheduling.
    """
    seeds = list(seeds)
    if len(set(seeds)) != len(seeds):
        dupes = sorted({s for s in seeds if seeds.count(s) > 1})
        raise ValueError(f"duplicate seed(s): {dupes}")
    jobs = [(level, config.with_seed(s), map_id) for s in seeds]
    if workers is None or workers <= 1 or len(jobs) <= 1:
        return [_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order
        return list(pool.map(_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


@dataclass(frozen=True)
class RunSummary:
    seed: int
    outcome: str
    duration_s: float
    final_valence: float
    final_arousal: float
    quadrants: dict[str, float]
    envelope_pass: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "outcome": self.outcome,
            "duration_s": self.duration_s,
            "final_valence": self.final_valence,
            "final_arousal": self.final_arousal,
            "quadrants": {k: self.quadrants[k] for k in ("pp", "pm", "mp", "mm")},
            "envelope_pass": self.envelope_pass,
        }


EXTREME_KEYS = (
    "min_final_valence",
    "max_final_valence",
    "min_final_arousal",
    "max_final_arousal",
    "min_duration",
    "max_duration",
)


@dataclass(frozen=True)
class EnsembleReport:
    runs: int
    envelope_pass_fraction: float
    summaries: tuple[RunSummary, ...]
    # extreme name -> seed; ties go to the earliest run
    extremes: dict[str, int]

    def to_dict(self) -> dict[str, Any]:
        return {
            "runs": self.runs,
            "envelope_pass_fraction": self.envelope_pass_fraction,
            "summaries": [s.to_dict() for s in self.summaries],
            "extremes": {k: self.extremes[k] for k in EXTREME_KEYS},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EnsembleReport":
        summaries = tuple(
            RunSummary(
                s["seed"], s["outcome"], s["duration_s"], s["final_valence"], s["final_arousal"],
                dict(s["quadrants"]), s["envelope_pass"],
            )
            for s in data["summaries"]
        )
        return cls(data["runs"], data["envelope_pass_fraction"], summaries, dict(data["extremes"]))


def summarise(run: RunResult, envelope: AffectEnvelope) -> RunSummary:
    final = run.final
    return RunSummary(
        run.seed, run.outcome, run.duration_s, final.valence, final.arousal,
        quadrant_occupancy(run.trace), evaluate_envelope(run.trace, envelope).passed,
    )


def _arg_extreme(summaries: Sequence[RunSummary], attr: str, pick_max: bool) -> int:
    best = summaries[0]
    for s in summaries[1:]:
        v, b = getattr(s, attr), getattr(best, attr)
        if (v > b) if pick_max else (v < b):
            best = s
    return best.seed


def aggregate(results: Sequence[RunResult], envelope: AffectEnvelope) -> EnsembleReport:
    if not results:
        raise ValueError("cannot aggregate an empty ensemble")
    summaries = tuple(summarise(r, envelope) for r in results)
    passes = sum(s.envelope_pass for s in summaries)
    extremes = {
        "min_final_valence": _arg_extreme(summaries, "final_valence", False),
        "max_final_valence": _arg_extreme(summaries, "final_valence", True),
        "min_final_arousal": _arg_extreme(summaries, "final_arousal", False),
        "max_final_arousal": _arg_extreme(summaries, "final_arousal", True),
        "min_duration": _arg_extreme(summaries, "duration_s", False),
        "max_duration": _arg_extreme(summaries, "duration_s", True),
    }
    return EnsembleReport(len(summaries), passes / len(summaries), summaries, extremes)
