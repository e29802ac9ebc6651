"""Per-tick run history, affect envelopes and CSV/JSON export."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence, TextIO, Union

from .level import Coord

GOAL_TAG = "goal_found"
CSV_HEADER = ("tick", "time_s", "x", "y", "valence", "arousal", "events")

OUTCOME_GOAL = "GoalFound"
OUTCOME_EXHAUSTED = "Exhausted"


@dataclass(frozen=True)
class TraceRecord:
    tick: int
    time_s: float
    pos: Coord
    valence: float
    arousal: float
    events: tuple[str, ...] = ()

    def as_row(self) -> dict[str, Any]:
        return {
            "tick": self.tick,
            "time_s": self.time_s,
            "x": self.pos[0],
            "y": self.pos[1],
            "valence": self.valence,
            "arousal": self.arousal,
            "events": ";".join(self.events),
        }


@dataclass(frozen=True)
class RunResult:
    trace: tuple[TraceRecord, ...]
    outcome: str
    duration_s: float
    seed: int
    map_id: str
    config: dict[str, Any] = field(default_factory=dict)

    @property
    def events(self) -> list[tuple[int, str]]:
        return [(r.tick, tag) for r in self.trace for tag in r.events]

    @property
    def final(self) -> TraceRecord:
        return self.trace[-1]


class TraceError(ValueError):
    pass


class TraceBuilder:
    """Accumulates contiguous tick records for one run."""

    def __init__(self, seed: int = 0, map_id: str = "", config: dict[str, Any] | None = None) -> None:
        self.records: list[TraceRecord] = []
        self.seed = seed
        self.map_id = map_id
        self.config = dict(config or {})

    def record_tick(self, snapshot: TraceRecord) -> "TraceBuilder":
        expected = self.records[-1].tick + 1 if self.records else 0
        if snapshot.tick != expected:
            raise TraceError(f"non-contiguous tick {snapshot.tick}, expected {expected}")
        self.records.append(snapshot)
        return self

    def finish(self, outcome: str) -> RunResult:
        if not self.records:
            raise TraceError("cannot finish an empty trace")
        reached = GOAL_TAG in self.records[-1].events
        if reached != (outcome == OUTCOME_GOAL):
            raise TraceError(f"outcome {outcome!r} disagrees with the final record")
        return RunResult(
            tuple(self.records), outcome, self.records[-1].time_s, self.seed, self.map_id, self.config
        )


# ---------------------------------------------------------------------------
# statistics


def quadrant_occupancy(trace: Sequence[TraceRecord]) -> dict[str, float]:
    """Fraction of ticks per sign quadrant; zero counts as non-negative.

    Keys: ``pp`` (v>=0, a>=0), ``pm`` (v>=0, a<0), ``mp`` (v<0, a>=0),
    ``mm`` (v<0, a<0).
    """
    if not trace:
        raise TraceError("quadrant occupancy of an empty trace")
    counts = {"pp": 0, "pm": 0, "mp": 0, "mm": 0}
    for r in trace:
        key = ("p" if r.valence >= 0 else "m") + ("p" if r.arousal >= 0 else "m")
        counts[key] += 1
    n = len(trace)
    return {k: c / n for k, c in counts.items()}


@dataclass(frozen=True)
class EnvelopeWindow:
    from_s: float
    to_s: float  # math.inf for an open-ended window
    v_min: float
    v_max: float
    a_min: float
    a_max: float

    def __post_init__(self) -> None:
        if not self.from_s < self.to_s:
            raise ValueError(f"window starts at {self.from_s} but ends at {self.to_s}")
        if self.v_min > self.v_max or self.a_min > self.a_max:
            raise ValueError("inverted envelope bounds")

    def covers(self, t: float) -> bool:
        return self.from_s <= t <= self.to_s

    def to_dict(self) -> dict[str, Any]:
        return {
            "from_s": self.from_s,
            "to_s": "end" if math.isinf(self.to_s) else self.to_s,
            "v_min": self.v_min,
            "v_max": self.v_max,
            "a_min": self.a_min,
            "a_max": self.a_max,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "EnvelopeWindow":
        to_s = d["to_s"]
        if to_s == "end":
            to_s = math.inf
        elif isinstance(to_s, str):
            raise ValueError(f"to_s must be a number or 'end', got {to_s!r}")
        return cls(
            float(d["from_s"]), float(to_s),
            float(d["v_min"]), float(d["v_max"]), float(d["a_min"]), float(d["a_max"]),
        )


@dataclass(frozen=True)
class AffectEnvelope:
    windows: tuple[EnvelopeWindow, ...]

    @classmethod
    def vacuous(cls, lo: float = -5.0, hi: float = 5.0) -> "AffectEnvelope":
        return cls((EnvelopeWindow(0.0, math.inf, lo, hi, lo, hi),))

    def check_range(self, lo: float, hi: float) -> None:
        """Reject bounds outside the affect clamp range ``[lo, hi]``."""
        for w in self.windows:
            for b in (w.v_min, w.v_max, w.a_min, w.a_max):
                if not lo <= b <= hi:
                    raise ValueError(f"envelope bound {b} outside the clamp range [{lo}, {hi}]")

    def to_json(self) -> str:
        return json.dumps([w.to_dict() for w in self.windows], indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AffectEnvelope":
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("an envelope file holds a JSON array of windows")
        return cls(tuple(EnvelopeWindow.from_dict(d) for d in data))


def load_envelope(path: str) -> AffectEnvelope:
    with open(path, encoding="utf-8") as fh:
        return AffectEnvelope.from_json(fh.read())


@dataclass(frozen=True)
class EnvelopeResult:
    passed: bool
    violations: tuple[tuple[int, str], ...]


def evaluate_envelope(trace: Iterable[TraceRecord], envelope: AffectEnvelope) -> EnvelopeResult:
    """Check every record against every window that covers its time."""
    violations = []
    for r in trace:
        for w in envelope.windows:
            if not w.covers(r.time_s):
                continue
            if r.valence < w.v_min:
                violations.append((r.tick, "v_min"))
            if r.valence > w.v_max:
                violations.append((r.tick, "v_max"))
            if r.arousal < w.a_min:
                violations.append((r.tick, "a_min"))
            if r.arousal > w.a_max:
                violations.append((r.tick, "a_max"))
    return EnvelopeResult(not violations, tuple(violations))


# ---------------------------------------------------------------------------
# serialization

PathOrFile = Union[str, os.PathLike, TextIO]


def _open_for_write(dest: PathOrFile):
    if hasattr(dest, "write"):
        return dest, False
    return open(dest, "w", encoding="utf-8", newline=""), True


def _num(x: float | int) -> str:
    # repr is the shortest string that round-trips
    return repr(x)


def trace_to_csv(run: RunResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in run.trace:
        writer.writerow(
            [r.tick, _num(r.time_s), r.pos[0], r.pos[1], _num(r.valence), _num(r.arousal), ";".join(r.events)]
        )
    return buf.getvalue()


def write_csv(run: RunResult, destination: PathOrFile) -> None:
    fh, close = _open_for_write(destination)
    try:
        fh.write(trace_to_csv(run))
    finally:
        if close:
            fh.close()


def _record_from_row(row: dict[str, str]) -> TraceRecord:
    tags = tuple(t for t in row["events"].split(";") if t)
    return TraceRecord(
        int(row["tick"]), float(row["time_s"]), (int(row["x"]), int(row["y"])),
        float(row["valence"]), float(row["arousal"]), tags,
    )


def parse_csv(text: str) -> list[TraceRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise TraceError(f"unexpected CSV header {reader.fieldnames}")
    return [_record_from_row(row) for row in reader]


def run_to_dict(run: RunResult) -> dict[str, Any]:
    return {
        "meta": {
            "map": run.map_id,
            "seed": run.seed,
            "config": run.config,
            "outcome": run.outcome,
            "duration_s": run.duration_s,
        },
        "trace": [r.as_row() for r in run.trace],
    }


def trace_to_json(run: RunResult) -> str:
    return json.dumps(run_to_dict(run), indent=1) + "\n"


def write_json(run: RunResult, destination: PathOrFile) -> None:
    fh, close = _open_for_write(destination)
    try:
        fh.write(trace_to_json(run))
    finally:
        if close:
            fh.close()


def run_from_dict(data: dict[str, Any]) -> RunResult:
    meta = data["meta"]
    records = tuple(
        TraceRecord(
            int(row["tick"]), float(row["time_s"]), (int(row["x"]), int(row["y"])),
            float(row["valence"]), float(row["arousal"]),
            tuple(t for t in row["events"].split(";") if t),
        )
        for row in data["trace"]
    )
    return RunResult(
        records, meta["outcome"], float(meta["duration_s"]), int(meta["seed"]), meta["map"],
        meta.get("config", {}),
    )


def read_json(path: str) -> RunResult:
    with open(path, encoding="utf-8") as fh:
        return run_from_dict(json.load(fh))


def read_trace(path: str) -> RunResult:
    """Load a run from a JSON trace, or a bare CSV trace (meta fields defaulted)."""
    if str(path).endswith(".csv"):
        with open(path, encoding="utf-8", newline="") as fh:
            records = tuple(parse_csv(fh.read()))
        if not records:
            raise TraceError(f"{path} holds no trace records")
        outcome = OUTCOME_GOAL if GOAL_TAG in records[-1].events else OUTCOME_EXHAUSTED
        return RunResult(records, outcome, records[-1].time_s, 0, "")
    return read_json(path)
