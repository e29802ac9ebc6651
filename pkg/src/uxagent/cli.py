"""``uxagent`` command line: validate, run, render, ensemble, maps.

Exit codes: 0 success, 1 validation failure, 2 I/O or usage error,
3 tick limit exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path
from typing import Sequence

from .config import RunConfig, load_config
from .ensemble import aggregate, run_many
from .level import BUILTIN_IDS, Level, LevelError, builtin_text, load_level, validate
from .simulation import TickLimitExceeded, run_simulation
from .trace import AffectEnvelope, TraceError, load_envelope, read_trace, write_csv, write_json
from .viz import render_spatial, render_temporal

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_TICK_LIMIT = 3


class CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def _map_name(ref: str) -> str:
    return ref if ref in BUILTIN_IDS else Path(ref).stem


def _load_level(ref: str) -> Level:
    try:
        return load_level(ref)
    except OSError as exc:
        raise CliError(f"cannot read level {ref!r}: {exc.strerror or exc}", EXIT_USAGE) from exc
    except LevelError as exc:
        raise CliError(f"{ref}: {exc}", EXIT_INVALID) from exc


def _require_valid(level: Level, ref: str) -> None:
    problems = validate(level)
    if problems:
        raise CliError("\n".join(f"{ref}: {p}" for p in problems), EXIT_INVALID)


def _parse_door_order(text: str | None):
    if text is None:
        return None
    if text in ("goal-first", "goal-last"):
        return text
    ids = tuple(t.strip() for t in text.split(",") if t.strip())
    if not ids:
        raise CliError("--door-order needs goal-first, goal-last or comma-separated button ids", EXIT_USAGE)
    return ids


def _build_config(args: argparse.Namespace) -> RunConfig:
    try:
        cfg = load_config(args.config)
        changes = {}
        if getattr(args, "seed", None) is not None:
            changes["seed"] = args.seed
        door_order = _parse_door_order(getattr(args, "door_order", None))
        if door_order is not None:
            changes["door_order"] = door_order
        return dataclasses.replace(cfg, **changes) if changes else cfg
    except OSError as exc:
        raise CliError(f"cannot read config {args.config!r}: {exc.strerror or exc}", EXIT_USAGE) from exc
    except (ValueError, TypeError) as exc:
        raise CliError(f"bad config: {exc}", EXIT_USAGE) from exc


def _write_text(path: str | os.PathLike, text: str) -> None:
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {str(path)!r}: {exc.strerror or exc}", EXIT_USAGE) from exc


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args: argparse.Namespace) -> int:
    level = _load_level(args.level)
    problems = validate(level)
    for p in problems:
        print(f"{args.level}: {p}", file=sys.stderr)
    if problems:
        return EXIT_INVALID
    print(f"{args.level}: ok")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    level = _load_level(args.map)
    _require_valid(level, args.map)
    cfg = _build_config(args)
    name = _map_name(args.map)
    prefix = args.out or f"{name}-seed{cfg.seed}"
    try:
        run = run_simulation(level, cfg, name)
    except TickLimitExceeded as exc:
        raise CliError(str(exc), EXIT_TICK_LIMIT) from exc
    except ValueError as exc:
        # e.g. a door order naming unknown buttons
        raise CliError(str(exc), EXIT_USAGE) from exc
    try:
        Path(prefix).parent.mkdir(parents=True, exist_ok=True)
        write_csv(run, f"{prefix}.csv")
        write_json(run, f"{prefix}.json")
    except OSError as exc:
        raise CliError(f"cannot write trace: {exc.strerror or exc}", EXIT_USAGE) from exc
    final = run.final
    print(
        f"{name} seed {cfg.seed}: {run.outcome} after {run.duration_s} s "
        f"(valence {final.valence}, arousal {final.arousal}) -> {prefix}.csv, {prefix}.json"
    )
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    try:
        run = read_trace(args.trace)
    except OSError as exc:
        raise CliError(f"cannot read trace {args.trace!r}: {exc.strerror or exc}", EXIT_USAGE) from exc
    except (TraceError, ValueError, KeyError) as exc:
        raise CliError(f"{args.trace}: malformed trace ({exc})", EXIT_USAGE) from exc
    out = args.out or str(Path(args.trace).with_suffix("")) + f"-{args.mode}.svg"
    try:
        if args.mode == "spatial":
            level_ref = args.level or (run.map_id if run.map_id in BUILTIN_IDS else None)
            if level_ref is None:
                raise CliError("spatial rendering needs --level for a non built-in map", EXIT_USAGE)
            svg = render_spatial(_load_level(level_ref), run)
        else:
            svg = render_temporal(run)
    except ValueError as exc:
        raise CliError(f"cannot render: {exc}", EXIT_INVALID) from exc
    _write_text(out, svg)
    print(f"wrote {out}")
    return EXIT_OK


def _parse_seeds(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise CliError(f"--seeds must be comma-separated integers: {exc}", EXIT_USAGE) from exc


def cmd_ensemble(args: argparse.Namespace) -> int:
    if args.seeds is not None:
        seeds = _parse_seeds(args.seeds)
    else:
        if args.runs is None or args.runs < 1:
            raise CliError("--runs must be at least 1", EXIT_USAGE)
        start = args.seed if args.seed is not None else 0
        seeds = list(range(start, start + args.runs))
    if not seeds:
        raise CliError("no seeds given", EXIT_USAGE)
    level = _load_level(args.map)
    _require_valid(level, args.map)
    args.seed = None  # seeds come from the list, not the config override
    cfg = _build_config(args)
    if args.envelope:
        try:
            envelope = load_envelope(args.envelope)
            envelope.check_range(cfg.appraisal.clamp_lo, cfg.appraisal.clamp_hi)
        except OSError as exc:
            raise CliError(f"cannot read envelope {args.envelope!r}: {exc.strerror or exc}", EXIT_USAGE) from exc
        except (ValueError, KeyError, TypeError) as exc:
            raise CliError(f"bad envelope: {exc}", EXIT_USAGE) from exc
    else:
        envelope = AffectEnvelope.vacuous(cfg.appraisal.clamp_lo, cfg.appraisal.clamp_hi)
    name = _map_name(args.map)
    try:
        results = run_many(level, cfg, seeds, workers=args.workers, map_id=name)
    except TickLimitExceeded as exc:
        raise CliError(str(exc), EXIT_TICK_LIMIT) from exc
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    report = aggregate(results, envelope)
    out = args.out or f"{name}-ensemble.json"
    _write_text(out, report.to_json())
    if args.traces:
        trace_dir = Path(args.traces)
        try:
            trace_dir.mkdir(parents=True, exist_ok=True)
            for run in results:
                write_csv(run, trace_dir / f"{name}-seed{run.seed}.csv")
        except OSError as exc:
            raise CliError(f"cannot write traces: {exc.strerror or exc}", EXIT_USAGE) from exc
    print(f"{name}: {report.runs} runs, envelope pass fraction {report.envelope_pass_fraction} -> {out}")
    return EXIT_OK


def cmd_maps(args: argparse.Namespace) -> int:
    out_dir = Path(args.out or ".")
    for map_id in BUILTIN_IDS:
        _write_text(out_dir / f"{map_id}.level", builtin_text(map_id))
    print(f"wrote {len(BUILTIN_IDS)} levels to {out_dir}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uxagent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a level file for structural problems")
    v.add_argument("level", help="level file or built-in id (M1..M4)")
    v.set_defaults(func=cmd_validate)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--map", required=True, help="level file or built-in id (M1..M4)")
        sp.add_argument("--config", help="JSON run configuration")
        sp.add_argument(
            "--door-order",
            help="goal-first, goal-last, or comma-separated button ids to press in order",
        )

    r = sub.add_parser("run", help="simulate one agent and write <out>.csv and <out>.json")
    common(r)
    r.add_argument("--seed", type=int, help="override the configured seed")
    r.add_argument("--out", help="output prefix (default <map>-seed<seed>)")
    r.set_defaults(func=cmd_run)

    d = sub.add_parser("render", help="draw a trace as an SVG plot")
    d.add_argument("trace", help="trace file written by 'run' (.json or .csv)")
    d.add_argument("--level", help="level for spatial plots (defaults to the trace's built-in map)")
    d.add_argument("--mode", choices=("spatial", "temporal"), default="spatial")
    d.add_argument("--out", help="SVG path")
    d.set_defaults(func=cmd_render)

    e = sub.add_parser("ensemble", help="run many seeds and aggregate a report")
    common(e)
    group = e.add_mutually_exclusive_group(required=True)
    group.add_argument("--runs", type=int, help="number of consecutive seeds, starting at --seed")
    group.add_argument("--seeds", help="comma-separated seed list")
    e.add_argument("--seed", type=int, help="first seed for --runs (default 0)")
    e.add_argument("--envelope", help="JSON envelope; default accepts everything")
    e.add_argument("--workers", type=int, default=None, help="worker processes")
    e.add_argument("--traces", help="directory for per-run CSV traces")
    e.add_argument("--out", help="report path (default <map>-ensemble.json)")
    e.set_defaults(func=cmd_ensemble)

    m = sub.add_parser("maps", help="write the built-in level files")
    m.add_argument("--out", help="target directory (default .)")
    m.set_defaults(func=cmd_maps)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"uxagent: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
