"""Standalone SVG plots of a run: affect over space and affect over time.

The spatial plot draws the level and one dot per trace record, filled with
the affect colour of that tick. The temporal plot scatters every record in
the valence/arousal plane, shading dots from black (first tick) to light
blue (last tick). Output is plain SVG 1.1 text with no external resources.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .level import Level
from .trace import RunResult

RGB = tuple[int, int, int]

CELL_PX = 24
TEMPORAL_PX = 640
TEMPORAL_MARGIN = 48
LIGHT_BLUE: RGB = (120, 180, 255)
BLACK: RGB = (0, 0, 0)

_SVG_OPEN = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    'width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n'
)


def _check_rgb(c: RGB) -> None:
    if len(c) != 3 or any(not isinstance(x, int) or not 0 <= x <= 255 for x in c):
        raise ValueError(f"not an 8-bit RGB triple: {c!r}")


@dataclass(frozen=True)
class AffectPalette:
    """Corner colours of the affect square, indexed by (valence, arousal)."""

    lo_lo: RGB = (28, 46, 148)  # deep blue
    lo_hi: RGB = (232, 84, 32)  # red-orange
    hi_lo: RGB = (22, 166, 138)  # teal-green
    hi_hi: RGB = (248, 218, 44)  # yellow
    lo: float = -5.0
    hi: float = 5.0

    def __post_init__(self) -> None:
        for c in (self.lo_lo, self.lo_hi, self.hi_lo, self.hi_hi):
            _check_rgb(c)
        if not self.lo < self.hi:
            raise ValueError("palette range is empty")


DEFAULT_PALETTE = AffectPalette()


def hex_color(c: RGB) -> str:
    return "#{:02x}{:02x}{:02x}".format(*c)


def _round(x: float) -> int:
    # half-up, so results do not depend on banker's rounding
    return int(math.floor(x + 0.5))


def affect_to_color(valence: float, arousal: float, palette: AffectPalette = DEFAULT_PALETTE) -> RGB:
    """Bilinear blend of the four palette corners."""
    lo, hi = palette.lo, palette.hi
    for name, value in (("valence", valence), ("arousal", arousal)):
        if not lo <= value <= hi:
            raise ValueError(f"{name} {value} outside [{lo}, {hi}]")
    u = (valence - lo) / (hi - lo)
    w = (arousal - lo) / (hi - lo)
    out = []
    for i in range(3):
        low_v = palette.lo_lo[i] * (1 - w) + palette.lo_hi[i] * w
        high_v = palette.hi_lo[i] * (1 - w) + palette.hi_hi[i] * w
        out.append(_round(low_v * (1 - u) + high_v * u))
    return (out[0], out[1], out[2])


def lerp_color(a: RGB, b: RGB, t: float) -> RGB:
    return tuple(_round(x + (y - x) * t) for x, y in zip(a, b))  # type: ignore[return-value]


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


# ---------------------------------------------------------------------------
# spatial plot

_WALL = "#3a3a3a"
_FLOOR = "#f4f1ea"
_DOOR_CLOSED = "#8b4513"
_DOOR_OPEN = "#d9b38c"
_BUTTON_LINKED = "#2e7d32"
_BUTTON_DECOY = "#9e9e9e"
_GOAL = "#c62828"
_SPAWN = "#1565c0"
_LEGEND_H = 132


def _opened_doors(run: RunResult) -> set[str]:
    return {tag.split(":", 1)[1] for r in run.trace for tag in r.events if tag.startswith("door_opened:")}


def render_spatial(level: Level, run: RunResult, palette: AffectPalette = DEFAULT_PALETTE) -> str:
    """Map with the visited cells dotted in their affect colour, plus a legend."""
    for r in run.trace:
        if not level.in_bounds(r.pos):
            raise ValueError(f"trace tick {r.tick} at {r.pos} lies outside the {level.width}x{level.height} level")
    W = max(level.width * CELL_PX, 360)
    H = level.height * CELL_PX + _LEGEND_H
    opened = _opened_doors(run)
    half = CELL_PX / 2

    parts = [_SVG_OPEN.format(w=W, h=H)]
    parts.append(f'<title>{escape(run.map_id or "level")} seed {run.seed}: affect in space</title>\n')
    parts.append(f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>\n')
    parts.append(
        f'<rect x="0" y="0" width="{level.width * CELL_PX}" height="{level.height * CELL_PX}" fill="{_FLOOR}"/>\n'
    )

    parts.append('<g class="walls">\n')
    for y, row in enumerate(level.cells):
        for x in range(len(row)):
            if level.is_wall((x, y)):
                parts.append(
                    f'<rect class="wall" x="{x * CELL_PX}" y="{y * CELL_PX}" '
                    f'width="{CELL_PX}" height="{CELL_PX}" fill="{_WALL}"/>\n'
                )
    parts.append("</g>\n")

    parts.append('<g class="objects">\n')
    for obj in sorted(level.objects, key=lambda o: o.id):
        x, y = obj.position
        px, py = x * CELL_PX, y * CELL_PX
        oid = escape(obj.id)
        if obj.kind.value == "door":
            is_open = obj.id in opened
            parts.append(
                f'<rect class="door {"open" if is_open else "closed"}" data-id="{oid}" '
                f'x="{px + 2}" y="{py + 2}" width="{CELL_PX - 4}" height="{CELL_PX - 4}" '
                f'fill="{_DOOR_OPEN if is_open else _DOOR_CLOSED}"'
                + (' stroke="#8b4513" stroke-dasharray="3,2"' if is_open else "")
                + "/>\n"
            )
        elif obj.kind.value == "button":
            fill = _BUTTON_LINKED if obj.linked else _BUTTON_DECOY
            parts.append(
                f'<rect class="button{"" if obj.linked else " decoy"}" data-id="{oid}" '
                f'x="{px + 6}" y="{py + 6}" width="{CELL_PX - 12}" height="{CELL_PX - 12}" fill="{fill}"/>\n'
            )
        else:
            cx, cy = px + half, py + half
            corners = [(cx, py + 3), (px + CELL_PX - 3, cy), (cx, py + CELL_PX - 3), (px + 3, cy)]
            pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in corners)
            parts.append(f'<polygon class="goal" data-id="{oid}" points="{pts}" fill="{_GOAL}"/>\n')
    sx, sy = level.spawn
    parts.append(
        f'<rect class="spawn" x="{sx * CELL_PX + 1}" y="{sy * CELL_PX + 1}" width="{CELL_PX - 2}" '
        f'height="{CELL_PX - 2}" fill="none" stroke="{_SPAWN}" stroke-width="2"/>\n'
    )
    parts.append("</g>\n")

    # path through distinct consecutive cells
    cells = []
    for r in run.trace:
        if not cells or cells[-1] != r.pos:
            cells.append(r.pos)
    if len(cells) > 1:
        pts = " ".join(f"{_fmt(x * CELL_PX + half)},{_fmt(y * CELL_PX + half)}" for x, y in cells)
        parts.append(
            f'<polyline class="path" points="{pts}" fill="none" stroke="#555555" '
            f'stroke-width="1.5" stroke-opacity="0.6"/>\n'
        )

    parts.append('<g class="trace">\n')
    for r in run.trace:
        x, y = r.pos
        fill = hex_color(affect_to_color(r.valence, r.arousal, palette))
        parts.append(
            f'<circle class="trace-point" data-tick="{r.tick}" cx="{_fmt(x * CELL_PX + half)}" '
            f'cy="{_fmt(y * CELL_PX + half)}" r="5" fill="{fill}" stroke="#000000" stroke-width="0.3"/>\n'
        )
    parts.append("</g>\n")

    parts.append(_spatial_legend(level.height * CELL_PX, palette))
    parts.append("</svg>\n")
    return "".join(parts)


def _spatial_legend(top: int, palette: AffectPalette) -> str:
    parts = [f'<g class="legend" transform="translate(22,{top + 8})">\n']
    steps = 5
    sw = 14
    for i in range(steps):
        for j in range(steps):
            v = palette.lo + (palette.hi - palette.lo) * i / (steps - 1)
            a = palette.hi - (palette.hi - palette.lo) * j / (steps - 1)
            fill = hex_color(affect_to_color(v, a, palette))
            parts.append(f'<rect x="{i * sw}" y="{j * sw}" width="{sw}" height="{sw}" fill="{fill}"/>\n')
    side = steps * sw
    parts.append(f'<text x="{side // 2}" y="{side + 14}" font-size="10" text-anchor="middle">valence</text>\n')
    parts.append(
        f'<text x="-6" y="{side // 2}" font-size="10" text-anchor="middle" '
        f'transform="rotate(-90,-6,{side // 2})">arousal</text>\n'
    )
    entries = [
        (_WALL, "wall"),
        (_DOOR_CLOSED, "closed door"),
        (_DOOR_OPEN, "opened door"),
        (_BUTTON_LINKED, "button"),
        (_BUTTON_DECOY, "decoy button"),
        (_GOAL, "goal"),
    ]
    for k, (color, label) in enumerate(entries):
        col, row = divmod(k, 3)
        x = side + 24 + col * 130
        y = row * 20
        parts.append(f'<rect x="{x}" y="{y}" width="12" height="12" fill="{color}"/>\n')
        parts.append(f'<text x="{x + 18}" y="{y + 10}" font-size="11">{label}</text>\n')
    parts.append(
        f'<rect x="{side + 24}" y="60" width="12" height="12" fill="none" stroke="{_SPAWN}" stroke-width="2"/>\n'
        f'<text x="{side + 42}" y="70" font-size="11">spawn</text>\n'
    )
    parts.append("</g>\n")
    return "".join(parts)


# ---------------------------------------------------------------------------
# temporal plot


def render_temporal(
    run: RunResult,
    end_color: RGB = LIGHT_BLUE,
    lo: float = -5.0,
    hi: float = 5.0,
) -> str:
    """Affect-space scatter, one dot per tick, black fading to ``end_color``."""
    _check_rgb(end_color)
    trace = run.trace
    if not trace:
        raise ValueError("cannot plot an empty trace")
    size, m = TEMPORAL_PX, TEMPORAL_MARGIN
    span = size - 2 * m

    def sx(v: float) -> float:
        return m + (v - lo) / (hi - lo) * span

    def sy(a: float) -> float:
        return m + (hi - a) / (hi - lo) * span

    parts = [_SVG_OPEN.format(w=size, h=size)]
    parts.append(f'<title>{escape(run.map_id or "run")} seed {run.seed}: affect in time</title>\n')
    parts.append(f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>\n')
    parts.append(
        f'<rect class="frame" x="{m}" y="{m}" width="{span}" height="{span}" fill="none" stroke="#888888"/>\n'
    )
    parts.append('<g class="grid" stroke="#bbbbbb" stroke-width="1">\n')
    parts.append(f'<line x1="{_fmt(sx(0))}" y1="{m}" x2="{_fmt(sx(0))}" y2="{m + span}"/>\n')
    parts.append(f'<line x1="{m}" y1="{_fmt(sy(0))}" x2="{m + span}" y2="{_fmt(sy(0))}"/>\n')
    parts.append("</g>\n")
    parts.append('<g class="ticks" font-size="11" text-anchor="middle">\n')
    for k in range(int(math.ceil(lo)), int(math.floor(hi)) + 1):
        parts.append(f'<text x="{_fmt(sx(k))}" y="{m + span + 16}">{k}</text>\n')
        parts.append(f'<text x="{m - 14}" y="{_fmt(sy(k) + 4)}">{k}</text>\n')
    parts.append("</g>\n")
    parts.append(f'<text x="{size // 2}" y="{size - 8}" font-size="13" text-anchor="middle">valence</text>\n')
    parts.append(
        f'<text x="14" y="{size // 2}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90,14,{size // 2})">arousal</text>\n'
    )

    n = len(trace)
    parts.append('<g class="trace">\n')
    for i, r in enumerate(trace):
        if not (lo <= r.valence <= hi and lo <= r.arousal <= hi):
            raise ValueError(f"tick {r.tick} affect ({r.valence}, {r.arousal}) outside [{lo}, {hi}]")
        t = i / (n - 1) if n > 1 else 0.0
        fill = hex_color(lerp_color(BLACK, end_color, t))
        parts.append(
            f'<circle class="dot" data-tick="{r.tick}" cx="{_fmt(sx(r.valence))}" '
            f'cy="{_fmt(sy(r.arousal))}" r="3.5" fill="{fill}"/>\n'
        )
    parts.append("</g>\n</svg>\n")
    return "".join(parts)
