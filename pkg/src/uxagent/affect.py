"""Core-affect engine: valence and arousal driven by simulation events.

Valence rises on achievements (a door opened, the goal found); arousal rises
on novelty (an interactable seen for the first time). Each dimension sags by
a fixed amount for every full idle window without its own kind of event.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .engine import EventKind, SimEvent

# Values and timers are snapped to these grids after every update so that
# repeated 0.1 s / 0.4 steps do not drift (35 s idle is exactly -1.2).
_VALUE_DIGITS = 12
_TIME_DIGITS = 9

VALENCE_EVENTS = frozenset({EventKind.DOOR_OPENED, EventKind.GOAL_FOUND})
AROUSAL_EVENTS = frozenset({EventKind.NEW_INTERACTABLE})


@dataclass(frozen=True)
class AppraisalConfig:
    valence_gain: float = 1.0
    arousal_gain: float = 1.0
    decay_amount: float = 0.4
    decay_window_s: float = 10.0
    clamp_lo: float = -5.0
    clamp_hi: float = 5.0

    def __post_init__(self) -> None:
        if not self.decay_window_s > 0:
            raise ValueError("decay_window_s must be positive")
        if not self.clamp_lo < self.clamp_hi:
            raise ValueError("clamp_lo must be below clamp_hi")


@dataclass(frozen=True)
class AffectState:
    valence: float = 0.0
    arousal: float = 0.0
    valence_idle_s: float = 0.0
    arousal_idle_s: float = 0.0


def init() -> AffectState:
    """Neutral affect: both dimensions and both idle timers at zero."""
    return AffectState()


def _clamp(value: float, cfg: AppraisalConfig) -> float:
    return round(min(cfg.clamp_hi, max(cfg.clamp_lo, value)), _VALUE_DIGITS)


def apply_events(state: AffectState, events: Iterable[SimEvent], cfg: AppraisalConfig) -> AffectState:
    """Apply one tick's worth of events.

    Increments stack before clamping. An event resets the idle timer of the
    dimension it feeds and leaves the other one alone.
    """
    dv = da = 0.0
    v_hit = a_hit = False
    for ev in events:
        if ev.kind in VALENCE_EVENTS:
            dv += cfg.valence_gain
            v_hit = True
        elif ev.kind in AROUSAL_EVENTS:
            da += cfg.arousal_gain
            a_hit = True
    if not (v_hit or a_hit):
        return state
    return AffectState(
        valence=_clamp(state.valence + dv, cfg) if v_hit else state.valence,
        arousal=_clamp(state.arousal + da, cfg) if a_hit else state.arousal,
        valence_idle_s=0.0 if v_hit else state.valence_idle_s,
        arousal_idle_s=0.0 if a_hit else state.arousal_idle_s,
    )


def tick_decay(state: AffectState, dt: float, cfg: AppraisalConfig) -> AffectState:
    v_idle = round(state.valence_idle_s + dt, _TIME_DIGITS)
    a_idle = round(state.arousal_idle_s + dt, _TIME_DIGITS)
    valence, arousal = state.valence, state.arousal
    if v_idle >= cfg.decay_window_s:
        valence = _clamp(valence - cfg.decay_amount, cfg)
        v_idle = 0.0
    if a_idle >= cfg.decay_window_s:
        arousal = _clamp(arousal - cfg.decay_amount, cfg)
        a_idle = 0.0
    return replace(
        state, valence=valence, arousal=arousal, valence_idle_s=v_idle, arousal_idle_s=a_idle
    )


def step(state: AffectState, events: Iterable[SimEvent], dt: float, cfg: AppraisalConfig) -> AffectState:
    """One tick in the canonical order: events first, then decay."""
    return tick_decay(apply_events(state, events, cfg), dt, cfg)
