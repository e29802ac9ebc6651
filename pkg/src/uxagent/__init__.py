"""Grid-world playtesting agents with a valence/arousal core-affect model."""

from .affect import AffectState, AppraisalConfig
from .agent import AgentWorldModel, choose_action, nearest_frontier, plan_path
from .config import RunConfig, load_config
from .engine import SimEvent, WorldState, visible_cells
from .ensemble import EnsembleReport, aggregate, run_many
from .level import Level, builtin, parse_level, serialize_level, validate
from .simulation import Simulation, run_simulation
from .trace import AffectEnvelope, RunResult, TraceRecord, evaluate_envelope, quadrant_occupancy
from .viz import AffectPalette, affect_to_color, render_spatial, render_temporal

__all__ = [
    "AffectEnvelope",
    "AffectPalette",
    "AffectState",
    "AgentWorldModel",
    "AppraisalConfig",
    "EnsembleReport",
    "Level",
    "RunConfig",
    "RunResult",
    "SimEvent",
    "Simulation",
    "TraceRecord",
    "WorldState",
    "affect_to_color",
    "aggregate",
    "builtin",
    "choose_action",
    "evaluate_envelope",
    "load_config",
    "nearest_frontier",
    "parse_level",
    "plan_path",
    "quadrant_occupancy",
    "render_spatial",
    "render_temporal",
    "run_many",
    "run_simulation",
    "serialize_level",
    "validate",
    "visible_cells",
]
