"""Walk through the four built-in maps and look at how the agent feels.

Run from anywhere:  python demos/01_four_maps.py [output-dir]
"""

# %%
import sys
from pathlib import Path

from uxagent import builtin, quadrant_occupancy, render_spatial, render_temporal, run_simulation

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo-output")
out.mkdir(parents=True, exist_ok=True)

# %% [markdown]
# Map 1 is a plain maze with one door, its button and the chair behind it.
# Nothing interesting shows up for a long time, so both valence and arousal
# sag every ten seconds until the door and button finally come into view.

# %%
for map_id in ("M1", "M2", "M3", "M4"):
    level = builtin(map_id)
    run = run_simulation(level, map_id=map_id)
    q = quadrant_occupancy(run.trace)
    print(
        f"{map_id}: {run.outcome} after {run.duration_s:5.1f} s, "
        f"final (v, a) = ({run.final.valence:+.1f}, {run.final.arousal:+.1f}), "
        f"time in quadrants ++ {q['pp']:.0%}  +- {q['pm']:.0%}  -+ {q['mp']:.0%}  -- {q['mm']:.0%}"
    )
    (out / f"{map_id}-space.svg").write_text(render_spatial(level, run))
    (out / f"{map_id}-time.svg").write_text(render_temporal(run))

# %% [markdown]
# Map 2 is the same maze with six decoy buttons sprinkled along the route.
# They do nothing, but each one is new, so arousal keeps getting topped up
# while valence still drifts down.  Map 3 hands out doors regularly and
# stays positive on both axes.  Map 4 is a room of 28 doors; with a random
# agent the outcome depends on which door it tries first (see demo 02).

# %%
print(f"plots written to {out.resolve()}")
