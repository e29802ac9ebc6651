"""Map 4: the lucky agent and the unlucky one.

All 56 buttons and doors are visible from the spawn point, so nothing is
ever new again and arousal can only fall.  Scripting the button order shows
the two extremes.

    python demos/02_map4_best_and_worst.py [output-dir]
"""

# %%
import sys
from pathlib import Path

from uxagent import RunConfig, builtin, render_temporal, run_simulation

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo-output")
out.mkdir(parents=True, exist_ok=True)
level = builtin("M4")

# %% [markdown]
# Best case: the agent presses the chair's button first and walks straight in.
# The run ends before the first ten-second idle window, so arousal never moves.

# %%
best = run_simulation(level, RunConfig(door_order="goal-first"), "M4")
print(f"goal-first: {best.duration_s} s, arousal values seen {sorted({r.arousal for r in best.trace})}")

# %% [markdown]
# Worst case: every other door is opened before the right one.  Each door
# pushes valence up (it saturates at +5), while arousal steps down every ten
# seconds for the whole run.

# %%
worst = run_simulation(level, RunConfig(door_order="goal-last"), "M4")
doors = [t for r in worst.trace for t in r.events if t.startswith("door_opened")]
print(f"goal-last: {worst.duration_s} s, {len(doors)} doors, final (v, a) = ({worst.final.valence}, {worst.final.arousal})")

# %%
for name, run in (("best", best), ("worst", worst)):
    (out / f"M4-{name}-time.svg").write_text(render_temporal(run))
print(f"plots written to {out.resolve()}")
