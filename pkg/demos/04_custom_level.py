"""Write a level by hand, validate it and replay one run.

    python demos/04_custom_level.py
"""

# %%
from uxagent import parse_level, run_simulation, validate

TEXT = """\
labrecruits-level v1
# a corridor, a decoy, and a locked side room with the chair
#########
#S..b..D#
#.#####.#
#...b...#
#####G###
#########
button x1 4 1
door d1 7 1
button b1 4 3
goal chair 5 4
link b1 -> d1
"""

# %% [markdown]
# The chair sits just below the lower corridor, so the door is not actually
# needed.  The agent presses b1 anyway: once it knows a button that opens a
# closed door, pressing it ranks above exploring.  Things visible from the
# spawn cell (the decoy and the door) do not count as new.

# %%
level = parse_level(TEXT)
print("violations:", validate(level) or "none")
run = run_simulation(level)
for rec in run.trace:
    if rec.events:
        print(f"t={rec.time_s:5.1f}s  pos={rec.pos}  v={rec.valence:+.1f} a={rec.arousal:+.1f}  {', '.join(rec.events)}")
print(run.outcome, "after", run.duration_s, "s")
