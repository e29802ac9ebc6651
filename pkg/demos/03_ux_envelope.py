"""What share of players would find Map 4 acceptable?

A designer states the experience they want as an affect envelope, here
"arousal never drops below zero", and many seeded agents are checked
against it.

    python demos/03_ux_envelope.py [runs]
"""

# %%
import math
import sys

from uxagent import AffectEnvelope, RunConfig, aggregate, builtin, run_many
from uxagent.trace import EnvelopeWindow

runs = int(sys.argv[1]) if len(sys.argv) > 1 else 40
envelope = AffectEnvelope((EnvelopeWindow(0.0, math.inf, -5, 5, 0, 5),))

# %%
results = run_many(builtin("M4"), RunConfig(), list(range(runs)), map_id="M4")
report = aggregate(results, envelope)
print(f"{report.envelope_pass_fraction:.0%} of {report.runs} agents stayed inside the envelope")

# %% [markdown]
# Passing runs are the quick ones: an agent that reaches the chair within
# the first idle window never loses arousal.  The extremes point at the
# seeds worth replaying.

# %%
by_seed = {s.seed: s for s in report.summaries}
for key, seed in report.extremes.items():
    s = by_seed[seed]
    print(f"{key:>18}: seed {seed:3d}  {s.duration_s:5.1f} s  v {s.final_valence:+.1f}  a {s.final_arousal:+.1f}")
