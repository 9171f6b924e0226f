"""
Monte Carlo view of the zero-one behaviour
==========================================

The decomposition probability tends to 1 or 0 depending on the two
conditions.  This script estimates it for three two- or three-block graphons
and plots the frequencies with Wilson intervals.
"""

# %%
# Three regimes
# -------------
#
# * the three-block graphon satisfies both conditions,
# * a bipartite two-block graphon has no odd cycle,
# * the tight two-block graphon puts too much mass on the loopless block.

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from hgraphon import run_experiment, validate_step_graphon

regimes = {
    "both conditions": validate_step_graphon(
        ["0", "0.3", "0.6", "1"], [["1", "0.7", "0"], ["0.7", "0", "0.4"], ["0", "0.4", "1"]]),
    "bipartite": validate_step_graphon(["0", "0.3", "1"], [[0, 1], [1, 0]]),
    "outside polytope": validate_step_graphon(["0", "0.3", "1"], [[1, 1], [1, 0]]),
}
ns = [10, 20, 50, 100]

# %%
# Run the experiments
# -------------------
#
# Per-trial seeds come from a hash of (seed, n, trial), so the table is the
# same with any number of worker threads.

fig, ax = plt.subplots(figsize=(6, 4))
for label, g in regimes.items():
    rep = run_experiment(g, ns, trials=60, seed=0, workers=4)
    print(label)
    print(rep.to_csv())
    freq = [r.frequency for r in rep.rows]
    lo = [r.interval[0] for r in rep.rows]
    hi = [r.interval[1] for r in rep.rows]
    ax.plot(ns, freq, marker="o", label=label)
    ax.fill_between(ns, lo, hi, alpha=0.2, lw=0)

ax.set_xscale("log")
ax.set_xlabel("n")
ax.set_ylabel("decomposition frequency")
ax.legend()
fig.savefig("zero_one.png", dpi=120)
