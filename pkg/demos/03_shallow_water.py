"""Shallow water: well-balance and a rotating two-vortex flow.

First the lake at rest over a bump is evolved to t = 20; the discrete steady
state is preserved to rounding error. Then the merging-vortices flow on a
64 x 64 grid is run to t = 2, printing the relative change of mass, absolute
vorticity, entropy and enstrophy for the entropy-stable and entropy-conserving
schemes.

Run: python3 demos/03_shallow_water.py
"""

import numpy as np

from dpsbp import build_problem, run

for v in ("entropy_stable", "entropy_conserving", "linearly_stable"):
    prob = build_problem("lake-at-rest", 128, v)
    rec = run(prob, stride=1000)
    err = np.max(np.abs(rec.final_state - prob.initial)) / np.max(np.abs(prob.initial))
    print(f"lake at rest, {v:20s}: relative max deviation at t=20 {err:.1e}")

print()
for v in ("entropy_stable", "entropy_conserving"):
    prob = build_problem("merging-vortices", 64, v, t_final=2.0)
    prob.snapshot_times = ()
    s = run(prob, stride=20).series
    changes = ", ".join(f"{c} {s.relative(c)[-1]:+.2e}"
                        for c in ("mass", "absolute_vorticity", "entropy", "enstrophy"))
    print(f"merging vortices, {v}: {changes}")
