"""Probe: interior-optimum weights on dtlz1/dtlz2 — headroom and rise."""
import numpy as np
from driftmoo.engine import RunConfig
from driftmoo.detection import DetectionConfig
from driftmoo.harness import execute, default_utility
from driftmoo.problems import ProblemSpec

SEEDS = range(1, 6)

def arm(kind, m, learning, detection, reduction, mask, seeds=SEEDS, gamma=0.0, noise=False):
    u0s, u9s = [], []
    for s in seeds:
        cfg = RunConfig(
            problem=ProblemSpec(kind=kind, m=m),
            uf=default_utility(kind, gamma=gamma),
            learning=learning,
            detection=DetectionConfig(method=detection, reduction=reduction, noise=noise),
            initial_mask=mask,
            seed=s,
        )
        tr = execute(cfg)
        u0s.append(tr.rows[0].utility)
        u9s.append(tr.rows[-1].utility)
    return float(np.mean(u0s)), float(np.mean(u9s))

for kind in ("dtlz2", "dtlz1"):
    a = arm(kind, 4, False, "none", True, None)
    b = arm(kind, 4, True, "univariate", True, None)
    c = arm(kind, 4, True, "univariate", False, (2, 4))
    print(f"{kind} m=4  ideal      u0={a[0]:.4f} u9={a[1]:.4f}")
    print(f"{kind} m=4  univ red=1 u0={b[0]:.4f} u9={b[1]:.4f}")
    print(f"{kind} m=4  univ red=0 u0={c[0]:.4f} u9={c[1]:.4f}")
