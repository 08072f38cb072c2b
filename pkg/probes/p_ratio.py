"""Probe: dtlz2 m=4 weight-ratio sweep — does the learning arm rise?"""
import numpy as np
from driftmoo.engine import RunConfig
from driftmoo.detection import DetectionConfig
from driftmoo.harness import execute
from driftmoo.mdm import UtilitySpec
from driftmoo.problems import ProblemSpec

SEEDS = range(1, 11)

def arm(weights, learning, detection, reduction, mask):
    u0s, u9s = [], []
    for s in SEEDS:
        cfg = RunConfig(
            problem=ProblemSpec(kind="dtlz2", m=4),
            uf=UtilitySpec(kind="tchebychef", relevant=(1, 4),
                           relevant_weights=weights),
            learning=learning,
            detection=DetectionConfig(method=detection, reduction=reduction),
            initial_mask=mask,
            seed=s,
        )
        tr = execute(cfg)
        u0s.append(tr.rows[0].utility)
        u9s.append(tr.rows[-1].utility)
    return np.array(u0s), np.array(u9s)

for w in ((0.55, 0.11), (0.55, 0.055), (0.55, 0.0458)):
    a0, a9 = arm(w, False, "none", True, None)
    b0, b9 = arm(w, True, "univariate", True, None)
    c0, c9 = arm(w, True, "univariate", False, (2, 4))
    rise = (b9 - b0 > 0).sum()
    print(f"w={w}  ideal {a0.mean():.4f}->{a9.mean():.4f} | "
          f"univ r1 {b0.mean():.4f}->{b9.mean():.4f} (rises {rise}/10) | "
          f"univ r0 {c0.mean():.4f}->{c9.mean():.4f}")
