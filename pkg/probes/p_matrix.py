"""Config matrix probe: per-seed u0 -> u9 deltas for candidate DM weights."""
import numpy as np

from driftmoo.detection import DetectionConfig
from driftmoo.engine import RunConfig
from driftmoo.harness import execute
from driftmoo.mdm import UtilitySpec
from driftmoo.problems import ProblemSpec

SEEDS = range(1, 11)

CONFIGS = [
    ("rmnk  w=(0.55,0.45) noise=0", "rmnk", (1, 2), (0.55, 0.45), False),
    ("rmnk  w=(0.55,0.45) noise=1", "rmnk", (1, 2), (0.55, 0.45), True),
    ("rmnk  w=(0.85,0.15) noise=0", "rmnk", (1, 2), (0.85, 0.15), False),
    ("rmnk  w=(0.85,0.15) noise=1", "rmnk", (1, 2), (0.85, 0.15), True),
    ("dtlz2 w=(0.55,0.11) noise=0", "dtlz2", (1, 4), (0.55, 0.11), False),
    ("dtlz2 w=(0.55,0.11) noise=1", "dtlz2", (1, 4), (0.55, 0.11), True),
    ("dtlz2 w=(0.55,0.03) noise=0", "dtlz2", (1, 4), (0.55, 0.03), False),
]

for label, kind, relevant, weights, noise in CONFIGS:
    deltas = []
    line = []
    masks = []
    for seed in SEEDS:
        cfg = RunConfig(
            problem=ProblemSpec(kind, 4),
            uf=UtilitySpec(kind="tchebychef", relevant=relevant,
                           relevant_weights=weights),
            learning=True,
            detection=DetectionConfig(method="univariate", reduction=True,
                                      noise=noise),
            seed=seed,
        )
        tr = execute(cfg)
        u0 = tr.rows[0].utility
        u9 = tr.rows[-1].utility
        deltas.append(u9 - u0)
        line.append(f"{u9 - u0:+.4f}")
        masks.append("".join(str(i) for i in tr.rows[-1].mask))
    arr = np.asarray(deltas)
    craters = int((arr < -0.02).sum())
    print(f"{label}  mean_delta={arr.mean():+.4f}  craters={craters}")
    print(f"    per-seed: {' '.join(line)}")
    print(f"    final masks: {' '.join(masks)}")
