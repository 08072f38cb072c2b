"""591 diagnostics: mask trajectories and update events under full drift."""
import numpy as np

from driftmoo.detection import DetectionConfig
from driftmoo.engine import RunConfig
from driftmoo.harness import execute
from driftmoo.mdm import UtilitySpec
from driftmoo.problems import ProblemSpec


def trace(seed, reset, *, tau=0.5, noise=False, n=24):
    cfg = RunConfig(
        problem=ProblemSpec("rmnk", 4, n=n),
        uf=UtilitySpec(kind="tchebychef", relevant=(1, 2),
                       relevant_weights=(0.55, 0.45), gamma=1.0),
        learning=True,
        detection=DetectionConfig(method="univariate", reduction=True,
                                  tau=tau, noise=noise, reset=reset),
        seed=seed,
    )
    return execute(cfg)


print("=== per-seed anatomy, tau=0.5 noise=0 n=24, seeds 1-4 ===")
for seed in range(1, 5):
    for reset in ("none", "dynamic", "fixed"):
        tr = trace(seed, reset)
        cells = []
        for row in tr.rows[1:]:
            mask = "".join(map(str, row.mask))
            flag = "*" if row.update_needed else " "
            cells.append(f"i{row.interaction}:{mask}{flag}u={row.utility:+.3f}")
        print(f"seed {seed} {reset:7s} " + " ".join(cells))
    print()

print("=== ordering vs (tau, noise), 10 seeds ===")
for tau in (0.3, 0.5, 0.7):
    for noise in (False, True):
        means = {}
        for reset in ("none", "fixed", "dynamic"):
            f = [trace(s, reset, tau=tau, noise=noise).rows[-1].utility
                 for s in range(1, 11)]
            means[reset] = float(np.mean(f))
        ok = means["dynamic"] >= means["none"] >= means["fixed"]
        print(f"tau={tau} noise={int(noise)}: dyn={means['dynamic']:.4f} "
              f"none={means['none']:.4f} fixed={means['fixed']:.4f}  "
              f"{'OK' if ok else 'FAIL'}")
