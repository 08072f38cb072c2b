"""rmnk genome-length scaling: headroom, trend deltas, mask recovery."""
import numpy as np

from driftmoo.detection import DetectionConfig
from driftmoo.engine import RunConfig
from driftmoo.harness import execute
from driftmoo.mdm import UtilitySpec
from driftmoo.problems import ProblemSpec


def run_one(n, seed, *, learning=True, noise=False):
    cfg = RunConfig(
        problem=ProblemSpec("rmnk", 4, n=n),
        uf=UtilitySpec(kind="tchebychef", relevant=(1, 2),
                       relevant_weights=(0.55, 0.45)),
        learning=learning,
        detection=DetectionConfig(method="univariate", reduction=True,
                                  noise=noise),
        seed=seed,
    )
    return execute(cfg)


for n in (24, 32, 64):
    ideal = [run_one(n, s, learning=False) for s in range(1, 6)]
    head = np.mean([t.rows[-1].utility - t.rows[0].utility for t in ideal])
    u9i = np.mean([t.rows[-1].utility for t in ideal])

    quiet = [run_one(n, s) for s in range(1, 11)]
    dq = np.asarray([t.rows[-1].utility - t.rows[0].utility for t in quiet])

    noisy = [run_one(n, s, noise=True) for s in range(1, 21)]
    dn = np.asarray([t.rows[-1].utility - t.rows[0].utility for t in noisy])
    rec = sum(all(set((1, 2)) <= set(r.mask) for r in t.rows if r.interaction >= 4)
              for t in noisy)

    print(f"n={n:3d}  ideal: mean(u9-u0)={head:+.4f} u9={u9i:.4f}")
    print(f"       univ r1 noise=0 (10 seeds): mean_delta={dq.mean():+.4f} "
          f"craters={int((dq < -0.02).sum())}  worst={dq.min():+.4f}")
    print(f"       per-seed: {' '.join(f'{d:+.3f}' for d in dq)}")
    print(f"       univ r1 noise=1 (20 seeds): mean_delta={dn.mean():+.4f} "
          f"craters={int((dn < -0.02).sum())}  worst={dn.min():+.4f}  "
          f"mask-recovery i>=4: {rec}/20")
