"""Remaining acceptance-shaped probes: 588b, 590, 591, 592 at n=24 scale."""
import numpy as np

from driftmoo.detection import DetectionConfig
from driftmoo.engine import RunConfig
from driftmoo.harness import execute
from driftmoo.mdm import UtilitySpec
from driftmoo.problems import ProblemSpec


def trace(kind, m, n, relevant, weights, seed, *, reduction=True, noise=False,
          gamma=0.0, reset="none", initial_mask=None, learning=True):
    cfg = RunConfig(
        problem=ProblemSpec(kind, m, n=n),
        uf=UtilitySpec(kind="tchebychef", relevant=relevant,
                       relevant_weights=weights, gamma=gamma),
        learning=learning,
        detection=DetectionConfig(method="univariate", reduction=reduction,
                                  noise=noise, reset=reset),
        initial_mask=initial_mask,
        seed=seed,
    )
    return execute(cfg)


RMNK = dict(kind="rmnk", m=4, n=24, relevant=(1, 2), weights=(0.55, 0.45))


def finals(**kw):
    return np.asarray([trace(seed=s, **RMNK, **kw).rows[-1].utility
                       for s in range(1, 11)])


print("=== 588b: reduction=1 vs reduction=0 final means (rmnk n=24) ===")
f_red1 = finals()
f_red0_full = finals(reduction=False)
f_red0_24 = finals(reduction=False, initial_mask=(2, 4))
print(f"red1 full-start      : {f_red1.mean():.4f}")
print(f"red0 all-active      : {f_red0_full.mean():.4f}   red1-red0 = "
      f"{f_red1.mean() - f_red0_full.mean():+.4f}")
print(f"red0 fixed (2,4)     : {f_red0_24.mean():.4f}   red1-red0 = "
      f"{f_red1.mean() - f_red0_24.mean():+.4f}")

print()
print("=== 591: drift orderings (rmnk n=24, 10 seeds) ===")
for noise in (False, True):
    row = {}
    for reset in ("none", "fixed", "dynamic"):
        row[reset] = finals(gamma=1.0, reset=reset, noise=noise).mean()
    g0_none = finals(gamma=0.0, reset="none", noise=noise).mean()
    g0_fixed = finals(gamma=0.0, reset="fixed", noise=noise).mean()
    o1 = row["dynamic"] >= row["none"] >= row["fixed"]
    o2 = g0_none >= g0_fixed
    print(f"noise={int(noise)} g1: dyn={row['dynamic']:.4f} none={row['none']:.4f} "
          f"fixed={row['fixed']:.4f} ordering={'OK' if o1 else 'FAIL'} | "
          f"g0: none={g0_none:.4f} fixed={g0_fixed:.4f} "
          f"{'OK' if o2 else 'FAIL'}")

print()
print("=== 590: m=10 paired evaluation savings after interaction 1 ===")
for n10 in (20, 60):
    savings = []
    for seed in range(1, 11):
        kw = dict(kind="rmnk", m=10, n=n10, relevant=(1, 2),
                  weights=(0.55, 0.45), seed=seed)
        t1 = trace(reduction=True, **kw)
        t0 = trace(reduction=False, **kw)
        e1 = t1.rows[-1].evaluations - t1.rows[1].evaluations
        e0 = t0.rows[-1].evaluations - t0.rows[1].evaluations
        savings.append(1.0 - e1 / e0)
    arr = np.asarray(savings)
    print(f"n={n10}: savings mean={arr.mean():.3f} min={arr.min():.3f} "
          f"(need >= 0.5 each? mean-level) per-seed: "
          f"{' '.join(f'{s:.2f}' for s in arr)}")

print()
print("=== 592: dtlz7 noise ordering (10 seeds) ===")
f_n0 = np.asarray([trace("dtlz7", 4, None, (1, 4), (0.55, 0.1125), s).rows[-1].utility
                   for s in range(1, 11)])
f_n1 = np.asarray([trace("dtlz7", 4, None, (1, 4), (0.55, 0.1125), s,
                         noise=True).rows[-1].utility for s in range(1, 11)])
print(f"noise=0 mean={f_n0.mean():.4f}  noise=1 mean={f_n1.mean():.4f}  "
      f"diff={f_n1.mean() - f_n0.mean():+.6f}  byte-equal={np.array_equal(f_n0, f_n1)}")
