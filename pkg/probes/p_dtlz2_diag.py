"""Probe: per-interaction mask/detected/utility on dtlz2 m=4 learning runs."""
from driftmoo.engine import RunConfig
from driftmoo.detection import DetectionConfig
from driftmoo.harness import execute, default_utility
from driftmoo.problems import ProblemSpec

for seed in (1, 2, 3):
    cfg = RunConfig(
        problem=ProblemSpec(kind="dtlz2", m=4),
        uf=default_utility("dtlz2"),
        learning=True,
        detection=DetectionConfig(method="univariate", reduction=True),
        initial_mask=None,
        seed=seed,
    )
    tr = execute(cfg)
    print(f"--- seed {seed}")
    for row in tr.rows:
        print(f"  i={row.interaction} u={row.utility:.4f} mask={row.mask} "
              f"det={row.detected}")
    for m in tr.models:
        print(f"  fit i={m['interaction']} feat={m['feature_indices']} "
              f"w={['%.3f' % v for v in m['weights']]} conv={m['converged']}")
