"""Pure-NumPy implementations of the hot kernels.

These mirror the compiled versions in ``_speedups.pyx`` and are selected at
import time when the extension is unavailable or explicitly disabled.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def front_ranks(values: np.ndarray) -> np.ndarray:
    """Front index per row (0 = non-dominated) under minimization.

    Equivalent to peeling successive non-dominated fronts from the matrix.
    """
    f = np.asarray(values, dtype=np.float64)
    n = f.shape[0]
    le = (f[:, None, :] <= f[None, :, :]).all(axis=2)
    lt = (f[:, None, :] < f[None, :, :]).any(axis=2)
    dom = le & lt  # dom[i, j]: row i dominates row j
    n_dom = dom.sum(axis=0).astype(np.int64)
    ranks = np.full(n, -1, dtype=np.int32)
    alive = np.ones(n, dtype=bool)
    level = 0
    while alive.any():
        front = alive & (n_dom == 0)
        ranks[front] = level
        n_dom -= dom[front].sum(axis=0)
        n_dom[front] = -1
        alive &= ~front
        level += 1
    return ranks


def crowding(values: np.ndarray) -> np.ndarray:
    """Crowding distance over the rows of one front.

    Boundary rows get +inf per objective with spread; a zero-range objective
    contributes nothing (and marks no boundaries).
    """
    f = np.asarray(values, dtype=np.float64)
    n = f.shape[0]
    if n <= 2:
        return np.full(n, np.inf)
    d = np.zeros(n)
    for j in range(f.shape[1]):
        order = np.argsort(f[:, j], kind="stable")
        col = f[order, j]
        span = col[-1] - col[0]
        if span <= 0.0:
            continue
        d[order[0]] = np.inf
        d[order[-1]] = np.inf
        d[order[1:-1]] += (col[2:] - col[:-2]) / span
    return d


def rmnk_eval(
    tables: np.ndarray,
    links: np.ndarray,
    genomes: np.ndarray,
    objectives: np.ndarray,
) -> np.ndarray:
    """Mean contribution-table lookup per genome for the selected objectives.

    ``links[p]`` lists the bit positions feeding position p's lookup (own bit
    first); the pattern index packs those bits little-endian.
    """
    x = np.asarray(genomes)
    n_pos = links.shape[0]
    idx = np.zeros((x.shape[0], n_pos), dtype=np.int64)
    for j in range(links.shape[1]):
        idx |= x[:, links[:, j]].astype(np.int64) << j
    rows = np.arange(n_pos)
    out = np.empty((x.shape[0], len(objectives)), dtype=np.float64)
    for c, obj in enumerate(objectives):
        out[:, c] = tables[obj][rows[None, :], idx].mean(axis=1)
    return out
