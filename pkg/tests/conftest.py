"""Shared test helpers.

``cached_execute`` memoizes full engine runs by their (hashable, frozen)
config so that a test module can reference the same run from several
assertions without paying for it twice.
"""

from __future__ import annotations

import functools

import numpy as np

from driftmoo.engine import RunConfig, RunTrace
from driftmoo.harness import execute
from driftmoo.mdm import RankedSample


@functools.lru_cache(maxsize=None)
def cached_execute(cfg: RunConfig) -> RunTrace:
    return execute(cfg)


def final_utility(trace: RunTrace) -> float:
    return trace.rows[-1].utility


def ranked_sample(vectors, ranks, interaction=1) -> RankedSample:
    return RankedSample(vectors=np.asarray(vectors, dtype=np.float64),
                        ranks=np.asarray(ranks, dtype=np.int64),
                        interaction=interaction)


def rank_by_cost(costs: np.ndarray) -> np.ndarray:
    """1-based ranks (1 = lowest cost), ties broken by input order."""
    order = np.argsort(np.asarray(costs), kind="stable")
    ranks = np.empty(len(order), dtype=np.int64)
    ranks[order] = np.arange(1, len(order) + 1)
    return ranks
