"""Linear pairwise ranking model learned from DM feedback.

Training data is the set of ordered pairs within each stored interaction
(never across interactions, since the DM only compared solutions shown
together).  Features are the selected objectives, standardized over the
training records; the model minimizes a margin hinge loss on pair score
differences with a small L2 penalty, by deterministic full-batch projected
subgradient descent.  Lower score means more preferred.

Weights are constrained to be nonnegative: every objective is a cost, so a
preference model must never reward growing one.  Without the constraint,
collinear objectives (e.g. values coupled through a trade-off front) let the
optimizer express "decrease objective a" as "increase objective b", which
fits the training pairs but extrapolates in the wrong direction when the
model steers selection.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

import numpy as np

MARGIN = 1.0
L2_PENALTY = 1e-3
MAX_EPOCHS = 500
_LEARNING_RATE = 0.2


@dataclasses.dataclass(frozen=True)
class TrainingMeta:
    iterations: int
    converged: bool
    pair_count: int


@dataclasses.dataclass(frozen=True)
class RankModel:
    """Linear preference cost over standardized objective features."""

    feature_indices: tuple[int, ...]
    weights: np.ndarray
    mean: np.ndarray
    std: np.ndarray
    meta: TrainingMeta

    @property
    def destandardized_weights(self) -> np.ndarray:
        """Per-feature slope of the score in raw objective units."""
        return self.weights / self.std


def _gather(pref, feature_indices: tuple[int, ...]):
    """Stack training records and within-interaction ordered pairs."""
    cols = np.asarray(feature_indices, dtype=np.int64) - 1
    rows = []
    pairs = []
    offset = 0
    for sample in pref.samples:
        values = sample.vectors[:, cols]
        rows.append(values)
        order = np.argsort(sample.ranks, kind="stable")
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                pairs.append((offset + order[i], offset + order[j]))
        offset += len(order)
    if not rows:
        raise ValueError("preference store is empty")
    features = np.concatenate(rows, axis=0)
    return features, np.asarray(pairs, dtype=np.int64)


def fit(pref, feature_indices: Sequence[int]) -> RankModel:
    """Fit the pairwise model on the stored rankings.

    Deterministic for a fixed store.  Degenerate inputs (no usable pairs, or
    all records identical in the selected features) yield a zero-weight model
    flagged unconverged rather than an error.
    """
    indices = tuple(feature_indices)
    if not indices:
        raise ValueError("need at least one feature index")
    features, pairs = _gather(pref, indices)
    if features.shape[0] < 2:
        raise ValueError("need at least two records with distinct ranks")

    mean = features.mean(axis=0)
    std = features.std(axis=0)
    std = np.where(std > 0.0, std, 1.0)
    standardized = (features - mean) / std

    zero_meta = TrainingMeta(iterations=0, converged=False, pair_count=len(pairs))
    if len(pairs) == 0 or not np.any(features.std(axis=0) > 0.0):
        return RankModel(feature_indices=indices, weights=np.zeros(len(indices)),
                         mean=mean, std=std, meta=zero_meta)

    # deltas point from preferred to less preferred; we want w @ delta >= MARGIN
    deltas = standardized[pairs[:, 1]] - standardized[pairs[:, 0]]
    # A pair whose records tie in every selected feature carries no ordering
    # information and can never satisfy the margin; keeping such pairs would
    # dilute the gradient and block convergence on the informative ones.
    deltas = deltas[np.any(deltas != 0.0, axis=1)]
    if len(deltas) == 0:
        return RankModel(feature_indices=indices, weights=np.zeros(len(indices)),
                         mean=mean, std=std, meta=zero_meta)
    weights = np.zeros(len(indices))
    iterations = 0
    converged = False
    for epoch in range(1, MAX_EPOCHS + 1):
        margins = deltas @ weights
        violated = margins < MARGIN
        iterations = epoch
        if not violated.any():
            converged = True
            break
        grad = -deltas[violated].sum(axis=0) / len(deltas) + 2.0 * L2_PENALTY * weights
        weights = np.maximum(weights - _LEARNING_RATE * grad, 0.0)
    else:
        converged = not (deltas @ weights < MARGIN).any()

    meta = TrainingMeta(iterations=iterations, converged=converged,
                        pair_count=len(pairs))
    return RankModel(feature_indices=indices, weights=weights, mean=mean,
                     std=std, meta=meta)


def score(model: RankModel, f: np.ndarray) -> float:
    """Predicted preference cost of one full objective vector (lower wins)."""
    vector = np.asarray(f, dtype=np.float64)
    cols = np.asarray(model.feature_indices, dtype=np.int64) - 1
    if vector.ndim != 1 or vector.shape[0] <= cols.max():
        raise ValueError("vector does not cover the model's feature indices")
    selected = vector[cols]
    if np.any(~np.isfinite(selected)):
        raise ValueError("missing value at a model feature index")
    return float((selected - model.mean) / model.std @ model.weights)


def training_tau(model: RankModel, pref) -> float:
    """Kendall tau of model scores against the DM pairs it was trained on."""
    features, pairs = _gather(pref, model.feature_indices)
    if len(pairs) == 0:
        return 0.0
    scores = (features - model.mean) / model.std @ model.weights
    diff = scores[pairs[:, 1]] - scores[pairs[:, 0]]
    concordant = int((diff > 0.0).sum())
    discordant = int((diff < 0.0).sum())
    return (concordant - discordant) / len(pairs)


class LearnedCriterion:
    """Adapter using a fitted RankModel as the secondary selection criterion."""

    def __init__(self, model: RankModel):
        if model is None:
            raise ValueError("criterion requires a fitted rank model")
        self.model = model

    def scores(self, instance, genomes, active_values, mask) -> np.ndarray:
        positions = []
        for index in self.model.feature_indices:
            if index not in mask.indices:
                raise ValueError(
                    f"objective {index} is not active; cannot score the population")
            positions.append(mask.indices.index(index))
        selected = active_values[:, positions]
        return (selected - self.model.mean) / self.model.std @ self.model.weights
