"""Detection of the objectives that actually drive the DM's rankings.

Two detectors are available:

* ``univariate``: per objective, the absolute Spearman rank correlation
  between its values and the DM's ranks, averaged over the interactions in
  the store and normalized by the largest score.
* ``recursive``: backward elimination over a pairwise rank model — refit,
  drop the feature with the smallest destandardized weight magnitude, and
  stop when another removal would cost ranking fidelity or only
  ``min_active`` features remain.

An objective stuck at one value across a presented sample would always score
zero, even if the DM cares about it, so optional noise injection perturbs
constant columns slightly before detection (and before the sample is stored).
"""

from __future__ import annotations

import dataclasses

import numpy as np
from scipy.stats import rankdata

from .learning import fit, training_tau
from .mdm import RankedSample
from .problems import ActiveMask

_CONSTANT_TOL = 1e-12
_TAU_KEEP = 0.999
_METHODS = ("none", "univariate", "recursive")
_RESETS = ("none", "fixed", "dynamic")


@dataclasses.dataclass(frozen=True)
class PreferenceStore:
    """Immutable collection of ranked samples accumulated over interactions."""

    samples: tuple[RankedSample, ...] = ()

    @property
    def record_count(self) -> int:
        return sum(s.size for s in self.samples)

    def with_sample(self, sample: RankedSample) -> "PreferenceStore":
        return PreferenceStore(self.samples + (sample,))


@dataclasses.dataclass(frozen=True)
class DetectionConfig:
    method: str = "univariate"
    reduction: bool = True
    tau: float = 0.5
    noise: bool = False
    noise_fraction: float = 0.01
    reset: str = "none"
    min_active: int = 2

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}")
        if self.reset not in _RESETS:
            raise ValueError(f"reset must be one of {_RESETS}")
        if not 0.0 < self.tau <= 1.0:
            raise ValueError("tau must lie in (0, 1]")
        if self.min_active < 1:
            raise ValueError("min_active must be >= 1")
        if not 0.0 < self.noise_fraction < 1.0:
            raise ValueError("noise_fraction must lie in (0, 1)")


@dataclasses.dataclass(frozen=True)
class DetectionOutcome:
    relevant: tuple[int, ...]
    scores: np.ndarray
    update_needed: bool


def inject_noise(sample: RankedSample, fraction: float,
                 rng: np.random.Generator) -> RankedSample:
    """Perturb objective columns that are constant across the sample.

    Each entry of a constant column moves by a uniform draw within
    +-fraction of its magnitude (or of machine epsilon when the column sits
    at zero).  Varying columns are left untouched; ranks never change.
    """
    values = np.array(sample.vectors, copy=True)
    if values.shape[0] >= 2:
        spread = values.max(axis=0) - values.min(axis=0)
        for col in np.flatnonzero(spread <= _CONSTANT_TOL):
            scale = abs(values[0, col])
            if scale <= 0.0:
                scale = np.finfo(np.float64).eps
            values[:, col] += rng.uniform(-1.0, 1.0, size=values.shape[0]) \
                * fraction * scale
    return RankedSample(vectors=values, ranks=sample.ranks,
                        interaction=sample.interaction)


def _spearman_abs(column: np.ndarray, ranks: np.ndarray) -> float:
    """|Spearman correlation|, 0.0 when the column carries no ordering."""
    col_ranks = rankdata(column)
    if col_ranks.std() == 0.0 or np.asarray(ranks, dtype=float).std() == 0.0:
        return 0.0
    return float(abs(np.corrcoef(col_ranks, ranks)[0, 1]))


def score_univariate_raw(pref: PreferenceStore) -> np.ndarray:
    """Mean |Spearman| per objective across the stored interactions."""
    if not pref.samples:
        raise ValueError("preference store is empty")
    m = pref.samples[0].vectors.shape[1]
    totals = np.zeros(m)
    for sample in pref.samples:
        for j in range(m):
            totals[j] += _spearman_abs(sample.vectors[:, j], sample.ranks)
    return totals / len(pref.samples)


def score_univariate(pref: PreferenceStore) -> np.ndarray:
    """Relevance scores in [0, 1], normalized by the best-scoring objective."""
    raw = score_univariate_raw(pref)
    top = raw.max()
    return raw / top if top > 0.0 else raw


def rfe_select(pref: PreferenceStore, min_keep: int) -> tuple[tuple[int, ...], np.ndarray]:
    """Backward feature elimination over the pairwise rank model.

    Returns the surviving 1-based objective indices plus a score per
    objective: survivors get 1.0, eliminated objectives get a fraction that
    grows with how long they lasted.  Weight-magnitude ties drop the highest
    index first, so fully degenerate stores keep the lowest indices.
    """
    if not pref.samples:
        raise ValueError("preference store is empty")
    m = pref.samples[0].vectors.shape[1]
    if min_keep < 1 or min_keep > m:
        raise ValueError("min_keep must lie in [1, m]")
    candidates = list(range(1, m + 1))
    eliminated: list[int] = []
    model = fit(pref, tuple(candidates))
    while len(candidates) > min_keep:
        tau_now = training_tau(model, pref)
        magnitude = np.abs(model.destandardized_weights)
        # ties: drop the highest index first
        weakest_pos = int(np.lexsort((-np.asarray(candidates), magnitude))[0])
        trial = [c for i, c in enumerate(candidates) if i != weakest_pos]
        trial_model = fit(pref, tuple(trial))
        if training_tau(trial_model, pref) < _TAU_KEEP * tau_now:
            break
        eliminated.append(candidates[weakest_pos])
        candidates = trial
        model = trial_model
    scores = np.ones(m)
    for position, index in enumerate(eliminated):
        scores[index - 1] = (position + 1) / (len(eliminated) + 1)
    return tuple(candidates), scores


def detect(cfg: DetectionConfig, pref: PreferenceStore,
           current_mask: ActiveMask) -> DetectionOutcome:
    """Estimate the relevant objective set and whether the mask is stale."""
    if cfg.method == "none":
        raise ValueError("detect requires an active detection method")
    if not pref.samples:
        raise ValueError("preference store is empty")
    if cfg.method == "univariate":
        scores = score_univariate(pref)
        relevant = tuple(int(i) + 1 for i in np.flatnonzero(scores >= cfg.tau))
        if not relevant:
            relevant = (int(np.argmax(scores)) + 1,)
    else:
        relevant, scores = rfe_select(pref, min_keep=cfg.min_active)
    update_needed = not set(relevant) <= set(current_mask.indices)
    return DetectionOutcome(relevant=relevant, scores=scores,
                            update_needed=update_needed)


def update_mask(cfg: DetectionConfig, mask: ActiveMask,
                outcome: DetectionOutcome) -> ActiveMask:
    """New active mask under the reduction policy.

    Without reduction the mask is immutable; with it, the mask becomes the
    detected set, padded up to ``min_active`` with the highest-scoring
    non-members (lowest index on ties).
    """
    if not cfg.reduction:
        return mask
    chosen = set(outcome.relevant)
    if len(chosen) < cfg.min_active:
        others = [i for i in range(1, mask.m + 1) if i not in chosen]
        # stable sort on (-score, index): highest score first, lowest index on ties
        others.sort(key=lambda i: (-outcome.scores[i - 1], i))
        for index in others[:cfg.min_active - len(chosen)]:
            chosen.add(index)
    return ActiveMask(tuple(sorted(chosen)), mask.m)


def refine_pref(pref: PreferenceStore, new_pref: RankedSample,
                update_needed: bool, reset: str) -> PreferenceStore:
    """Fold the newest ranked sample into the store under the reset policy.

    * ``none``: always accumulate.
    * ``fixed``: always discard history, keep only the newest sample.
    * ``dynamic``: discard history only when the detected relevant set moved
      outside the active mask; accumulate otherwise.
    """
    if reset not in _RESETS:
        raise ValueError(f"reset must be one of {_RESETS}")
    if reset == "fixed":
        return PreferenceStore((new_pref,))
    if reset == "dynamic" and update_needed:
        return PreferenceStore((new_pref,))
    return pref.with_sample(new_pref)
