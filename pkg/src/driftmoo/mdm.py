"""Simulated decision maker.

The machine DM carries a hidden utility function over a small set of
relevant objectives and answers ranking queries with it.  Two cost shapes
are supported (both minimized, ideal point defaulting to the origin):

* ``tchebychef``: max_i w_i * |f_i - ideal_i| over the relevant objectives
* ``quadratic``:  sum_i (w_i * |f_i - ideal_i|)**2 over the same set

Preference drift mixes each relevant objective's value with a distinct
partner objective before the cost is computed:

    mixed_relevant = (1 - gamma) * f_relevant + gamma * f_partner
    mixed_partner  = (1 - gamma) * f_partner  + gamma * f_relevant

At gamma = 0 this is the identity; at gamma = 1 the two values swap, so the
partners effectively become the relevant objectives.  The mix applies only
while the DM is judging solutions (ranking queries and cost queries made on
the DM's side); the optimizer's own evaluations are never transformed.
"""

from __future__ import annotations

import dataclasses

import numpy as np

_KINDS = ("tchebychef", "quadratic")


@dataclasses.dataclass(frozen=True)
class DriftSpec:
    """When and how strongly the DM's preferences shift."""

    gamma: float = 0.0
    at_interaction: int = 3
    pairing: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must lie in [0, 1]")
        if self.at_interaction < 1:
            raise ValueError("drift cannot start before the first interaction")
        seen: set[int] = set()
        for a, b in self.pairing:
            if a == b:
                raise ValueError("an objective cannot be paired with itself")
            if a in seen or b in seen:
                raise ValueError("pairing must not reuse objectives")
            seen.update((a, b))


@dataclasses.dataclass(frozen=True)
class RankedSample:
    """Full objective vectors with the DM's 1-based ranks (1 = best)."""

    vectors: np.ndarray
    ranks: np.ndarray
    interaction: int

    def __post_init__(self) -> None:
        vectors = np.asarray(self.vectors, dtype=np.float64)
        ranks = np.asarray(self.ranks, dtype=np.int64)
        if vectors.ndim != 2 or len(ranks) != vectors.shape[0]:
            raise ValueError("vectors must be (records, m) with one rank per record")
        if sorted(ranks.tolist()) != list(range(1, len(ranks) + 1)):
            raise ValueError("ranks must be a permutation of 1..records")
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "ranks", ranks)

    @property
    def size(self) -> int:
        return self.vectors.shape[0]


@dataclasses.dataclass(frozen=True)
class UtilityModel:
    """Hidden DM utility: kind, weights over [1, m], relevant set, drift."""

    kind: str
    weights: np.ndarray
    relevant: tuple[int, ...]
    ideal: np.ndarray | None = None
    drift: DriftSpec | None = None
    drift_active: bool = False

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"utility kind must be one of {_KINDS}")
        weights = np.asarray(self.weights, dtype=np.float64)
        m = len(weights)
        relevant = tuple(sorted(self.relevant))
        if not relevant or any(i < 1 or i > m for i in relevant):
            raise ValueError("relevant objectives must be a non-empty subset of [1, m]")
        rel = np.asarray(relevant) - 1
        if np.any(weights[rel] <= 0.0):
            raise ValueError("relevant objectives need strictly positive weights")
        off = np.setdiff1d(np.arange(m), rel)
        if np.any(weights[off] != 0.0):
            raise ValueError("irrelevant objectives must have zero weight")
        ideal = (np.zeros(m) if self.ideal is None
                 else np.asarray(self.ideal, dtype=np.float64))
        if len(ideal) != m:
            raise ValueError("ideal point must have one entry per objective")
        if self.drift is not None:
            for a, b in self.drift.pairing:
                if not (1 <= a <= m and 1 <= b <= m):
                    raise ValueError("drift pairing indices must lie in [1, m]")
        weights.setflags(write=False)
        ideal.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "relevant", relevant)
        object.__setattr__(self, "ideal", ideal)

    @property
    def m(self) -> int:
        return len(self.weights)


def default_pairing(relevant: tuple[int, ...], m: int) -> tuple[tuple[int, int], ...]:
    """Pair each relevant objective with the lowest-index unused irrelevant one."""
    irrelevant = [i for i in range(1, m + 1) if i not in relevant]
    if len(irrelevant) < len(relevant):
        raise ValueError("not enough irrelevant objectives to pair against")
    return tuple((rel, irr) for rel, irr in zip(sorted(relevant), irrelevant))


def drift_mix(values: np.ndarray, pairing: tuple[tuple[int, int], ...],
              gamma: float) -> np.ndarray:
    """Mix paired objective values; works on single vectors or batches."""
    mixed = np.array(values, dtype=np.float64, copy=True)
    if not pairing or gamma == 0.0:
        return mixed
    rel = np.asarray([a for a, _ in pairing]) - 1
    par = np.asarray([b for _, b in pairing]) - 1
    a = np.array(mixed[..., rel], copy=True)
    b = np.array(mixed[..., par], copy=True)
    mixed[..., rel] = (1.0 - gamma) * a + gamma * b
    mixed[..., par] = (1.0 - gamma) * b + gamma * a
    return mixed


def apply_drift(model: UtilityModel, gamma: float) -> UtilityModel:
    """Return a model whose cost is computed on drift-mixed inputs."""
    if model.drift is None:
        raise ValueError("model has no drift specification")
    drift = dataclasses.replace(model.drift, gamma=gamma)
    return dataclasses.replace(model, drift=drift, drift_active=True)


def _cost_batch(model: UtilityModel, vectors: np.ndarray) -> np.ndarray:
    values = np.asarray(vectors, dtype=np.float64)
    if values.shape[-1] != model.m:
        raise ValueError(f"expected vectors of length {model.m}")
    if model.drift_active and model.drift is not None:
        values = drift_mix(values, model.drift.pairing, model.drift.gamma)
    rel = np.asarray(model.relevant) - 1
    terms = model.weights[rel] * np.abs(values[..., rel] - model.ideal[rel])
    if model.kind == "tchebychef":
        return terms.max(axis=-1)
    return (terms ** 2).sum(axis=-1)


def utility(model: UtilityModel, f: np.ndarray) -> float:
    """DM cost of one full objective vector (lower is better)."""
    value = _cost_batch(model, np.asarray(f, dtype=np.float64))
    return float(value)


def _effective(model: UtilityModel, interaction_index: int) -> UtilityModel:
    if (model.drift is not None and not model.drift_active
            and interaction_index >= model.drift.at_interaction):
        return apply_drift(model, model.drift.gamma)
    return model


def rank(model: UtilityModel, sample: np.ndarray,
         interaction_index: int) -> RankedSample:
    """Rank a sample of full vectors by DM cost; ties keep input order.

    Drift, when specified, is in force for every interaction at or past its
    start index.
    """
    vectors = np.asarray(sample, dtype=np.float64)
    if vectors.ndim != 2 or vectors.shape[0] < 1:
        raise ValueError("sample must be a non-empty (records, m) matrix")
    costs = _cost_batch(_effective(model, interaction_index), vectors)
    order = np.argsort(costs, kind="stable")
    ranks = np.empty(len(costs), dtype=np.int64)
    ranks[order] = np.arange(1, len(costs) + 1)
    return RankedSample(vectors=vectors.copy(), ranks=ranks,
                        interaction=interaction_index)


@dataclasses.dataclass(frozen=True)
class UtilitySpec:
    """Serializable recipe for a machine DM."""

    kind: str = "tchebychef"
    relevant: tuple[int, ...] = (1, 2)
    relevant_weights: tuple[float, ...] = (0.55, 0.45)
    gamma: float = 0.0
    drift_at: int = 3

    def build(self, m: int) -> UtilityModel:
        if len(self.relevant_weights) != len(self.relevant):
            raise ValueError("need one weight per relevant objective")
        weights = np.zeros(m)
        for idx, w in zip(self.relevant, self.relevant_weights):
            weights[idx - 1] = w
        drift = DriftSpec(gamma=self.gamma, at_interaction=self.drift_at,
                          pairing=default_pairing(tuple(sorted(self.relevant)), m))
        return UtilityModel(kind=self.kind, weights=weights,
                            relevant=tuple(self.relevant), drift=drift)


class MachineDM:
    """Blocking ranking channel backed by a hidden utility model."""

    def __init__(self, model: UtilityModel):
        self.model = model

    def rank(self, vectors: np.ndarray, interaction_index: int) -> np.ndarray:
        return rank(self.model, vectors, interaction_index).ranks

    def utility_cost(self, vectors: np.ndarray,
                     interaction_index: int) -> np.ndarray:
        """True DM cost per vector under the interaction's effective model."""
        return _cost_batch(_effective(self.model, interaction_index),
                           np.asarray(vectors, dtype=np.float64))

    def relevant_indices(self, interaction_index: int) -> tuple[int, ...]:
        """Effectively relevant objectives, accounting for strong drift."""
        model = self.model
        if (model.drift is None or model.drift.gamma == 0.0
                or interaction_index < model.drift.at_interaction):
            return model.relevant
        gamma = model.drift.gamma
        swapped = tuple(sorted(b for _, b in model.drift.pairing))
        if gamma > 0.5:
            return swapped
        if gamma == 0.5:
            return tuple(sorted(set(model.relevant) | set(swapped)))
        return model.relevant
