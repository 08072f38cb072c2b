"""Steady multi-objective evolutionary core.

A (mu + lambda) elitist loop with fast non-dominated sorting, binary
tournaments on (front rank, secondary score), simulated binary crossover and
polynomial mutation for continuous genomes, and uniform crossover with
bit-flip mutation for binary genomes.  The secondary selection criterion is
pluggable: crowding distance by default, or any object exposing
``scores(instance, genomes, active_values, mask) -> array`` where lower
means better (used once a preference model has been learned).

Domination is always computed over the active objectives only.
"""

from __future__ import annotations

import dataclasses
from typing import Protocol, Sequence

import numpy as np

from . import _kernels
from .problems import ActiveMask, EvalCounter, ProblemInstance, evaluate_indices

_EPS = 1e-14


@dataclasses.dataclass
class Individual:
    """One population member: genome plus its values under the active mask.

    ``secondary_score`` is the last secondary criterion value assigned during
    sorting or evolution: crowding distance (higher is better) under the
    default criterion, predicted preference cost (lower is better) under a
    learned one.
    """

    genome: np.ndarray
    active_values: np.ndarray
    front_rank: int = -1
    secondary_score: float = 0.0


@dataclasses.dataclass(frozen=True)
class VariationConfig:
    crossover_prob: float = 0.9
    eta_crossover: float = 15.0
    eta_mutation: float = 20.0
    mutation_rate: float | None = None  # default 1/n

    def __post_init__(self) -> None:
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise ValueError("crossover_prob must lie in [0, 1]")
        if self.mutation_rate is not None and not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must lie in [0, 1]")


class SecondaryCriterion(Protocol):
    def scores(self, instance: ProblemInstance, genomes: np.ndarray,
               active_values: np.ndarray, mask: ActiveMask) -> np.ndarray: ...


def _stack_values(pop: Sequence[Individual], mask: ActiveMask) -> np.ndarray:
    if not pop:
        raise ValueError("population must not be empty")
    values = np.stack([ind.active_values for ind in pop]).astype(np.float64)
    if values.shape[1] != mask.size:
        raise ValueError(
            f"active values have width {values.shape[1]}, mask has {mask.size}")
    return values


def nondominated_sort(pop: Sequence[Individual],
                      mask: ActiveMask) -> list[list[Individual]]:
    """Partition the population into fronts and stamp each front_rank."""
    values = _stack_values(pop, mask)
    ranks = _kernels.front_ranks(values)
    fronts: list[list[Individual]] = [[] for _ in range(int(ranks.max()) + 1)]
    for ind, rank in zip(pop, ranks):
        ind.front_rank = int(rank)
        fronts[rank].append(ind)
    return fronts


def _crowding_rows(values: np.ndarray) -> np.ndarray:
    # identical objective vectors share one score, so duplicates cannot
    # crowd each other out of (or into) the boundary bonus
    uniq, inverse = np.unique(values, axis=0, return_inverse=True)
    return np.asarray(_kernels.crowding(uniq))[inverse]


def crowding_distance(front: Sequence[Individual], mask: ActiveMask) -> np.ndarray:
    """Crowding distance per member of one front (higher is better)."""
    values = _stack_values(front, mask)
    scores = _crowding_rows(values)
    for ind, score in zip(front, scores):
        ind.secondary_score = float(score)
    return scores


def _secondary_keys(front_rank: np.ndarray, values: np.ndarray, criterion,
                    instance: ProblemInstance, genomes: np.ndarray,
                    mask: ActiveMask) -> np.ndarray:
    """Secondary selection key per row; smaller is always better here."""
    if criterion == "crowding":
        key = np.empty(len(front_rank))
        for rank in np.unique(front_rank):
            sel = front_rank == rank
            key[sel] = -_crowding_rows(values[sel])
        return key
    scores = np.asarray(criterion.scores(instance, genomes, values, mask),
                        dtype=np.float64)
    if scores.shape != (len(front_rank),):
        raise ValueError("criterion returned a malformed score array")
    return scores


def _tournament(rank: np.ndarray, key: np.ndarray, count: int,
                rng: np.random.Generator) -> np.ndarray:
    a = rng.integers(0, len(rank), size=count)
    b = rng.integers(0, len(rank), size=count)
    a_better = (rank[a] < rank[b]) | ((rank[a] == rank[b]) & (key[a] < key[b]))
    tie = (rank[a] == rank[b]) & (key[a] == key[b])
    coin = rng.random(count) < 0.5
    return np.where(tie, np.where(coin, a, b), np.where(a_better, a, b))


def _sbx(p1: np.ndarray, p2: np.ndarray, lo: float, hi: float, eta: float,
         crossover_prob: float, rng: np.random.Generator):
    """Bounded simulated binary crossover; children stay inside [lo, hi]."""
    pair_on = rng.random(p1.shape[0]) <= crossover_prob
    gene_on = rng.random(p1.shape) <= 0.5
    u = rng.random(p1.shape)
    swap = rng.random(p1.shape) <= 0.5

    y1 = np.minimum(p1, p2)
    y2 = np.maximum(p1, p2)
    delta = y2 - y1
    act = pair_on[:, None] & gene_on & (delta > _EPS)
    exponent = 1.0 / (eta + 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        safe = np.where(delta > _EPS, delta, 1.0)
        beta = 1.0 + 2.0 * (y1 - lo) / safe
        alpha = 2.0 - beta ** -(eta + 1.0)
        bq_lo = np.where(u <= 1.0 / alpha, (u * alpha) ** exponent,
                         (1.0 / (2.0 - u * alpha)) ** exponent)
        beta = 1.0 + 2.0 * (hi - y2) / safe
        alpha = 2.0 - beta ** -(eta + 1.0)
        bq_hi = np.where(u <= 1.0 / alpha, (u * alpha) ** exponent,
                         (1.0 / (2.0 - u * alpha)) ** exponent)
    child_lo = np.clip(0.5 * ((y1 + y2) - bq_lo * delta), lo, hi)
    child_hi = np.clip(0.5 * ((y1 + y2) + bq_hi * delta), lo, hi)
    first = np.where(swap, child_hi, child_lo)
    second = np.where(swap, child_lo, child_hi)
    return np.where(act, first, p1), np.where(act, second, p2)


def _polynomial_mutation(x: np.ndarray, lo: float, hi: float, eta: float,
                         rate: float, rng: np.random.Generator) -> np.ndarray:
    """Bounded polynomial mutation; results stay inside [lo, hi]."""
    do = rng.random(x.shape) <= rate
    u = rng.random(x.shape)
    span = hi - lo
    d1 = (x - lo) / span
    d2 = (hi - x) / span
    mut_pow = 1.0 / (eta + 1.0)
    val_lo = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1) ** (eta + 1.0)
    val_hi = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2) ** (eta + 1.0)
    delta_q = np.where(u <= 0.5, val_lo ** mut_pow - 1.0, 1.0 - val_hi ** mut_pow)
    mutated = np.clip(x + delta_q * span, lo, hi)
    return np.where(do, mutated, x)


def _binary_offspring(p1: np.ndarray, p2: np.ndarray, crossover_prob: float,
                      rate: float, rng: np.random.Generator):
    pair_on = rng.random(p1.shape[0]) <= crossover_prob
    swap = pair_on[:, None] & (rng.random(p1.shape) < 0.5)
    c1 = np.where(swap, p2, p1)
    c2 = np.where(swap, p1, p2)
    c1 = np.where(rng.random(c1.shape) < rate, 1 - c1, c1)
    c2 = np.where(rng.random(c2.shape) < rate, 1 - c2, c2)
    return c1.astype(np.int8), c2.astype(np.int8)


def _make_offspring(genomes: np.ndarray, parents: np.ndarray,
                    instance: ProblemInstance, var: VariationConfig,
                    rate: float, rng: np.random.Generator) -> np.ndarray:
    count = len(parents)
    if count % 2:
        parents = np.append(parents, parents[-1])
    p1 = genomes[parents[0::2]]
    p2 = genomes[parents[1::2]]
    if instance.encoding == "continuous":
        c1, c2 = _sbx(p1, p2, instance.lower, instance.upper,
                      var.eta_crossover, var.crossover_prob, rng)
        offspring = np.concatenate([c1, c2], axis=0)
        offspring = _polynomial_mutation(offspring, instance.lower, instance.upper,
                                         var.eta_mutation, rate, rng)
    else:
        c1, c2 = _binary_offspring(p1, p2, var.crossover_prob, rate, rng)
        offspring = np.concatenate([c1, c2], axis=0)
    return offspring[:count]


def evolve(pop: Sequence[Individual], generations: int, instance: ProblemInstance,
           mask: ActiveMask, counter: EvalCounter, criterion="crowding",
           variation: VariationConfig | None = None,
           rng: np.random.Generator | None = None) -> list[Individual]:
    """Run (mu + lambda) generations and return the surviving population.

    Offspring evaluations are charged to ``counter`` (|mask| per offspring);
    the incoming population is assumed already evaluated under ``mask``.
    """
    if generations < 0:
        raise ValueError("generations must be >= 0")
    if criterion != "crowding" and not hasattr(criterion, "scores"):
        raise TypeError("criterion must be 'crowding' or expose .scores(...)")
    values = _stack_values(pop, mask)
    if generations == 0:
        return list(pop)
    var = variation or VariationConfig()
    rng = rng if rng is not None else np.random.default_rng()
    rate = var.mutation_rate if var.mutation_rate is not None else 1.0 / instance.n

    genomes = np.stack([ind.genome for ind in pop])
    mu = len(pop)
    for _ in range(generations):
        rank = _kernels.front_ranks(values)
        key = _secondary_keys(rank, values, criterion, instance, genomes, mask)
        parents = _tournament(rank, key, mu, rng)
        offspring = _make_offspring(genomes, parents, instance, var, rate, rng)
        off_values = evaluate_indices(instance, offspring, mask.indices, counter)

        pool_genomes = np.concatenate([genomes, offspring], axis=0)
        pool_values = np.concatenate([values, off_values], axis=0)
        pool_rank = _kernels.front_ranks(pool_values)
        pool_key = _secondary_keys(pool_rank, pool_values, criterion, instance,
                                   pool_genomes, mask)
        survivors = np.lexsort((pool_key, pool_rank))[:mu]
        genomes = pool_genomes[survivors]
        values = pool_values[survivors]

    rank = _kernels.front_ranks(values)
    key = _secondary_keys(rank, values, criterion, instance, genomes, mask)
    sign = -1.0 if criterion == "crowding" else 1.0
    return [
        Individual(genome=genomes[i].copy(), active_values=values[i].copy(),
                   front_rank=int(rank[i]), secondary_score=float(sign * key[i]))
        for i in range(mu)
    ]
