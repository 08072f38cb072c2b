"""Interactive optimization engine.

One run evolves a population for a long warm-up phase under crowding
distance, then alternates DM interactions with short evolution phases whose
secondary selection criterion is the learned preference model:

1. present a small sample from the first front to the DM channel (blocking),
2. optionally perturb constant columns of the ranked sample,
3. detect the relevant objectives from that newest sample alone and update
   the active mask (re-evaluating the population immediately on a change,
   with newly activated objectives charged to the evaluation budget),
4. fold the sample into the preference store under the reset policy,
5. refit the rank model and evolve until the next interaction.

With learning disabled the run never queries the channel and instead ranks
the population by the channel's true cost — an upper-bound baseline.

The trace records, per interaction, the best solution's true cost (when the
channel can provide one), the normalized utility 1 - cost/reference where
the reference is the mean cost of the run's initial random population, the
active mask, the detection outcome, and the cumulative evaluation count.
"""

from __future__ import annotations

import dataclasses
import json
import time
from typing import Callable, Protocol

import numpy as np

from .detection import (DetectionConfig, PreferenceStore, detect, inject_noise,
                        refine_pref, update_mask)
from .emoa import Individual, VariationConfig, evolve, nondominated_sort
from .learning import LearnedCriterion, fit
from .mdm import RankedSample, UtilitySpec
from .problems import (ActiveMask, EvalCounter, ProblemInstance, ProblemSpec,
                       evaluate_full_batch, evaluate_indices, random_genomes)

Observer = Callable[[str, dict], None]


class DMChannelAborted(RuntimeError):
    """Raised by a channel when the DM side cancels the run."""


class DMChannel(Protocol):
    def rank(self, vectors: np.ndarray, interaction_index: int) -> np.ndarray: ...


@dataclasses.dataclass(frozen=True)
class RunConfig:
    problem: ProblemSpec | None = None
    uf: UtilitySpec | None = None
    learning: bool = True
    detection: DetectionConfig = dataclasses.field(default_factory=DetectionConfig)
    initial_mask: tuple[int, ...] | None = None
    population: int = 100
    n_exa: int = 5
    interactions: int = 9
    gen_first: int = 200
    gen_interaction: int = 30
    total_generations: int = 500
    seed: int = 0
    variation: VariationConfig = dataclasses.field(default_factory=VariationConfig)

    def __post_init__(self) -> None:
        if self.population < 2:
            raise ValueError("population must have at least two members")
        if not 1 <= self.n_exa <= self.population:
            raise ValueError("n_exa must lie in [1, population]")
        if self.interactions < 1:
            raise ValueError("need at least one interaction")
        if self.final_stretch < 0:
            raise ValueError(
                "total_generations too small for the interaction schedule")

    @property
    def final_stretch(self) -> int:
        """Generations run after the last interaction."""
        return (self.total_generations - self.gen_first
                - self.gen_interaction * (self.interactions - 1))


@dataclasses.dataclass(frozen=True)
class TraceRow:
    interaction: int
    utility: float
    best_cost: float
    mask: tuple[int, ...]
    n_active: int
    n_active_relevant: int
    detected: tuple[int, ...] | None
    n_detected_relevant: int
    update_needed: bool
    evaluations: int
    wall_time: float


_CSV_COLUMNS = ("interaction", "utility", "best_cost", "active_mask", "n_active",
                "n_active_relevant", "detected_set", "n_detected_relevant",
                "update_needed", "evaluations")


@dataclasses.dataclass
class RunTrace:
    config: RunConfig
    rows: list[TraceRow] = dataclasses.field(default_factory=list)
    aborted: bool = False
    models: list[dict] = dataclasses.field(default_factory=list)

    def to_csv(self) -> str:
        """Deterministic text serialization; wall time is deliberately omitted
        so that re-runs of the same seed are byte-identical."""
        lines = [",".join(_CSV_COLUMNS)]
        for row in self.rows:
            detected = ("" if row.detected is None
                        else "|".join(str(i) for i in row.detected))
            lines.append(",".join((
                str(row.interaction), repr(row.utility), repr(row.best_cost),
                "|".join(str(i) for i in row.mask), str(row.n_active),
                str(row.n_active_relevant), detected,
                str(row.n_detected_relevant), str(int(row.update_needed)),
                str(row.evaluations),
            )))
        return "\n".join(lines) + "\n"

    def manifest(self) -> dict:
        return {
            "config": _config_dict(self.config),
            "seed": self.config.seed,
            "outcome": "aborted" if self.aborted else "completed",
            "rows": len(self.rows),
            "final_utility": self.rows[-1].utility if self.rows else None,
            "evaluations": self.rows[-1].evaluations if self.rows else 0,
            "models": self.models,
        }

    def manifest_json(self) -> str:
        return json.dumps(self.manifest(), indent=2, sort_keys=True) + "\n"


def _config_dict(cfg: RunConfig) -> dict:
    def plain(value):
        if dataclasses.is_dataclass(value) and not isinstance(value, type):
            return {k: plain(v) for k, v in dataclasses.asdict(value).items()}
        if isinstance(value, tuple):
            return list(value)
        return value

    return {field.name: plain(getattr(cfg, field.name))
            for field in dataclasses.fields(cfg)}


def select_presentation_sample(pop: list[Individual], n_exa: int,
                               rng: np.random.Generator) -> list[Individual]:
    """Uniform draw of n_exa distinct solutions for the DM to rank.

    Distinctness is judged on the active objective vectors, not on population
    slots: showing the DM the same point twice yields no ordering information.
    Candidates are the distinct first-front vectors when at least n_exa exist,
    widening to the whole population's distinct vectors otherwise; only a
    population with fewer than n_exa distinct vectors produces repeats.
    """
    if n_exa > len(pop):
        raise ValueError("cannot present more solutions than the population holds")

    def distinct(members: list[Individual]) -> list[Individual]:
        seen: set[bytes] = set()
        kept = []
        for ind in members:
            key = ind.active_values.tobytes()
            if key not in seen:
                seen.add(key)
                kept.append(ind)
        return kept

    front = distinct([ind for ind in pop if ind.front_rank == 0])
    candidates = front if len(front) >= n_exa else distinct(pop)
    if len(candidates) >= n_exa:
        picks = rng.choice(len(candidates), size=n_exa, replace=False)
        return [candidates[i] for i in picks]
    extra = rng.choice(len(pop), size=n_exa - len(candidates), replace=False)
    return candidates + [pop[i] for i in extra]


class TrueUtilityCriterion:
    """Secondary criterion that ranks by the channel's true cost.

    Used only by the learning-disabled baseline; the full vectors it needs
    are judged on the DM's side and therefore never charged to the budget.
    """

    def __init__(self, channel, interaction_index: int):
        if not hasattr(channel, "utility_cost"):
            raise ValueError("baseline runs need a channel exposing utility_cost")
        self.channel = channel
        self.interaction_index = interaction_index

    def scores(self, instance, genomes, active_values, mask) -> np.ndarray:
        full = evaluate_full_batch(instance, genomes)
        return np.asarray(self.channel.utility_cost(full, self.interaction_index))


def _apply_mask_change(instance: ProblemInstance, pop: list[Individual],
                       old_mask: ActiveMask, new_mask: ActiveMask,
                       counter: EvalCounter) -> None:
    """Re-evaluate the population under a changed mask.

    Values for retained objectives are carried over; only newly activated
    objectives cost evaluations.
    """
    genomes = np.stack([ind.genome for ind in pop])
    old_values = np.stack([ind.active_values for ind in pop])
    fresh = [i for i in new_mask.indices if i not in old_mask.indices]
    fresh_values = (evaluate_indices(instance, genomes, fresh, counter)
                    if fresh else None)
    new_values = np.empty((len(pop), new_mask.size))
    for col, index in enumerate(new_mask.indices):
        if index in old_mask.indices:
            new_values[:, col] = old_values[:, old_mask.indices.index(index)]
        else:
            new_values[:, col] = fresh_values[:, fresh.index(index)]
    for i, ind in enumerate(pop):
        ind.active_values = new_values[i].copy()
    nondominated_sort(pop, new_mask)


def run(cfg: RunConfig, instance: ProblemInstance, dm_channel,
        observer: Observer | None = None) -> RunTrace:
    """Execute one interactive run and return its trace."""
    if cfg.problem is not None and cfg.problem.m != instance.m:
        raise ValueError("config and instance disagree on the number of objectives")
    notify = observer or (lambda event, info: None)
    rng = np.random.default_rng(cfg.seed)
    mask = (ActiveMask.full(instance.m) if cfg.initial_mask is None
            else ActiveMask(tuple(cfg.initial_mask), instance.m))
    counter = EvalCounter()
    trace = RunTrace(config=cfg)
    started = time.perf_counter()

    genomes = random_genomes(instance, cfg.population, rng)
    values = evaluate_indices(instance, genomes, mask.indices, counter)
    pop = [Individual(genome=genomes[i].copy(), active_values=values[i].copy())
           for i in range(cfg.population)]

    can_cost = hasattr(dm_channel, "utility_cost")
    reference_cost = float("nan")
    if can_cost:
        initial_costs = np.asarray(
            dm_channel.utility_cost(evaluate_full_batch(instance, genomes), 0))
        reference_cost = float(initial_costs.mean())

    relevant_of = getattr(dm_channel, "relevant_indices", None)

    def record(interaction: int, detected, update_needed: bool) -> None:
        best_cost = float("nan")
        utility = float("nan")
        if can_cost:
            full = evaluate_full_batch(instance,
                                       np.stack([ind.genome for ind in pop]))
            costs = np.asarray(dm_channel.utility_cost(full, interaction))
            best_cost = float(costs.min())
            utility = 1.0 - best_cost / reference_cost
        n_active_relevant = -1
        n_detected_relevant = -1
        if relevant_of is not None:
            current = set(relevant_of(interaction))
            n_active_relevant = len(current & set(mask.indices))
            if detected is not None:
                n_detected_relevant = len(current & set(detected))
        row = TraceRow(
            interaction=interaction, utility=utility, best_cost=best_cost,
            mask=mask.indices, n_active=mask.size,
            n_active_relevant=n_active_relevant, detected=detected,
            n_detected_relevant=n_detected_relevant, update_needed=update_needed,
            evaluations=counter.total,
            wall_time=time.perf_counter() - started)
        trace.rows.append(row)
        notify("row", {"row": row})

    notify("evolve", {"interaction": 0, "criterion": "crowding",
                      "generations": cfg.gen_first})
    pop = evolve(pop, cfg.gen_first, instance, mask, counter, "crowding",
                 cfg.variation, rng)
    record(0, None, False)

    pref = PreferenceStore()
    for interaction in range(1, cfg.interactions + 1):
        detected = None
        update_needed = False
        if cfg.learning:
            sample = select_presentation_sample(pop, cfg.n_exa, rng)
            vectors = evaluate_full_batch(
                instance, np.stack([ind.genome for ind in sample]))
            try:
                ranks = np.asarray(dm_channel.rank(vectors, interaction))
            except DMChannelAborted:
                trace.aborted = True
                notify("aborted", {"interaction": interaction})
                return trace
            new_pref = RankedSample(vectors=vectors, ranks=ranks,
                                    interaction=interaction)
            if cfg.detection.noise:
                new_pref = inject_noise(new_pref, cfg.detection.noise_fraction, rng)
            if cfg.detection.method != "none":
                # Detection reads the reset-governed store plus the fresh
                # sample: stale records dilute the scores until the reset
                # policy clears them, which is what separates the policies.
                outcome = detect(cfg.detection, pref.with_sample(new_pref), mask)
                detected = outcome.relevant
                update_needed = outcome.update_needed
                new_mask = update_mask(cfg.detection, mask, outcome)
                if new_mask.indices != mask.indices:
                    notify("mask", {"interaction": interaction,
                                    "before": mask.indices,
                                    "after": new_mask.indices})
                    _apply_mask_change(instance, pop, mask, new_mask, counter)
                    mask = new_mask
            pref = refine_pref(pref, new_pref, update_needed, cfg.detection.reset)
            if cfg.detection.method != "none":
                features = tuple(i for i in detected if i in mask.indices) \
                    or mask.indices
            else:
                features = mask.indices
            model = fit(pref, features)
            trace.models.append({
                "interaction": interaction,
                "feature_indices": list(model.feature_indices),
                "weights": model.weights.tolist(),
                "mean": model.mean.tolist(),
                "std": model.std.tolist(),
                "converged": model.meta.converged,
            })
            criterion = LearnedCriterion(model)
        else:
            criterion = TrueUtilityCriterion(dm_channel, interaction)
        generations = (cfg.gen_interaction if interaction < cfg.interactions
                       else cfg.final_stretch)
        notify("evolve", {"interaction": interaction,
                          "criterion": "learned" if cfg.learning else "true-utility",
                          "generations": generations})
        pop = evolve(pop, generations, instance, mask, counter, criterion,
                     cfg.variation, rng)
        record(interaction, detected, update_needed)
    notify("finished", {"rows": len(trace.rows)})
    return trace
