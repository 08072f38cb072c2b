"""Relevant-objective detection, noise injection, masks, reset policies."""

import numpy as np
import pytest
from conftest import rank_by_cost, ranked_sample

from driftmoo.detection import (DetectionConfig, PreferenceStore,
                                _spearman_abs, detect, inject_noise,
                                refine_pref, rfe_select, score_univariate,
                                score_univariate_raw, update_mask)
from driftmoo.problems import ActiveMask


def store_of(*samples):
    store = PreferenceStore()
    for sample in samples:
        store = store.with_sample(sample)
    return store


def driven_sample(rng, records, m, driver_column, interaction=1):
    vectors = rng.random((records, m))
    ranks = rank_by_cost(vectors[:, driver_column])
    return ranked_sample(vectors, ranks, interaction)


def test_rank_correlation_hand_values():
    ranks = np.arange(1, 6)
    assert _spearman_abs(np.array([1.0, 2, 3, 4, 5]), ranks) == pytest.approx(1.0)
    assert _spearman_abs(np.array([5.0, 4, 3, 2, 1]), ranks) == pytest.approx(1.0)
    assert _spearman_abs(np.full(5, 0.3), ranks) == 0.0
    # one adjacent swap in five records: 1 - 6*2/(5*24) = 0.9
    assert _spearman_abs(np.array([1.0, 2, 3, 5, 4]), ranks) == pytest.approx(0.9)


def test_scores_average_over_stored_interactions():
    ranks = np.arange(1, 5)
    a = ranked_sample(np.stack([ranks, np.full(4, 0.5)], axis=1), ranks, 1)
    b = ranked_sample(np.stack([ranks[::-1], ranks], axis=1), ranks, 2)
    raw = score_univariate_raw(store_of(a, b))
    np.testing.assert_allclose(raw, [1.0, 0.5])
    normalized = score_univariate(store_of(a, b))
    np.testing.assert_allclose(normalized, [1.0, 0.5])


def test_scores_survive_an_all_constant_store():
    sample = ranked_sample(np.full((4, 3), 0.2), [1, 2, 3, 4])
    np.testing.assert_array_equal(score_univariate(store_of(sample)), np.zeros(3))
    with pytest.raises(ValueError):
        score_univariate(PreferenceStore())


def test_noise_perturbs_only_constant_columns():
    vectors = np.stack([np.arange(4.0), np.full(4, 2.0), np.zeros(4)], axis=1)
    sample = ranked_sample(vectors, [1, 2, 3, 4])
    noisy = inject_noise(sample, fraction=0.01, rng=np.random.default_rng(1))
    np.testing.assert_array_equal(noisy.vectors[:, 0], vectors[:, 0])
    np.testing.assert_array_equal(noisy.ranks, sample.ranks)
    assert noisy.interaction == sample.interaction
    moved = noisy.vectors[:, 1] - 2.0
    assert np.any(moved != 0.0)
    assert np.abs(moved).max() <= 0.01 * 2.0
    # a column stuck at zero moves on the machine-epsilon scale
    zero_moved = noisy.vectors[:, 2]
    assert np.any(zero_moved != 0.0)
    assert np.abs(zero_moved).max() <= 0.01 * np.finfo(np.float64).eps
    # a perturbed constant column is no longer constant, so its rank
    # correlation becomes computable instead of being hard-zeroed
    assert noisy.vectors[:, 1].std() > 0.0


def test_noise_leaves_single_record_samples_alone():
    sample = ranked_sample([[0.5, 0.5]], [1])
    noisy = inject_noise(sample, 0.01, np.random.default_rng(2))
    np.testing.assert_array_equal(noisy.vectors, sample.vectors)


def test_detect_thresholds_against_the_best_objective():
    rng = np.random.default_rng(3)
    samples = [driven_sample(rng, 8, 4, driver_column=1, interaction=i)
               for i in (1, 2, 3)]
    outcome = detect(DetectionConfig(method="univariate", tau=0.9),
                     store_of(*samples), ActiveMask.full(4))
    assert 2 in outcome.relevant
    assert outcome.scores[1] == 1.0
    assert len(outcome.scores) == 4


def test_detect_falls_back_to_the_top_scorer():
    # tau = 1.0 admits only the maximum itself
    rng = np.random.default_rng(4)
    sample = driven_sample(rng, 8, 4, driver_column=2)
    outcome = detect(DetectionConfig(method="univariate", tau=1.0),
                     store_of(sample), ActiveMask.full(4))
    assert outcome.relevant == (3,)


def test_detect_flags_relevant_objectives_outside_the_mask():
    rng = np.random.default_rng(5)
    sample = driven_sample(rng, 8, 4, driver_column=3)
    cfg = DetectionConfig(method="univariate", tau=0.99)
    inside = detect(cfg, store_of(sample), ActiveMask.full(4))
    assert not inside.update_needed
    outside = detect(cfg, store_of(sample), ActiveMask((1, 2), 4))
    assert outside.update_needed


def test_detect_validation():
    sample = ranked_sample([[0.1, 0.2], [0.3, 0.4]], [1, 2])
    with pytest.raises(ValueError):
        detect(DetectionConfig(method="none"), store_of(sample),
               ActiveMask.full(2))
    with pytest.raises(ValueError):
        detect(DetectionConfig(), PreferenceStore(), ActiveMask.full(2))


def test_detection_config_validation():
    with pytest.raises(ValueError):
        DetectionConfig(method="psychic")
    with pytest.raises(ValueError):
        DetectionConfig(reset="sometimes")
    with pytest.raises(ValueError):
        DetectionConfig(tau=0.0)
    with pytest.raises(ValueError):
        DetectionConfig(tau=1.5)
    with pytest.raises(ValueError):
        DetectionConfig(min_active=0)
    with pytest.raises(ValueError):
        DetectionConfig(noise_fraction=0.0)


def test_backward_elimination_keeps_the_driving_objective():
    rng = np.random.default_rng(6)
    samples = [driven_sample(rng, 8, 4, driver_column=0, interaction=i)
               for i in (1, 2, 3)]
    survivors, scores = rfe_select(store_of(*samples), min_keep=2)
    assert 1 in survivors
    assert len(survivors) >= 2
    for index in survivors:
        assert scores[index - 1] == 1.0
    eliminated = [i for i in range(1, 5) if i not in survivors]
    for index in eliminated:
        assert 0.0 < scores[index - 1] < 1.0


def test_backward_elimination_on_a_degenerate_store_keeps_lowest_indices():
    sample = ranked_sample(np.full((4, 4), 0.5), [1, 2, 3, 4])
    survivors, _ = rfe_select(store_of(sample), min_keep=2)
    assert survivors == (1, 2)
    with pytest.raises(ValueError):
        rfe_select(store_of(sample), min_keep=0)
    with pytest.raises(ValueError):
        rfe_select(PreferenceStore(), min_keep=1)


def test_recursive_method_reaches_detect():
    rng = np.random.default_rng(7)
    samples = [driven_sample(rng, 8, 3, driver_column=0, interaction=i)
               for i in (1, 2, 3)]
    outcome = detect(DetectionConfig(method="recursive", min_active=2),
                     store_of(*samples), ActiveMask.full(3))
    assert 1 in outcome.relevant
    assert len(outcome.relevant) >= 2


def test_update_mask_policies():
    cfg = DetectionConfig(reduction=True, min_active=2)
    mask = ActiveMask.full(4)
    outcome_scores = np.array([0.2, 1.0, 0.6, 0.2])

    from driftmoo.detection import DetectionOutcome
    shrink = DetectionOutcome(relevant=(2, 3), scores=outcome_scores,
                              update_needed=False)
    assert update_mask(cfg, mask, shrink).indices == (2, 3)

    frozen = DetectionConfig(reduction=False)
    assert update_mask(frozen, mask, shrink) is mask

    # a single detected objective is padded with the best-scoring outsider;
    # score ties resolve to the lowest index
    lone = DetectionOutcome(relevant=(2,), scores=np.array([0.5, 1.0, 0.5, 0.5]),
                            update_needed=False)
    assert update_mask(cfg, mask, lone).indices == (1, 2)


def test_refinement_policies_accumulate_or_discard():
    s1 = ranked_sample([[0.1, 0.2], [0.3, 0.4]], [1, 2], 1)
    s2 = ranked_sample([[0.5, 0.6], [0.7, 0.8]], [2, 1], 2)
    new = ranked_sample([[0.9, 1.0], [1.1, 1.2]], [1, 2], 3)
    history = store_of(s1, s2)
    assert refine_pref(history, new, False, "none").samples == (s1, s2, new)
    assert refine_pref(history, new, True, "fixed").samples == (new,)
    assert refine_pref(history, new, False, "dynamic").samples == (s1, s2, new)
    assert refine_pref(history, new, True, "dynamic").samples == (new,)
    with pytest.raises(ValueError):
        refine_pref(history, new, False, "weekly")


def test_store_counts_records():
    s1 = ranked_sample([[0.1, 0.2], [0.3, 0.4]], [1, 2], 1)
    s2 = ranked_sample([[0.5, 0.6]], [1], 2)
    assert store_of(s1, s2).record_count == 3
    assert PreferenceStore().record_count == 0
