"""Problem definitions, evaluation accounting, and instance generation."""

import numpy as np
import pytest
from scipy.stats import spearmanr

from driftmoo.problems import (ActiveMask, EvalCounter, ProblemSpec, dtlz1,
                               dtlz2, dtlz7, enumerate_genomes, evaluate_active,
                               evaluate_active_batch, evaluate_full,
                               evaluate_full_batch, evaluate_indices,
                               export_tables, random_genomes, rmnk_dimension,
                               rmnk_generate)

# ---------------------------------------------------------------------------
# independent scalar oracles for the continuous families, written as direct
# per-objective loops so they share no code path with the vectorized library
# ---------------------------------------------------------------------------


def linear_front_oracle(m, x):
    tail = x[m - 1:]
    g = 100.0 * (len(tail) + sum((v - 0.5) ** 2 - np.cos(20.0 * np.pi * (v - 0.5))
                                 for v in tail))
    f = []
    for i in range(1, m + 1):
        value = 0.5 * (1.0 + g)
        for j in range(m - i):
            value *= x[j]
        if i > 1:
            value *= 1.0 - x[m - i]
        f.append(value)
    return np.asarray(f)


def spherical_front_oracle(m, x_raw):
    y = [v / 2.0 + 0.25 for v in x_raw]
    g = sum((v - 0.5) ** 2 for v in y[m - 1:])
    f = []
    for i in range(1, m + 1):
        value = 1.0 + g
        for j in range(m - i):
            value *= np.cos(y[j] * np.pi / 2.0)
        if i > 1:
            value *= np.sin(y[m - i] * np.pi / 2.0)
        f.append(value)
    return np.asarray(f)


def disconnected_front_oracle(m, x):
    tail = x[m - 1:]
    g = 1.0 + 9.0 * sum(tail) / len(tail)
    f = list(x[:m - 1])
    h = m - sum(v / (1.0 + g) * (1.0 + np.sin(3.0 * np.pi * v))
                for v in x[:m - 1])
    f.append((1.0 + g) * h)
    return np.asarray(f)


def rmnk_oracle(instance, genome):
    """Direct table-lookup evaluation: little-endian bit pattern per position."""
    out = np.zeros(instance.m)
    for j in range(instance.m):
        total = 0.0
        for p in range(instance.n):
            pattern = 0
            for bit, source in enumerate(instance.links[p]):
                pattern |= int(genome[source]) << bit
            total += instance.tables[j, p, pattern]
        out[j] = total / instance.n
    return out


# ---------------------------------------------------------------------------
# continuous families
# ---------------------------------------------------------------------------


def test_linear_front_hand_values():
    inst = dtlz1(4)
    assert inst.n == 8 and inst.lower == 0.25 and inst.upper == 0.75
    f = evaluate_full(inst, np.full(8, 0.5))
    np.testing.assert_allclose(f, [0.0625, 0.0625, 0.125, 0.25], atol=1e-12)
    assert f.sum() == pytest.approx(0.5)


def test_linear_front_matches_oracle():
    inst = dtlz1(4)
    rng = np.random.default_rng(11)
    xs = random_genomes(inst, 25, rng)
    batch = evaluate_full_batch(inst, xs)
    for i, x in enumerate(xs):
        np.testing.assert_allclose(batch[i], linear_front_oracle(4, x),
                                   rtol=1e-12)


def test_spherical_front_hand_values():
    inst = dtlz2(4)
    assert inst.n == 13
    f = evaluate_full(inst, np.full(13, 0.5))
    c = np.cos(np.pi / 4.0)
    s = np.sin(np.pi / 4.0)
    np.testing.assert_allclose(f, [c ** 3, c * c * s, c * s, s], atol=1e-12)
    assert (f ** 2).sum() == pytest.approx(1.0)


def test_spherical_front_matches_oracle_and_sphere_identity():
    inst = dtlz2(3)
    rng = np.random.default_rng(12)
    xs = random_genomes(inst, 25, rng)
    batch = evaluate_full_batch(inst, xs)
    for i, x in enumerate(xs):
        expected = spherical_front_oracle(3, x)
        np.testing.assert_allclose(batch[i], expected, rtol=1e-12)
        y_tail = x[2:] / 2.0 + 0.25
        g = ((y_tail - 0.5) ** 2).sum()
        assert (batch[i] ** 2).sum() == pytest.approx((1.0 + g) ** 2)


def test_disconnected_front_hand_values_and_oracle():
    inst = dtlz7(4)
    assert inst.n == 23
    f = evaluate_full(inst, np.zeros(23))
    np.testing.assert_allclose(f, [0.0, 0.0, 0.0, 8.0], atol=1e-12)
    rng = np.random.default_rng(13)
    xs = random_genomes(inst, 25, rng)
    batch = evaluate_full_batch(inst, xs)
    for i, x in enumerate(xs):
        np.testing.assert_allclose(batch[i], disconnected_front_oracle(4, x),
                                   rtol=1e-12)


def test_continuous_domain_validation():
    inst = dtlz1(2)
    with pytest.raises(ValueError):
        evaluate_full(inst, np.full(6, 0.1))  # below the [0.25, 0.75] box
    with pytest.raises(ValueError):
        evaluate_full(inst, np.full(5, 0.5))  # wrong genome length


# ---------------------------------------------------------------------------
# binary epistatic landscapes
# ---------------------------------------------------------------------------


def test_binary_landscape_matches_oracle():
    inst = rmnk_generate(m=3, n=12, k=2, rho=0.3, seed=5)
    rng = np.random.default_rng(6)
    genomes = random_genomes(inst, 20, rng)
    batch = evaluate_full_batch(inst, genomes)
    for i, genome in enumerate(genomes):
        np.testing.assert_allclose(batch[i], rmnk_oracle(inst, genome),
                                   rtol=1e-12)


def test_binary_landscape_structure():
    inst = rmnk_generate(m=4, n=10, k=1, rho=0.0, seed=2024)
    assert inst.tables.shape == (4, 10, 4)
    assert inst.links.shape == (10, 2)
    assert (inst.tables >= 0.0).all() and (inst.tables <= 1.0).all()
    for p in range(10):
        row = inst.links[p]
        assert row[0] == p
        assert len(set(row.tolist())) == len(row)
        assert ((row >= 0) & (row < 10)).all()
    assert not inst.tables.flags.writeable
    assert not inst.links.flags.writeable


def test_binary_landscape_deterministic_generation():
    a = rmnk_generate(m=3, n=8, k=2, rho=0.5, seed=42)
    b = rmnk_generate(m=3, n=8, k=2, rho=0.5, seed=42)
    np.testing.assert_array_equal(a.tables, b.tables)
    np.testing.assert_array_equal(a.links, b.links)
    c = rmnk_generate(m=3, n=8, k=2, rho=0.5, seed=43)
    assert not np.array_equal(a.tables, c.tables)


def test_table_correlation_tracks_rho():
    # uniform marginals from a Gaussian copula: the rank correlation of two
    # table columns is (6/pi)*asin(rho/2); at rho=0.9 that is about 0.8915
    inst = rmnk_generate(m=2, n=400, k=3, rho=0.9, seed=9)
    a = inst.tables[0].ravel()
    b = inst.tables[1].ravel()
    observed = spearmanr(a, b).statistic
    expected = 6.0 / np.pi * np.arcsin(0.45)
    assert observed == pytest.approx(expected, abs=0.05)
    flat = rmnk_generate(m=2, n=400, k=3, rho=0.0, seed=9)
    assert abs(spearmanr(flat.tables[0].ravel(),
                         flat.tables[1].ravel()).statistic) < 0.05


def test_binary_landscape_rejects_bad_parameters():
    with pytest.raises(ValueError):
        rmnk_generate(m=1, n=8)
    with pytest.raises(ValueError):
        rmnk_generate(m=3, n=8, k=8)
    with pytest.raises(ValueError):
        rmnk_generate(m=3, n=8, k=1, rho=-0.9)  # below -1/(m-1)
    with pytest.raises(ValueError):
        evaluate_full(rmnk_generate(m=2, n=6), np.full(6, 2))


def test_default_genome_lengths():
    assert rmnk_dimension(4) == 24
    assert rmnk_dimension(10) == 20
    assert rmnk_dimension(20) == 30
    assert rmnk_generate(m=4).n == 24
    assert ProblemSpec(kind="rmnk", m=4).build().n == 24
    assert ProblemSpec(kind="rmnk", m=4, n=10).build().n == 10


def test_enumerate_genomes_is_little_endian_lexicographic():
    inst = rmnk_generate(m=2, n=5)
    genomes = enumerate_genomes(inst)
    assert genomes.shape == (32, 5)
    for code in (0, 1, 5, 31):
        expected = [(code >> p) & 1 for p in range(5)]
        assert genomes[code].tolist() == expected
    assert len({g.tobytes() for g in genomes}) == 32
    with pytest.raises(ValueError):
        enumerate_genomes(dtlz2(2))


# ---------------------------------------------------------------------------
# masks, accounting, specs
# ---------------------------------------------------------------------------


def test_active_mask_validation():
    mask = ActiveMask((1, 3), 4)
    assert mask.size == 2 and 3 in mask and 2 not in mask
    np.testing.assert_array_equal(mask.zero_based, [0, 2])
    assert ActiveMask.full(3).indices == (1, 2, 3)
    for bad in [(), (0, 1), (1, 5), (3, 1), (2, 2)]:
        with pytest.raises(ValueError):
            ActiveMask(bad, 4)


def test_evaluation_accounting():
    inst = rmnk_generate(m=4, n=10, seed=1)
    rng = np.random.default_rng(2)
    genomes = random_genomes(inst, 7, rng)
    counter = EvalCounter()
    partial = evaluate_indices(inst, genomes, (2, 4), counter)
    assert counter.total == 14
    full = evaluate_full_batch(inst, genomes)
    assert counter.total == 14  # full-vector queries are never charged
    np.testing.assert_array_equal(partial, full[:, [1, 3]])
    mask = ActiveMask((1, 2, 3), 4)
    evaluate_active(inst, genomes[0], mask, counter)
    assert counter.total == 17
    evaluate_active_batch(inst, genomes, mask, counter)
    assert counter.total == 38
    with pytest.raises(ValueError):
        counter.charge(-1)
    with pytest.raises(ValueError):
        evaluate_indices(inst, genomes, ())
    with pytest.raises(ValueError):
        evaluate_indices(inst, genomes, (0,))
    with pytest.raises(ValueError):
        evaluate_indices(inst, genomes, (5,))


def test_problem_spec_builds_each_family():
    assert ProblemSpec(kind="dtlz1", m=3).build().kind == "dtlz1"
    assert ProblemSpec(kind="dtlz2", m=3).build().n == 12
    assert ProblemSpec(kind="dtlz7", m=3).build().n == 22
    inst = ProblemSpec(kind="rmnk", m=3, k=2, rho=0.2, instance_seed=7).build()
    assert (inst.k, inst.rho, inst.seed) == (2, 0.2, 7)
    with pytest.raises(ValueError):
        ProblemSpec(kind="nope", m=3).build()


def test_random_genomes_respect_encoding():
    rng = np.random.default_rng(3)
    binary = random_genomes(rmnk_generate(m=2, n=9), 50, rng)
    assert binary.dtype == np.int8 and set(binary.ravel().tolist()) <= {0, 1}
    box = random_genomes(dtlz1(2), 50, rng)
    assert box.min() >= 0.25 and box.max() <= 0.75


def test_export_tables_roundtrip(tmp_path):
    inst = rmnk_generate(m=2, n=4, k=1, seed=3)
    npy = tmp_path / "tables.npy"
    export_tables(inst, str(npy))
    np.testing.assert_array_equal(np.load(npy), inst.tables)
    csv = tmp_path / "tables.csv"
    export_tables(inst, str(csv))
    lines = csv.read_text().strip().split("\n")
    assert lines[0] == "objective,position,pattern,value"
    assert len(lines) == 1 + 2 * 4 * 4
    obj, pos, pattern, value = lines[1].split(",")
    assert float(value) == inst.tables[int(obj) - 1, int(pos), int(pattern)]
    with pytest.raises(ValueError):
        export_tables(dtlz1(2), str(tmp_path / "x.npy"))
    with pytest.raises(ValueError):
        export_tables(inst, str(tmp_path / "x.txt"))
