"""Benchmark problems and the objective-evaluation accounting layer.

Two families are provided:

* ``dtlz1``/``dtlz2``/``dtlz7``: scalable continuous problems.  dtlz1 and
  dtlz2 are modified so that dropping objectives does not collapse the
  optimal region onto a lower-dimensional boundary: dtlz1 constrains every
  decision variable to [0.25, 0.75], and dtlz2 maps each raw variable x in
  [0, 1] to x/2 + 0.25 before applying the usual formulas.  dtlz7 is the
  standard formulation.
* ``rmnk``: epistatic binary landscapes with m correlated contribution
  tables.  Matched table entries across objectives are drawn from a
  multivariate normal with constant off-diagonal correlation ``rho`` and
  mapped through the normal CDF, so every contribution lies in [0, 1].

Objective indices are 1-based everywhere in the public API (an objective
vector's first component is objective 1).  ``ActiveMask`` carries the subset
of objectives the optimizer currently evaluates; ``EvalCounter`` counts one
unit per (solution, active objective) evaluation, which is the budget metric
reported by the engine.
"""

from __future__ import annotations

import dataclasses
from typing import Iterator, Sequence

import numpy as np
from scipy.special import ndtr

from ._kernels import rmnk_eval

Genome = np.ndarray

_DTLZ_EXTRA = {"dtlz1": 4, "dtlz2": 9, "dtlz7": 19}


@dataclasses.dataclass(frozen=True)
class ActiveMask:
    """Strictly increasing 1-based index set of the active objectives."""

    indices: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        if not self.indices:
            raise ValueError("active mask must not be empty")
        if any(i < 1 or i > self.m for i in self.indices):
            raise ValueError(f"mask indices must lie in [1, {self.m}]: {self.indices}")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError(f"mask indices must be strictly increasing: {self.indices}")

    @classmethod
    def full(cls, m: int) -> "ActiveMask":
        return cls(tuple(range(1, m + 1)), m)

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def zero_based(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=np.int64) - 1

    def __contains__(self, index: int) -> bool:
        return index in self.indices

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)


@dataclasses.dataclass
class EvalCounter:
    """Cumulative count of objective evaluations (one per solution-objective)."""

    total: int = 0

    def charge(self, amount: int) -> None:
        if amount < 0:
            raise ValueError("cannot charge a negative amount")
        self.total += amount


@dataclasses.dataclass(eq=False)
class ProblemInstance:
    """A concrete problem: dimensions, encoding, and (for rmnk) its tables."""

    kind: str
    m: int
    n: int
    encoding: str
    lower: float
    upper: float
    k: int | None = None
    rho: float | None = None
    seed: int | None = None
    tables: np.ndarray | None = dataclasses.field(default=None, repr=False)
    links: np.ndarray | None = dataclasses.field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError("need at least two objectives")
        if self.kind in _DTLZ_EXTRA:
            expected = self.m + _DTLZ_EXTRA[self.kind]
            if self.n != expected:
                raise ValueError(f"{self.kind} with m={self.m} requires n={expected}")
        elif self.kind == "rmnk":
            if self.k is None or self.rho is None:
                raise ValueError("rmnk instances need k and rho")
            if self.k < 0 or self.k >= self.n:
                raise ValueError("rmnk requires 0 <= k < n")
            if self.rho < -1.0 / (self.m - 1):
                raise ValueError(f"rho must be >= -1/(m-1) = {-1.0 / (self.m - 1):.6f}")
        else:
            raise ValueError(f"unknown problem kind: {self.kind}")


@dataclasses.dataclass(frozen=True)
class ProblemSpec:
    """Serializable description of a problem, enough to rebuild the instance.

    ``n`` applies to rmnk only (genome length; default per rmnk_dimension);
    the dtlz families fix their own dimension from m.
    """

    kind: str
    m: int
    k: int = 1
    rho: float = 0.0
    instance_seed: int = 2024
    n: int | None = None

    def build(self) -> ProblemInstance:
        if self.kind == "rmnk":
            return rmnk_generate(self.m, n=self.n, k=self.k, rho=self.rho,
                                 seed=self.instance_seed)
        if self.kind == "dtlz1":
            return dtlz1(self.m)
        if self.kind == "dtlz2":
            return dtlz2(self.m)
        if self.kind == "dtlz7":
            return dtlz7(self.m)
        raise ValueError(f"unknown problem kind: {self.kind}")


def dtlz1(m: int) -> ProblemInstance:
    """dtlz1 with every variable constrained to [0.25, 0.75]; n = m + 4."""
    return ProblemInstance(kind="dtlz1", m=m, n=m + 4, encoding="continuous",
                           lower=0.25, upper=0.75)


def dtlz2(m: int) -> ProblemInstance:
    """dtlz2 evaluated on x/2 + 0.25; raw variables stay in [0, 1]; n = m + 9."""
    return ProblemInstance(kind="dtlz2", m=m, n=m + 9, encoding="continuous",
                           lower=0.0, upper=1.0)


def dtlz7(m: int) -> ProblemInstance:
    """Standard dtlz7 (disconnected front); n = m + 19."""
    return ProblemInstance(kind="dtlz7", m=m, n=m + 19, encoding="continuous",
                           lower=0.0, upper=1.0)


def rmnk_dimension(m: int) -> int:
    """Default rmnk genome length for a given objective count.

    Chosen so that a 100-member population keeps residual variation in every
    objective over a 500-generation run: m=4 needs a longer genome (24) to
    avoid collapsing onto a handful of points, while higher m spreads the
    population thin enough on its own that shorter genomes suffice.
    """
    if m <= 4:
        return 24
    return (round(m / 10) + 1) * 10


def rmnk_generate(m: int, n: int | None = None, k: int = 1, rho: float = 0.0,
                  seed: int = 0) -> ProblemInstance:
    """Generate an rmnk instance with correlated contribution tables.

    Each bit position p depends on itself plus k other positions (the same
    epistatic links for every objective).  For every (position, bit pattern)
    cell, the m objective contributions are one draw from a multivariate
    normal with unit variances and constant correlation rho, pushed through
    the normal CDF so values land in [0, 1].
    """
    if n is None:
        n = rmnk_dimension(m)
    if m < 2:
        raise ValueError("need at least two objectives")
    if rho < -1.0 / (m - 1):
        raise ValueError(f"rho must be >= -1/(m-1) = {-1.0 / (m - 1):.6f}")
    if not 0 <= k < n:
        raise ValueError("rmnk requires 0 <= k < n")

    rng = np.random.default_rng(seed)
    links = np.empty((n, k + 1), dtype=np.int32)
    for p in range(n):
        links[p, 0] = p
        others = rng.choice(n - 1, size=k, replace=False)
        links[p, 1:] = others + (others >= p)

    patterns = 1 << (k + 1)
    cov = np.full((m, m), rho)
    np.fill_diagonal(cov, 1.0)
    # eigh-based transform stays valid at the boundary rho = -1/(m-1),
    # where the covariance is singular and Cholesky would fail
    eigval, eigvec = np.linalg.eigh(cov)
    transform = eigvec * np.sqrt(np.clip(eigval, 0.0, None))
    z = rng.standard_normal((n * patterns, m)) @ transform.T
    tables = np.ascontiguousarray(ndtr(z).T.reshape(m, n, patterns))
    tables.setflags(write=False)
    links.setflags(write=False)
    return ProblemInstance(kind="rmnk", m=m, n=n, encoding="binary",
                           lower=0.0, upper=1.0, k=k, rho=rho, seed=seed,
                           tables=tables, links=links)


def _as_batch(instance: ProblemInstance, genomes: np.ndarray) -> np.ndarray:
    x = np.asarray(genomes)
    single = x.ndim == 1
    if single:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != instance.n:
        raise ValueError(f"expected genomes of length {instance.n}, got shape {x.shape}")
    if instance.encoding == "binary":
        if not np.isin(x, (0, 1)).all():
            raise ValueError("binary genomes must contain only 0 and 1")
    else:
        if np.any(x < instance.lower) or np.any(x > instance.upper):
            raise ValueError(
                f"genome values must lie in [{instance.lower}, {instance.upper}]")
    return x


def _dtlz1_values(m: int, x: np.ndarray) -> np.ndarray:
    tail = x[:, m - 1:]
    g = 100.0 * (tail.shape[1]
                 + ((tail - 0.5) ** 2 - np.cos(20.0 * np.pi * (tail - 0.5))).sum(axis=1))
    pos = x[:, :m - 1]
    prod = np.concatenate([np.ones((x.shape[0], 1)), np.cumprod(pos, axis=1)], axis=1)
    f = np.empty((x.shape[0], m))
    scale = 0.5 * (1.0 + g)
    f[:, 0] = scale * prod[:, m - 1]
    for i in range(2, m + 1):
        f[:, i - 1] = scale * prod[:, m - i] * (1.0 - pos[:, m - i])
    return f


def _dtlz2_values(m: int, x: np.ndarray) -> np.ndarray:
    y = x / 2.0 + 0.25
    tail = y[:, m - 1:]
    g = ((tail - 0.5) ** 2).sum(axis=1)
    theta = y[:, :m - 1] * (np.pi / 2.0)
    cos_prod = np.concatenate(
        [np.ones((x.shape[0], 1)), np.cumprod(np.cos(theta), axis=1)], axis=1)
    f = np.empty((x.shape[0], m))
    scale = 1.0 + g
    f[:, 0] = scale * cos_prod[:, m - 1]
    for i in range(2, m + 1):
        f[:, i - 1] = scale * cos_prod[:, m - i] * np.sin(theta[:, m - i])
    return f


def _dtlz7_values(m: int, x: np.ndarray) -> np.ndarray:
    tail = x[:, m - 1:]
    g = 1.0 + 9.0 * tail.mean(axis=1)
    f = np.empty((x.shape[0], m))
    lead = x[:, :m - 1]
    f[:, :m - 1] = lead
    h = m - (lead / (1.0 + g)[:, None] * (1.0 + np.sin(3.0 * np.pi * lead))).sum(axis=1)
    f[:, m - 1] = (1.0 + g) * h
    return f


def _values_at(instance: ProblemInstance, x: np.ndarray,
               zero_based: np.ndarray) -> np.ndarray:
    if instance.kind == "rmnk":
        return rmnk_eval(instance.tables, instance.links,
                         np.ascontiguousarray(x, dtype=np.int8), zero_based)
    if instance.kind == "dtlz1":
        full = _dtlz1_values(instance.m, x)
    elif instance.kind == "dtlz2":
        full = _dtlz2_values(instance.m, x)
    else:
        full = _dtlz7_values(instance.m, x)
    return full[:, zero_based]


def evaluate_indices(instance: ProblemInstance, genomes: np.ndarray,
                     indices: Sequence[int],
                     counter: EvalCounter | None = None) -> np.ndarray:
    """Evaluate the given 1-based objective indices for a batch of genomes.

    Charges ``len(indices)`` per genome to ``counter`` when one is supplied.
    """
    idx = np.asarray(tuple(indices), dtype=np.int64)
    if idx.size == 0:
        raise ValueError("need at least one objective index")
    if np.any(idx < 1) or np.any(idx > instance.m):
        raise ValueError(f"objective indices must lie in [1, {instance.m}]")
    x = _as_batch(instance, genomes)
    values = _values_at(instance, x, idx - 1)
    if counter is not None:
        counter.charge(x.shape[0] * idx.size)
    return values


def evaluate_full(instance: ProblemInstance, genome: Genome) -> np.ndarray:
    """All m objective values of one genome.  Never charged to a counter."""
    x = _as_batch(instance, genome)
    return _values_at(instance, x, np.arange(instance.m))[0]


def evaluate_full_batch(instance: ProblemInstance, genomes: np.ndarray) -> np.ndarray:
    """All m objective values for a batch of genomes.  Never charged."""
    x = _as_batch(instance, genomes)
    return _values_at(instance, x, np.arange(instance.m))


def evaluate_active(instance: ProblemInstance, genome: Genome, mask: ActiveMask,
                    counter: EvalCounter) -> np.ndarray:
    """Masked objective values of one genome; charges |mask| to the counter."""
    if mask.m != instance.m:
        raise ValueError("mask and instance disagree on the number of objectives")
    return evaluate_indices(instance, genome, mask.indices, counter)[0]


def evaluate_active_batch(instance: ProblemInstance, genomes: np.ndarray,
                          mask: ActiveMask, counter: EvalCounter) -> np.ndarray:
    """Masked objective values for a batch; charges batch * |mask|."""
    if mask.m != instance.m:
        raise ValueError("mask and instance disagree on the number of objectives")
    return evaluate_indices(instance, genomes, mask.indices, counter)


def random_genomes(instance: ProblemInstance, count: int,
                   rng: np.random.Generator) -> np.ndarray:
    """Uniform random genomes in the instance's encoding domain."""
    if instance.encoding == "binary":
        return rng.integers(0, 2, size=(count, instance.n), dtype=np.int8)
    span = instance.upper - instance.lower
    return instance.lower + span * rng.random((count, instance.n))


def enumerate_genomes(instance: ProblemInstance) -> np.ndarray:
    """All 2**n genomes of a small binary instance, in lexicographic order."""
    if instance.encoding != "binary":
        raise ValueError("exhaustive enumeration is only defined for binary encodings")
    if instance.n > 20:
        raise ValueError("refusing to enumerate more than 2**20 genomes")
    count = 1 << instance.n
    codes = np.arange(count, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(instance.n)[None, :]) & 1
    return bits.astype(np.int8)


def export_tables(instance: ProblemInstance, path: str) -> None:
    """Dump rmnk contribution tables for external cross-checks.

    ``.npy`` stores the raw (m, n, 2**(k+1)) array; ``.csv`` writes one row
    per (objective, position, pattern) with full float precision.
    """
    if instance.kind != "rmnk":
        raise ValueError("only rmnk instances have contribution tables")
    if path.endswith(".npy"):
        np.save(path, instance.tables)
        return
    if path.endswith(".csv"):
        m, n, patterns = instance.tables.shape
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("objective,position,pattern,value\n")
            for obj in range(m):
                for p in range(n):
                    for t in range(patterns):
                        value = float(instance.tables[obj, p, t])
                        fh.write(f"{obj + 1},{p},{t},{value!r}\n")
        return
    raise ValueError("path must end in .npy or .csv")
