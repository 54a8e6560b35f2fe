"""Correction of raw index values for chance agreement.

A raw index is rescaled as (raw - expected) / (maximum - expected) with
the maximum fixed at 1. The expected value under the fixed-sizes null
model comes either from Monte Carlo (independently permute the unit
assignments of both partitions, keeping every cluster size, and average
the index over replicates) or from closed forms where they exist: the
hypergeometric expectation reproduces the permutation mean of the Rand
index exactly, the squared-marginal approximation is cheaper but biased,
and Simpson's diversity gives the expected Wallace value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateAdjustment,
    DegenerateIndex,
    EstimateUnreliable,
    TooFewUnits,
)
from .indices import (
    CLASSIC_FAMILIES,
    IndexKind,
    classic_pair_counts,
    index_value,
    value_from_counts,
    wallace,
)
from .partitions import (
    NEWCOMER_LABEL,
    OUTGOER_LABEL,
    AlignedPair,
    ContingencyTable,
    Partition,
    _codes,
    _crosstab,
)

MAX_INDEX = 1.0

ESTIMATE_METHODS = ("permutation", "hypergeometric", "approximation", "simpson")


@dataclass(frozen=True)
class AdjustmentConfig:
    """Settings for permutation-based expected values."""

    seed: int
    repetitions: int = 1000

    def __post_init__(self) -> None:
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")


@dataclass(frozen=True)
class ExpectedValueEstimate:
    """Expected index value under the fixed-sizes null model."""

    mean: float
    std_error: float
    repetitions: int
    method: str

    def __post_init__(self) -> None:
        if self.method not in ESTIMATE_METHODS:
            raise ValueError(f"unknown estimate method {self.method!r}")
        if self.std_error < 0:
            raise ValueError("std_error must be non-negative")


def adjust(raw: float, expected: ExpectedValueEstimate) -> float:
    """Rescale a raw value against its expectation, maximum fixed at 1."""
    if raw == MAX_INDEX:
        return 1.0
    if expected.mean >= MAX_INDEX:
        raise DegenerateAdjustment(
            f"expected value {expected.mean} reaches the maximum, correction undefined"
        )
    return (raw - expected.mean) / (MAX_INDEX - expected.mean)


def permute_within(partition: Partition, rng: np.random.Generator) -> Partition:
    """Uniformly random reassignment preserving every cluster size.

    Units are taken in sorted order and the label vector is permuted, so
    the result for a given generator state is reproducible. The input
    partition is not modified.
    """
    units = sorted(partition.units)
    labels = np.array([partition.label_of(u) for u in units], dtype=object)
    shuffled = rng.permutation(labels)
    return Partition(dict(zip(units, shuffled)), _allow_reserved=True)


def _replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    # Stream depends only on (seed, replicate), so replicates are
    # order-independent and reproducible in isolation.
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, replicate))))


def _side_codes(pair: AlignedPair, kind: IndexKind):
    """Code vectors for both sides in one shared unit order."""
    if kind.family in CLASSIC_FAMILIES:
        units = sorted(pair.persistent)
        rcodes, rlabels = _codes(pair.first, units, NEWCOMER_LABEL)
        ccodes, clabels = _codes(pair.second, units, OUTGOER_LABEL)
        u_aug = v_aug = False
    else:
        units = sorted(pair.units)
        rcodes, rlabels = _codes(pair.u_prime, units, NEWCOMER_LABEL)
        ccodes, clabels = _codes(pair.v_prime, units, OUTGOER_LABEL)
        u_aug = bool(pair.newcomers)
        v_aug = bool(pair.outgoers)
    return rcodes, len(rlabels), ccodes, len(clabels), u_aug, v_aug


def permutation_expectation(
    pair: AlignedPair, kind: IndexKind, config: AdjustmentConfig
) -> ExpectedValueEstimate:
    """Monte Carlo estimate of the expected index under the null model.

    Each replicate draws its own generator from (seed, replicate index),
    permutes both extended partitions independently with cluster sizes
    fixed, and re-evaluates the index with the reserved clusters kept in
    their positional roles. Replicates with a degenerate index are
    excluded and counted.
    """
    index_value(pair, kind)  # surface the raw index preconditions first
    rcodes, n_rows, ccodes, n_cols, u_aug, v_aug = _side_codes(pair, kind)
    values = []
    excluded = 0
    for i in range(config.repetitions):
        rng = _replicate_rng(config.seed, i)
        pr = rng.permutation(rcodes)
        pcc = rng.permutation(ccodes)
        counts = _crosstab(pr, n_rows, pcc, n_cols)
        try:
            values.append(value_from_counts(counts, kind, u_aug, v_aug))
        except DegenerateIndex:
            excluded += 1
    if not values:
        raise DegenerateIndex("every permutation replicate was degenerate")
    if 2 * excluded > config.repetitions:
        raise EstimateUnreliable(
            f"{excluded} of {config.repetitions} replicates were degenerate"
        )
    mean = float(np.mean(values))
    if len(values) > 1:
        se = float(np.std(values, ddof=1) / math.sqrt(len(values)))
    else:
        se = 0.0
    return ExpectedValueEstimate(
        mean=mean, std_error=se, repetitions=config.repetitions, method="permutation"
    )


def expected_sum_squares(table: ContingencyTable, method: str) -> float:
    """Expected sum of squared cell counts under the null model.

    "hypergeometric" is the exact permutation-model expectation;
    "approximation" replaces it with the product of squared marginal
    sums over n squared, which is close for large tables.
    """
    n = table.total
    if n < 2:
        raise TooFewUnits(f"need at least 2 units, got {n}")
    rows = table.row_marginals
    cols = table.col_marginals
    r2 = int((rows * rows).sum())
    c2 = int((cols * cols).sum())
    if method == "approximation":
        return r2 * c2 / (n * n)
    if method == "hypergeometric":
        return r2 * c2 / (n * (n - 1)) + (n * n - (r2 + c2)) / (n - 1)
    raise ValueError(f"unknown method {method!r}")


def expected_rand(
    table: ContingencyTable, method: str = "hypergeometric"
) -> ExpectedValueEstimate:
    """Closed-form expected Rand index under the null model."""
    n = table.total
    if n < 2:
        raise TooFewUnits(f"need at least 2 units, got {n}")
    rows = table.row_marginals
    cols = table.col_marginals
    r2 = int((rows * rows).sum())
    c2 = int((cols * cols).sum())
    pairs = n * (n - 1) // 2
    mean = (pairs + expected_sum_squares(table, method) - (r2 + c2) / 2) / pairs
    return ExpectedValueEstimate(mean=mean, std_error=0.0, repetitions=0, method=method)


def adjusted_rand_analytic(table: ContingencyTable) -> float:
    """Chance-corrected Rand index in closed form.

    Equal to adjust() applied to the Rand index with the hypergeometric
    expectation, up to floating point.
    """
    n = table.total
    if n < 2:
        raise TooFewUnits(f"need at least 2 units, got {n}")
    counts = table.counts
    sij = int((counts * (counts - 1)).sum()) // 2
    rows = table.row_marginals
    cols = table.col_marginals
    ca = int((rows * (rows - 1)).sum()) // 2
    cb = int((cols * (cols - 1)).sum()) // 2
    pairs = n * (n - 1) // 2
    # Denominator is zero exactly when (ca + cb) * pairs == 2 * ca * cb.
    if (ca + cb) * pairs == 2 * ca * cb:
        raise DegenerateAdjustment("expected value reaches the maximum")
    chance = ca * cb / pairs
    return (sij - chance) / ((ca + cb) / 2 - chance)


def simpson_diversity(partition: Partition) -> float:
    """Probability that two distinct units share a cluster."""
    n = partition.n_units
    if n < 2:
        raise TooFewUnits(f"need at least 2 units, got {n}")
    return sum(s * (s - 1) for s in partition.sizes) / (n * (n - 1))


def adjusted_wallace_analytic(pair: AlignedPair, variant: str) -> float:
    """Chance-corrected Wallace value in closed form.

    The expected Wallace value under the null model is the Simpson
    diversity of the conditioning partition: the second partition for
    variant "one", the first for variant "two".
    """
    pc = classic_pair_counts(pair)
    raw = wallace(pc, variant)
    conditioning = pair.second if variant == "one" else pair.first
    sid = simpson_diversity(conditioning)
    if sid >= 1.0:
        raise DegenerateAdjustment("conditioning partition is a single cluster")
    return (raw - sid) / (1.0 - sid)
