"""Similarity and stability indices for partition pairs.

Classic indices (Rand, Fowlkes-Mallows, the two Wallace asymmetries)
compare partitions of one fixed unit set through the four pair buckets.
The modified family extends them to snapshots whose unit sets differ:
pairs involving newcomers or outgoers never count as agreements, but the
denominators still range over all units, so churn itself lowers the
score.

Modified index shapes, written on the aligned table with the newcomer
row and outgoer column last:

* modified Rand = (a + d on the persistent core) / C(n, 2) with n the
  union size;
* modified Wallace variant one = (co-clustered persistent pairs agreeing
  in both) / (pairs co-clustered in the extended first partition), and
  variant two mirrors it on the extended second partition;
* the outgoers-only and newcomers-only scopes drop the absent group's
  reserved cluster from the denominator and refuse data containing it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateIndex, ScopeViolation, TooFewUnits
from .pairs import PairCounts, pair_counts
from .partitions import AlignedPair, ContingencyTable, contingency

CLASSIC_FAMILIES = ("rand", "fowlkes_mallows", "wallace")
FAMILIES = CLASSIC_FAMILIES + ("modified_rand", "modified_wallace")
VARIANTS = ("one", "two")
SCOPES = ("general", "outgoers_only", "newcomers_only")


@dataclass(frozen=True)
class IndexKind:
    """One concrete index: a family plus variant and scope where they apply."""

    family: str
    variant: str | None = None
    scope: str | None = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown index family {self.family!r}")
        needs_variant = self.family in ("wallace", "modified_wallace")
        if needs_variant and self.variant not in VARIANTS:
            raise ValueError(f"family {self.family!r} needs variant 'one' or 'two'")
        if not needs_variant and self.variant is not None:
            raise ValueError(f"family {self.family!r} takes no variant")
        if self.family == "modified_wallace":
            if self.scope not in SCOPES:
                raise ValueError(f"family {self.family!r} needs a scope from {SCOPES}")
        elif self.scope is not None:
            raise ValueError(f"family {self.family!r} takes no scope")

    @property
    def mnemonic(self) -> str:
        return _KIND_TO_MNEMONIC[self]

    @classmethod
    def from_mnemonic(cls, name: str) -> "IndexKind":
        try:
            return MNEMONICS[name]
        except KeyError:
            raise ValueError(f"unknown index mnemonic {name!r}") from None


MNEMONICS: dict[str, IndexKind] = {
    "ri": IndexKind("rand"),
    "fm": IndexKind("fowlkes_mallows"),
    "w1": IndexKind("wallace", "one"),
    "w2": IndexKind("wallace", "two"),
    "mri": IndexKind("modified_rand"),
    "mw1": IndexKind("modified_wallace", "one", "general"),
    "mw2": IndexKind("modified_wallace", "two", "general"),
    "mwo1": IndexKind("modified_wallace", "one", "outgoers_only"),
    "mwo2": IndexKind("modified_wallace", "two", "outgoers_only"),
    "mwn1": IndexKind("modified_wallace", "one", "newcomers_only"),
    "mwn2": IndexKind("modified_wallace", "two", "newcomers_only"),
}
_KIND_TO_MNEMONIC = {kind: name for name, kind in MNEMONICS.items()}
CANONICAL_ORDER = tuple(MNEMONICS)


def rand_index(pc: PairCounts) -> float:
    """Share of unit pairs treated the same way by both partitions."""
    return (pc.a + pc.d) / pc.total_pairs


def wallace(pc: PairCounts, variant: str) -> float:
    """Probability that a pair co-clustered in one partition stays together.

    Variant "one" conditions on the first partition, "two" on the second.
    """
    if variant == "one":
        denom = pc.a + pc.b
        side = "first"
    elif variant == "two":
        denom = pc.a + pc.c
        side = "second"
    else:
        raise ValueError(f"variant must be 'one' or 'two', got {variant!r}")
    if denom == 0:
        raise DegenerateIndex(f"{side} partition co-clusters no pairs (all singletons)")
    return pc.a / denom


def fowlkes_mallows(pc: PairCounts) -> float:
    """Geometric mean of the two Wallace values."""
    d1 = pc.a + pc.b
    d2 = pc.a + pc.c
    if d1 == 0 or d2 == 0:
        raise DegenerateIndex("a partition co-clusters no pairs (all singletons)")
    return pc.a / math.sqrt(d1 * d2)


def _block(counts: np.ndarray, u_aug: bool, v_aug: bool) -> np.ndarray:
    """Cells outside the reserved row and column."""
    r = counts.shape[0] - (1 if u_aug else 0)
    q = counts.shape[1] - (1 if v_aug else 0)
    return counts[:r, :q]


def _modified_rand_from_counts(counts: np.ndarray, u_aug: bool, v_aug: bool) -> float:
    block = _block(counts, u_aug, v_aug)
    m = int(block.sum())
    n = int(counts.sum())
    s = int((block * block).sum())
    r2 = int((block.sum(axis=1) ** 2).sum())
    c2 = int((block.sum(axis=0) ** 2).sum())
    a_core = (s - m) // 2
    d_core = (m * m + s - r2 - c2) // 2
    return (a_core + d_core) / (n * (n - 1) // 2)


def _modified_wallace_from_counts(
    counts: np.ndarray, variant: str, scope: str, u_aug: bool, v_aug: bool
) -> float:
    block = _block(counts, u_aug, v_aug)
    numerator = int((block * (block - 1)).sum()) // 2
    if variant == "one":
        margins = counts.sum(axis=1)
        if scope == "outgoers_only" and u_aug:
            margins = margins[:-1]
        side = "extended first"
    else:
        margins = counts.sum(axis=0)
        if scope == "newcomers_only" and v_aug:
            margins = margins[:-1]
        side = "extended second"
    denominator = int((margins * (margins - 1)).sum()) // 2
    if denominator == 0:
        raise DegenerateIndex(f"{side} partition co-clusters no pairs")
    return numerator / denominator


def _classic_from_counts(counts: np.ndarray, kind: IndexKind) -> float:
    n = int(counts.sum())
    if n < 2:
        raise TooFewUnits(f"need at least 2 units, got {n}")
    s = int((counts * counts).sum())
    r2 = int((counts.sum(axis=1) ** 2).sum())
    c2 = int((counts.sum(axis=0) ** 2).sum())
    a = (s - n) // 2
    b = (r2 - s) // 2
    c = (c2 - s) // 2
    d = (n * n + s - r2 - c2) // 2
    pc = PairCounts(a=a, b=b, c=c, d=d, n=n)
    if kind.family == "rand":
        return rand_index(pc)
    if kind.family == "fowlkes_mallows":
        return fowlkes_mallows(pc)
    return wallace(pc, kind.variant)


def value_from_counts(
    counts: np.ndarray, kind: IndexKind, u_aug: bool, v_aug: bool
) -> float:
    """Index value straight from a counts matrix.

    The reserved clusters are positional: when ``u_aug`` the last row is
    the newcomer cluster, when ``v_aug`` the last column is the outgoer
    cluster. Permutation replicates and simulated null draws go through
    here, so a non-zero corner cell is acceptable.
    """
    if kind.family in CLASSIC_FAMILIES:
        return _classic_from_counts(counts, kind)
    if kind.family == "modified_rand":
        return _modified_rand_from_counts(counts, u_aug, v_aug)
    return _modified_wallace_from_counts(counts, kind.variant, kind.scope, u_aug, v_aug)


def _check_scope(pair: AlignedPair, scope: str, index_name: str) -> None:
    if scope == "outgoers_only" and pair.newcomers:
        raise ScopeViolation(
            f"{index_name} excludes newcomers but {len(pair.newcomers)} are present"
        )
    if scope == "newcomers_only" and pair.outgoers:
        raise ScopeViolation(
            f"{index_name} excludes outgoers but {len(pair.outgoers)} are present"
        )


def modified_rand(pair: AlignedPair) -> float:
    """Rand-style agreement over the union of units of two snapshots.

    Counts agreements only among persistent units yet divides by all
    C(n, 2) pairs of the union, so newcomers and outgoers dilute the
    score. Equals the Rand index when the unit sets coincide.
    """
    if pair.n_union < 2:
        raise TooFewUnits(f"need at least 2 units, got {pair.n_union}")
    table = contingency(pair, "augmented")
    return _modified_rand_from_counts(
        table.counts, table.newcomer_row is not None, table.outgoer_col is not None
    )


def modified_wallace(pair: AlignedPair, variant: str, scope: str = "general") -> float:
    """Wallace-style retention rate for snapshots with unit churn.

    Variant "one" conditions on pairs co-clustered in the extended first
    partition (newcomers form one extra cluster), variant "two" on the
    extended second partition (outgoers form the extra cluster). The
    restricted scopes reject data containing the excluded group.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be 'one' or 'two', got {variant!r}")
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}, got {scope!r}")
    name = IndexKind("modified_wallace", variant, scope).mnemonic
    _check_scope(pair, scope, name)
    table = contingency(pair, "augmented")
    return _modified_wallace_from_counts(
        table.counts,
        variant,
        scope,
        table.newcomer_row is not None,
        table.outgoer_col is not None,
    )


def index_value(pair: AlignedPair, kind: IndexKind) -> float:
    """Evaluate any index kind on an aligned pair.

    Classic kinds require the two snapshots to cover the same units.
    """
    if kind.family in CLASSIC_FAMILIES:
        if pair.newcomers or pair.outgoers:
            raise ScopeViolation(
                f"{kind.mnemonic} requires identical unit sets "
                f"({len(pair.newcomers)} newcomers, {len(pair.outgoers)} outgoers)"
            )
        return _classic_from_counts(contingency(pair, "core").counts, kind)
    if kind.family == "modified_rand":
        return modified_rand(pair)
    return modified_wallace(pair, kind.variant, kind.scope)


def classic_pair_counts(pair: AlignedPair) -> PairCounts:
    """Pair buckets for snapshots over one common unit set."""
    if pair.newcomers or pair.outgoers:
        raise ScopeViolation("pair counts require identical unit sets")
    return pair_counts(contingency(pair, "core"))
