"""Pair-type counts underlying every index.

Each unordered pair of units falls in exactly one of four buckets: both
partitions put the pair together (a), only the first does (b), only the
second does (c), neither does (d). The fast path derives the counts from
a contingency table in exact integer arithmetic; the oracle enumerates
pairs directly and exists to cross-check the fast path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import TooFewUnits, UnitSetMismatch
from .partitions import ContingencyTable, Partition


@dataclass(frozen=True)
class PairCounts:
    """Counts of the four pair buckets over n units."""

    a: int
    b: int
    c: int
    d: int
    n: int

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ValueError("pair counts must be non-negative")
        if self.a + self.b + self.c + self.d != self.n * (self.n - 1) // 2:
            raise ValueError("pair counts do not sum to n choose 2")

    @property
    def total_pairs(self) -> int:
        return self.n * (self.n - 1) // 2


def pair_counts(table: ContingencyTable) -> PairCounts:
    """Pair bucket counts from a contingency table.

    All arithmetic is exact: sums are taken in int64 under the table's
    unit cap and the halving happens after the subtraction, where the
    difference is guaranteed even.
    """
    n = table.total
    if n < 2:
        raise TooFewUnits(f"need at least 2 units, got {n}")
    counts = table.counts
    s = int((counts * counts).sum())
    rows = table.row_marginals
    cols = table.col_marginals
    r2 = int((rows * rows).sum())
    c2 = int((cols * cols).sum())
    a = (s - n) // 2
    b = (r2 - s) // 2
    c = (c2 - s) // 2
    d = (n * n + s - r2 - c2) // 2
    return PairCounts(a=a, b=b, c=c, d=d, n=n)


def pair_counts_oracle(first: Partition, second: Partition) -> PairCounts:
    """Pair bucket counts by direct enumeration of all unit pairs.

    Quadratic in the number of units; intended for validation against
    :func:`pair_counts` on small inputs.
    """
    if first.units != second.units:
        raise UnitSetMismatch("oracle requires partitions of the same unit set")
    units = sorted(first.units)
    if len(units) < 2:
        raise TooFewUnits(f"need at least 2 units, got {len(units)}")
    a = b = c = d = 0
    for x, y in itertools.combinations(units, 2):
        same_first = first.label_of(x) == first.label_of(y)
        same_second = second.label_of(x) == second.label_of(y)
        if same_first and same_second:
            a += 1
        elif same_first:
            b += 1
        elif same_second:
            c += 1
        else:
            d += 1
    return PairCounts(a=a, b=b, c=c, d=d, n=len(units))
