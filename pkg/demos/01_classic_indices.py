#!/usr/bin/env python3
"""Compare two clusterings of one fixed unit set with the classic indices."""

from partstab import (
    Partition,
    align,
    classic_pair_counts,
    contingency,
    fowlkes_mallows,
    rand_index,
    wallace,
)

# Five units, clustered two ways: sizes (3, 2) against sizes (2, 3).
first = Partition({"x1": "u1", "x2": "u1", "x3": "u1", "x4": "u2", "x5": "u2"})
second = Partition({"x1": "v1", "x2": "v1", "x3": "v2", "x4": "v2", "x5": "v2"})

pair = align(first, second)
table = contingency(pair, "core")
print("contingency table")
print("  rows", table.row_labels, "cols", table.col_labels)
print(table.counts)

pc = classic_pair_counts(pair)
print()
print(f"pair buckets: together/together a={pc.a}, first-only b={pc.b},")
print(f"              second-only c={pc.c}, apart/apart d={pc.d}  (n={pc.n})")

# Rand counts both kinds of agreement; Wallace conditions on one side.
print()
print(f"Rand index        {rand_index(pc):.4f}")
print(f"Wallace (first)   {wallace(pc, 'one'):.4f}")
print(f"Wallace (second)  {wallace(pc, 'two'):.4f}")
print(f"Fowlkes-Mallows   {fowlkes_mallows(pc):.4f}")
