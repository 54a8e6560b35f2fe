#!/usr/bin/env python3
"""Snapshots with unit churn: newcomers, outgoers, and the modified indices.

Classic indices need both snapshots to cover the same units. When units
arrive or leave between snapshots, the modified family extends each
partition with one reserved cluster and keeps scoring well defined.
"""

from pathlib import Path

from partstab import (
    ScopeViolation,
    align,
    contingency,
    index_value,
    MNEMONICS,
    modified_rand,
    modified_wallace,
    parse_partition,
)

DATA = Path(__file__).resolve().parent / "data"

first = parse_partition(DATA / "six_unit_first.csv")
second = parse_partition(DATA / "six_unit_second.csv")
pair = align(first, second)

print("persistent:", sorted(pair.persistent))
print("newcomers: ", sorted(pair.newcomers))
print("outgoers:  ", sorted(pair.outgoers))

table = contingency(pair, "augmented")
print()
print("augmented table (reserved clusters last)")
print("  rows", table.row_labels)
print("  cols", table.col_labels)
print(table.counts)

print()
print(f"modified Rand        {modified_rand(pair):.4f}")
print(f"modified Wallace 1   {modified_wallace(pair, 'one'):.4f}")
print(f"modified Wallace 2   {modified_wallace(pair, 'two'):.4f}")

# The classic Rand index refuses this input outright.
try:
    index_value(pair, MNEMONICS["ri"])
except ScopeViolation as exc:
    print()
    print("classic Rand rejected:", exc)

# So do the restricted scopes when the excluded group is present.
try:
    modified_wallace(pair, "one", "newcomers_only")
except ScopeViolation as exc:
    print("newcomers-only rejected:", exc)
