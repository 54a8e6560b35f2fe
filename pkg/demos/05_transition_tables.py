#!/usr/bin/env python3
"""Cluster-flow records for visualizing how group membership moved.

Each record is one non-zero cell of the augmented contingency table:
units that flowed from a first-snapshot cluster to a second-snapshot
cluster, with departures and arrivals under the reserved labels. The
records feed bipartite or alluvial plotting tools directly.
"""

from pathlib import Path

from partstab import align, emit_transitions, modified_rand, modified_wallace, parse_partition

DATA = Path(__file__).resolve().parent / "data"

base = parse_partition(DATA / "scenario_base.csv")

for name in ("scenario_quasi.csv", "scenario_merging.csv", "scenario_random.csv"):
    snapshot = parse_partition(DATA / name)
    pair = align(base, snapshot)
    print(f"{name}: mri={modified_rand(pair):.4f}",
          f"mw1={modified_wallace(pair, 'one'):.4f}",
          f"mw2={modified_wallace(pair, 'two'):.4f}")
    for source, target, count in emit_transitions(pair):
        print(f"  {source:>14} -> {target:<14} {count:2d}")
    print()

# The same records as CSV on stdout:
#   partstab transitions demos/data/scenario_base.csv demos/data/scenario_quasi.csv
