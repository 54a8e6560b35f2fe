"""Acceptance gate: ten criteria, each printed as a pass/fail line.

Every criterion re-derives its expected values independently where the
statement allows it (brute-force pair walks, exhaustive enumeration,
closed forms) and runs against a pinned tolerance and time budget.
"""

import itertools
import json
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import (
    ACCEPTANCE_RESULTS,
    DATA_DIR,
    GOLDEN_DIR,
    make_rng,
    random_partition,
)
from partstab import (
    MNEMONICS,
    AdjustmentConfig,
    Partition,
    SimulationDesign,
    adjust,
    align,
    classic_pair_counts,
    contingency,
    expected_rand,
    expected_value_grid,
    fowlkes_mallows,
    modified_rand,
    modified_wallace,
    pair_counts,
    pair_counts_oracle,
    parse_partition,
    permutation_expectation,
    rand_index,
    simpson_diversity,
    value_from_counts,
    wallace,
)
from partstab.cli import main


@contextmanager
def criterion(number, title, budget_seconds):
    start = time.perf_counter()
    try:
        yield
    except Exception:
        ACCEPTANCE_RESULTS.append(f"criterion {number:2d} FAIL  {title}")
        raise
    elapsed = time.perf_counter() - start
    if elapsed > budget_seconds:
        ACCEPTANCE_RESULTS.append(
            f"criterion {number:2d} FAIL  {title} "
            f"({elapsed:.1f}s over the {budget_seconds:.0f}s budget)"
        )
        pytest.fail(f"criterion {number} exceeded its {budget_seconds:.0f}s budget")
    ACCEPTANCE_RESULTS.append(
        f"criterion {number:2d} PASS  {title} ({elapsed:.1f}s)"
    )


def random_pair(rng, units):
    return align(
        random_partition(units, len(units), rng),
        random_partition(units, len(units), rng),
    )


def test_criterion_01_pair_count_oracle():
    with criterion(1, "pair counts match the brute-force oracle", 1.0):
        rng = make_rng("acceptance", 1)
        for _ in range(200):
            n = int(rng.integers(2, 11))
            units = [f"s{i}" for i in range(n)]
            pair = random_pair(rng, units)
            fast = pair_counts(contingency(pair, "core"))
            assert fast == pair_counts_oracle(pair.first, pair.second)


def test_criterion_02_classic_identities():
    with criterion(2, "classic index identities", 1.0):
        rng = make_rng("acceptance", 2)
        for _ in range(100):
            n = int(rng.integers(3, 12))
            units = [f"s{i}" for i in range(n)]
            pair = random_pair(rng, units)
            pc = pair_counts(contingency(pair, "core"))
            ri = rand_index(pc)
            assert 0.0 <= ri <= 1.0
            swapped = pair_counts(contingency(align(pair.second, pair.first), "core"))
            assert ri == rand_index(swapped)
            if pc.a + pc.b > 0 and pc.a + pc.c > 0:
                fm = fowlkes_mallows(pc)
                assert abs(fm * fm - wallace(pc, "one") * wallace(pc, "two")) < 1e-12
        same = Partition({"a": "x", "b": "x", "c": "y", "d": "z", "e": "z"})
        pc = classic_pair_counts(align(same, same))
        assert (rand_index(pc), fowlkes_mallows(pc)) == (1.0, 1.0)
        assert (wallace(pc, "one"), wallace(pc, "two")) == (1.0, 1.0)
        units = [f"s{i}" for i in range(7)]
        lumped = Partition({u: "all" for u in units})
        singles = Partition({u: u for u in units})
        assert rand_index(classic_pair_counts(align(lumped, singles))) == 0.0


def brute_force_modified(first_map, second_map):
    """Re-derive MRI/MW1/MW2 by walking every pair of the unit union."""
    union = sorted(set(first_map) | set(second_map))
    n = len(union)
    agree = both = u_co = v_co = 0
    for x, y in itertools.combinations(union, 2):
        in_first = x in first_map and y in first_map
        in_second = x in second_map and y in second_map
        same_u = in_first and first_map[x] == first_map[y]
        same_v = in_second and second_map[x] == second_map[y]
        if in_first and in_second:
            agree += same_u == same_v
            both += same_u and same_v
        u_co += same_u or (x not in first_map and y not in first_map)
        v_co += same_v or (x not in second_map and y not in second_map)
    pairs = n * (n - 1) // 2
    return agree / pairs, both / u_co, both / v_co


def test_criterion_03_modified_index_anchors():
    with criterion(3, "modified index anchors", 1.0):
        rng = make_rng("acceptance", 3)
        for _ in range(100):
            n = int(rng.integers(3, 12))
            units = [f"s{i}" for i in range(n)]
            pair = random_pair(rng, units)
            assert modified_rand(pair) == rand_index(classic_pair_counts(pair))
        six_first = {"a": "u1", "b": "u1", "c": "u1", "d": "u2", "e": "u2"}
        six_second = {"b": "v1", "c": "v1", "d": "v2", "e": "v2", "f": "v2"}
        mri, mw1, mw2 = brute_force_modified(six_first, six_second)
        assert (mri, mw1, mw2) == (0.4, 0.5, 0.5)
        pair = align(Partition(six_first), Partition(six_second))
        assert modified_rand(pair) == mri
        assert modified_wallace(pair, "one") == mw1
        assert modified_wallace(pair, "two") == mw2
        for _ in range(20):
            m = int(rng.integers(2, 9))
            gone = int(rng.integers(1, 5))
            fresh = int(rng.integers(1, 5))
            first = {f"p{i}": f"fa{i}" for i in range(m)}
            second = {f"p{i}": f"fb{i}" for i in range(m)}
            first.update({f"o{i}": "old" for i in range(gone)})
            second.update({f"w{i}": "new" for i in range(fresh)})
            n = m + gone + fresh
            singleton_pair = align(Partition(first), Partition(second))
            assert modified_rand(singleton_pair) == (
                (m * (m - 1) // 2) / (n * (n - 1) // 2)
            )


def fresh_label(partition, base):
    label = base
    while label in partition.labels:
        label += "~"
    return label


def refine_partition(partition, rng):
    splittable = [lab for lab, mem in partition.clusters if len(mem) >= 2]
    if not splittable:
        return None
    label = splittable[int(rng.integers(len(splittable)))]
    members = sorted(dict(partition.clusters)[label])
    take = int(rng.integers(1, len(members)))
    moved = set(rng.choice(members, size=take, replace=False).tolist())
    target = fresh_label(partition, label + "+")
    return Partition(
        {u: (target if u in moved else lab) for u, lab in partition.assignments.items()}
    )


def merge_clusters(partition, rng):
    labels = list(partition.labels)
    if len(labels) < 2:
        return None
    i, j = rng.choice(len(labels), size=2, replace=False).tolist()
    keep, absorb = labels[i], labels[j]
    return Partition(
        {u: (keep if lab == absorb else lab) for u, lab in partition.assignments.items()}
    )


def test_criterion_04_wallace_monotonicity():
    with criterion(4, "modified Wallace monotonicity under refine/coarsen", 5.0):
        rng = make_rng("acceptance", 4)
        checked = 0
        for _ in range(100):
            persistent = [f"p{i}" for i in range(int(rng.integers(4, 10)))]
            outgoers = [f"o{i}" for i in range(int(rng.integers(1, 4)))]
            newcomers = [f"w{i}" for i in range(int(rng.integers(1, 4)))]
            first = random_partition(persistent + outgoers, 4, rng)
            second = random_partition(persistent + newcomers, 4, rng)
            pair = align(first, second)
            mw1 = modified_wallace(pair, "one")
            mw2 = modified_wallace(pair, "two")
            finer_v = refine_partition(second, rng)
            if finer_v is not None:
                assert modified_wallace(align(first, finer_v), "one") <= mw1
                checked += 1
            coarser_v = merge_clusters(second, rng)
            if coarser_v is not None:
                assert modified_wallace(align(first, coarser_v), "one") >= mw1
                checked += 1
            finer_u = refine_partition(first, rng)
            if finer_u is not None:
                assert modified_wallace(align(finer_u, second), "two") <= mw2
                checked += 1
            coarser_u = merge_clusters(first, rng)
            if coarser_u is not None:
                assert modified_wallace(align(coarser_u, second), "two") >= mw2
                checked += 1
        assert checked >= 100


def adjusted_with_se(pair, name, config):
    kind = MNEMONICS[name]
    raw = (
        modified_rand(pair)
        if name == "mri"
        else modified_wallace(pair, kind.variant)
    )
    est = permutation_expectation(pair, kind, config)
    adjusted = adjust(raw, est)
    # Delta method: d(adjusted)/d(expected) = (raw - 1) / (1 - expected)^2.
    se = (1.0 - raw) / (1.0 - est.mean) ** 2 * est.std_error
    return adjusted, se


def test_criterion_05_scenario_orderings():
    with criterion(5, "adjusted scenario-family orderings", 30.0):
        base = parse_partition(DATA_DIR / "scenario_base.csv", "csv")
        quasi_snap = parse_partition(DATA_DIR / "scenario_quasi.csv", "csv")
        merging_snap = parse_partition(DATA_DIR / "scenario_merging.csv", "csv")
        quasi = align(base, quasi_snap)
        merging = align(base, merging_snap)
        splitting = align(merging_snap, base)

        assert modified_rand(merging) == modified_rand(splitting)
        assert modified_wallace(merging, "one") == modified_wallace(splitting, "two")
        assert modified_wallace(merging, "two") == modified_wallace(splitting, "one")

        config = AdjustmentConfig(seed=20240805, repetitions=3000)
        adj = {
            (fam_name, idx): adjusted_with_se(fam, idx, config)
            for fam_name, fam in (
                ("quasi", quasi), ("merging", merging), ("splitting", splitting)
            )
            for idx in ("mri", "mw1", "mw2")
        }
        assert adj[("merging", "mw1")][0] > adj[("splitting", "mw1")][0]
        assert adj[("splitting", "mw2")][0] > adj[("merging", "mw2")][0]
        mri_gap = abs(adj[("merging", "mri")][0] - adj[("splitting", "mri")][0])
        mri_tol = 4 * np.hypot(adj[("merging", "mri")][1], adj[("splitting", "mri")][1])
        assert mri_gap <= mri_tol
        for idx in ("mri", "mw1", "mw2"):
            for other in ("merging", "splitting"):
                slack = 4 * np.hypot(adj[("quasi", idx)][1], adj[(other, idx)][1])
                assert adj[("quasi", idx)][0] >= adj[(other, idx)][0] - slack


def exact_permutation_rand_mean(pair):
    """Average Rand index over every relabeling of the second partition."""
    table = contingency(pair, "core")
    units = sorted(pair.persistent)
    rcodes = [table.row_labels.index(pair.first.label_of(u)) for u in units]
    ccodes = [table.col_labels.index(pair.second.label_of(u)) for u in units]
    n_rows, n_cols = table.shape
    total = 0.0
    count = 0
    for perm in itertools.permutations(ccodes):
        counts = np.zeros((n_rows, n_cols), dtype=np.int64)
        for r, c in zip(rcodes, perm):
            counts[r, c] += 1
        total += value_from_counts(counts, MNEMONICS["ri"], False, False)
        count += 1
    return total / count


def test_criterion_06_permutation_matches_analytic():
    with criterion(6, "permutation estimates match closed forms", 60.0):
        rng = make_rng("acceptance", 6)
        units = [f"s{i}" for i in range(30)]
        for trial in range(20):
            first = random_partition(units, 6, rng)
            second = random_partition(units, 6, rng)
            pair = align(first, second)
            config = AdjustmentConfig(seed=6000 + trial, repetitions=20000)
            est_ri = permutation_expectation(pair, MNEMONICS["ri"], config)
            closed = expected_rand(contingency(pair, "core")).mean
            # The 1e-12 floor absorbs float accumulation noise when the
            # index is constant under permutation and the SE collapses.
            assert abs(est_ri.mean - closed) <= 3 * est_ri.std_error + 1e-12
            est_w1 = permutation_expectation(pair, MNEMONICS["w1"], config)
            sid = simpson_diversity(second)
            assert abs(est_w1.mean - sid) <= 3 * est_w1.std_error + 1e-12
        small_units = [f"s{i}" for i in range(7)]
        small = align(
            random_partition(small_units, 3, rng),
            random_partition(small_units, 3, rng),
        )
        exact = exact_permutation_rand_mean(small)
        est = permutation_expectation(
            small, MNEMONICS["ri"], AdjustmentConfig(seed=777, repetitions=20000)
        )
        assert abs(est.mean - exact) <= 3 * est.std_error + 1e-12


REDUCED = dict(
    clusters_first=(8, 16, 24), clusters_second=(8, 16, 24), units=(100, 160, 220)
)


def reduced_grid(name, seed, adjusted):
    design = SimulationDesign(
        index=MNEMONICS[name],
        seed=seed,
        repetitions=100,
        adjusted=adjusted,
        adjustment_reps=200,
        **REDUCED,
    )
    return {
        (c.clusters_first, c.clusters_second, c.units): c
        for c in expected_value_grid(design)
    }


def test_criterion_07_adjusted_null_calibration():
    with criterion(7, "adjusted null means within 0.02 of zero", 300.0):
        for offset, name in enumerate(("mri", "mw1", "mw2")):
            cells = reduced_grid(name, 7100 + offset, adjusted=True)
            worst = max(abs(c.mean) for c in cells.values())
            assert worst <= 0.02, f"{name}: worst adjusted cell mean {worst:.4f}"


def test_criterion_08_unadjusted_null_trends():
    with criterion(8, "unadjusted null trends across the grid", 60.0):
        mri = reduced_grid("mri", 8100, adjusted=False)
        for n in REDUCED["units"]:
            diagonal = [mri[(k, k, n)].mean for k in (8, 16, 24)]
            assert diagonal[0] < diagonal[1] < diagonal[2]
        mw1 = reduced_grid("mw1", 8200, adjusted=False)
        for r in REDUCED["clusters_first"]:
            for n in REDUCED["units"]:
                means = [mw1[(r, q, n)].mean for q in (8, 16, 24)]
                assert means[0] > means[1] > means[2]
        mw2 = reduced_grid("mw2", 8300, adjusted=False)
        for q in REDUCED["clusters_second"]:
            for n in REDUCED["units"]:
                means = [mw2[(r, q, n)].mean for r in (8, 16, 24)]
                assert means[0] > means[1] > means[2]


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_criterion_09_cli_determinism(capsys):
    with criterion(9, "seeded CLI runs are byte-identical", 60.0):
        first = str(DATA_DIR / "six_unit_first.csv")
        second = str(DATA_DIR / "six_unit_second.csv")
        compare_args = (
            "compare", first, second, "--indices", "mri,mw1,mw2",
            "--adjust", "--seed", "31415", "--reps", "400", "--format", "json",
        )
        code_a, out_a, _ = run_cli(capsys, *compare_args)
        code_b, out_b, _ = run_cli(capsys, *compare_args)
        assert code_a == code_b == 0
        assert out_a == out_b
        _, out_c, _ = run_cli(
            capsys, "compare", first, second, "--indices", "mri,mw1,mw2",
            "--adjust", "--seed", "31416", "--reps", "400", "--format", "json",
        )
        assert out_c != out_a
        raws = lambda text: [json.loads(line)["raw"] for line in text.splitlines()]
        assert raws(out_c) == raws(out_a)

        sim_args = (
            "simulate", "--index", "mri", "--clusters-u", "8:16:8",
            "--clusters-v", "8:16:8", "--units", "100", "--reps", "40",
        )
        _, grid_a, _ = run_cli(capsys, *sim_args, "--seed", "27182")
        _, grid_b, _ = run_cli(capsys, *sim_args, "--seed", "27182")
        _, grid_c, _ = run_cli(capsys, *sim_args, "--seed", "27183")
        assert grid_a == grid_b
        assert grid_c != grid_a


GOLDEN_RUNS = (
    (
        "six_unit_report.csv",
        ("compare", "{first}", "{second}"),
    ),
    (
        "six_unit_report_adjusted.json",
        (
            "compare", "{first}", "{second}", "--indices", "mri,mw1,mw2",
            "--adjust", "--seed", "20240817", "--reps", "500", "--format", "json",
        ),
    ),
    (
        "six_unit_transitions.csv",
        ("transitions", "{first}", "{second}"),
    ),
    (
        "mri_grid_small.csv",
        (
            "simulate", "--index", "mri", "--clusters-u", "8:24:8",
            "--clusters-v", "8:24:8", "--units", "100:220:60",
            "--reps", "20", "--seed", "7",
        ),
    ),
)


def test_criterion_10_golden_files(capsys):
    with criterion(10, "golden CLI outputs reproduced exactly", 1.0):
        paths = {
            "{first}": str(DATA_DIR / "six_unit_first.csv"),
            "{second}": str(DATA_DIR / "six_unit_second.csv"),
        }
        for golden_name, argv in GOLDEN_RUNS:
            golden = (GOLDEN_DIR / golden_name).read_text(encoding="utf-8")
            code, out, err = run_cli(capsys, *(paths.get(a, a) for a in argv))
            assert code == 0, err
            assert out == golden, f"{golden_name} drifted"
