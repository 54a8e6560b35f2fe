"""Command-line surface: compare, simulate, transitions.

compare reads two partition files, evaluates the requested indices (by
default every index the input supports), and writes one record per
index as CSV or JSON lines. simulate runs the factorial expected-value
study and writes the grid CSV. transitions writes the non-zero cells of
the aligned contingency table as cluster-flow records.

Exit codes: 0 on success, 2 on usage or precondition errors, with a
diagnostic naming the failing condition on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .adjustment import (
    AdjustmentConfig,
    adjust,
    adjusted_rand_analytic,
    adjusted_wallace_analytic,
    expected_rand,
    permutation_expectation,
    simpson_diversity,
)
from .errors import InvalidDesign, PartstabError
from .indices import (
    CANONICAL_ORDER,
    FAMILIES,
    MNEMONICS,
    SCOPES,
    IndexKind,
    classic_pair_counts,
    index_value,
    rand_index,
    wallace,
)
from .partitions import AlignedPair, align, contingency, parse_partition
from .simulation import SimulationDesign, expected_value_grid

ANALYTIC_MNEMONICS = ("ari", "aw1", "aw2")
REPORT_ORDER = CANONICAL_ORDER + ANALYTIC_MNEMONICS

REPORT_COLUMNS = (
    "index",
    "raw",
    "expected",
    "expected_se",
    "adjusted",
    "persistent",
    "newcomers",
    "outgoers",
)


@dataclass(frozen=True)
class IndexReport:
    """One evaluated index on one partition pair."""

    index: str
    raw: float
    expected: float | None
    expected_se: float | None
    adjusted: float | None
    persistent: int
    newcomers: int
    outgoers: int
    clusters_first: int
    clusters_second: int
    seed: int | None = None
    repetitions: int | None = None

    def __post_init__(self) -> None:
        if (self.expected is None) != (self.adjusted is None):
            raise ValueError("expected and adjusted must be present together")


def emit_transitions(pair: AlignedPair) -> list[tuple[str, str, int]]:
    """Non-zero cells of the aligned table as (from, to, count) records.

    Records come out in row-major table order; the reserved newcomer and
    outgoer clusters appear under their reserved labels, last.
    """
    table = contingency(pair, "augmented")
    records = []
    for i, row_label in enumerate(table.row_labels):
        for j, col_label in enumerate(table.col_labels):
            count = int(table.counts[i, j])
            if count:
                records.append((row_label, col_label, count))
    return records


def build_report(
    pair: AlignedPair,
    name: str,
    adjusted: bool,
    config: AdjustmentConfig | None,
) -> IndexReport:
    """Evaluate one index mnemonic on an aligned pair.

    The analytic kinds always carry their closed-form expected and
    adjusted values; the other kinds gain a permutation expectation only
    when adjustment is requested.
    """
    base = dict(
        persistent=len(pair.persistent),
        newcomers=len(pair.newcomers),
        outgoers=len(pair.outgoers),
        clusters_first=len(pair.first.clusters),
        clusters_second=len(pair.second.clusters),
    )
    if name in MNEMONICS:
        kind = MNEMONICS[name]
        raw = index_value(pair, kind)
        if not adjusted:
            return IndexReport(
                index=name, raw=raw, expected=None, expected_se=None,
                adjusted=None, **base,
            )
        if config is None:
            raise ValueError("adjustment requested without a configuration")
        estimate = permutation_expectation(pair, kind, config)
        return IndexReport(
            index=name,
            raw=raw,
            expected=estimate.mean,
            expected_se=estimate.std_error,
            adjusted=adjust(raw, estimate),
            seed=config.seed,
            repetitions=config.repetitions,
            **base,
        )
    if name == "ari":
        raw = rand_index(classic_pair_counts(pair))
        table = contingency(pair, "core")
        estimate = expected_rand(table, "hypergeometric")
        return IndexReport(
            index=name, raw=raw, expected=estimate.mean, expected_se=0.0,
            adjusted=adjusted_rand_analytic(table), **base,
        )
    if name in ("aw1", "aw2"):
        variant = "one" if name == "aw1" else "two"
        raw = wallace(classic_pair_counts(pair), variant)
        conditioning = pair.second if variant == "one" else pair.first
        return IndexReport(
            index=name, raw=raw, expected=simpson_diversity(conditioning),
            expected_se=0.0, adjusted=adjusted_wallace_analytic(pair, variant),
            **base,
        )
    raise ValueError(f"unknown index mnemonic {name!r}")


def _fmt(value: float | None) -> str:
    if value is None:
        return ""
    text = f"{value:.6f}"
    return "0.000000" if text == "-0.000000" else text


def _json_number(value: float | None) -> float | None:
    if value is None:
        return None
    rounded = float(f"{value:.6f}")
    return 0.0 if rounded == 0.0 else rounded


def reports_to_csv(reports: list[IndexReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for r in reports:
        writer.writerow(
            [
                r.index,
                _fmt(r.raw),
                _fmt(r.expected),
                _fmt(r.expected_se),
                _fmt(r.adjusted),
                r.persistent,
                r.newcomers,
                r.outgoers,
            ]
        )
    return buf.getvalue()


def reports_to_json(reports: list[IndexReport]) -> str:
    lines = []
    for r in reports:
        record = {
            "index": r.index,
            "raw": _json_number(r.raw),
            "expected": _json_number(r.expected),
            "expected_se": _json_number(r.expected_se),
            "adjusted": _json_number(r.adjusted),
            "persistent": r.persistent,
            "newcomers": r.newcomers,
            "outgoers": r.outgoers,
            "clusters_first": r.clusters_first,
            "clusters_second": r.clusters_second,
            "seed": r.seed,
            "repetitions": r.repetitions,
        }
        lines.append(json.dumps(record))
    return "\n".join(lines) + "\n" if lines else ""


def grid_to_csv(cells) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["clusters_first", "clusters_second", "units", "mean", "std_error"])
    for cell in cells:
        writer.writerow(
            [
                cell.clusters_first,
                cell.clusters_second,
                cell.units,
                _fmt(cell.mean),
                _fmt(cell.std_error),
            ]
        )
    return buf.getvalue()


def transitions_to_csv(records: list[tuple[str, str, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["from_cluster", "to_cluster", "count"])
    for from_label, to_label, count in records:
        writer.writerow([from_label, to_label, count])
    return buf.getvalue()


def _load_pair(first_path: str, second_path: str) -> AlignedPair:
    def infer(path: str) -> str:
        return "json" if path.lower().endswith(".json") else "csv"

    first = parse_partition(first_path, infer(first_path))
    second = parse_partition(second_path, infer(second_path))
    return align(first, second)


def _parse_range(text: str, flag: str) -> tuple[int, ...]:
    """A:B:STEP inclusive, or a single integer."""
    parts = text.split(":")
    try:
        numbers = [int(p) for p in parts]
    except ValueError:
        raise InvalidDesign(f"{flag} expects A:B:STEP or a single integer, got {text!r}")
    if len(numbers) == 1:
        return (numbers[0],)
    if len(numbers) != 3:
        raise InvalidDesign(f"{flag} expects A:B:STEP or a single integer, got {text!r}")
    start, stop, step = numbers
    if step < 1:
        raise InvalidDesign(f"{flag} step must be at least 1")
    if stop < start:
        raise InvalidDesign(f"{flag} range is empty")
    return tuple(range(start, stop + 1, step))


def _resolve_sim_kind(name: str, variant: str | None, scope: str | None) -> IndexKind:
    if name in MNEMONICS:
        if variant or scope:
            raise InvalidDesign(
                f"--index {name} already fixes variant and scope; "
                "use a family name with --variant/--scope"
            )
        return MNEMONICS[name]
    if name in FAMILIES:
        if name in ("wallace", "modified_wallace") and variant is None:
            raise InvalidDesign(f"--index {name} requires --variant one|two")
        if name == "modified_wallace":
            return IndexKind(name, variant, scope or "general")
        if name == "wallace":
            if scope:
                raise InvalidDesign("--scope applies to modified_wallace only")
            return IndexKind(name, variant)
        if variant or scope:
            raise InvalidDesign(f"--index {name} takes no --variant or --scope")
        return IndexKind(name)
    raise InvalidDesign(f"unknown index {name!r}")


def _cmd_compare(args: argparse.Namespace) -> int:
    pair = _load_pair(args.first, args.second)
    if args.indices:
        names = [n.strip() for n in args.indices.split(",") if n.strip()]
        if not names:
            print("error: InvalidDesign: --indices is empty", file=sys.stderr)
            return 2
        unknown = [n for n in names if n not in REPORT_ORDER]
        if unknown:
            print(
                f"error: InvalidDesign: unknown index mnemonic {unknown[0]!r}",
                file=sys.stderr,
            )
            return 2
        explicit = True
    else:
        names = list(REPORT_ORDER)
        explicit = False
    needs_mc = args.adjust and any(n in MNEMONICS for n in names)
    config = None
    if needs_mc:
        if args.seed is None:
            print(
                "error: InvalidDesign: --seed is required when --adjust "
                "runs permutation estimates",
                file=sys.stderr,
            )
            return 2
        config = AdjustmentConfig(seed=args.seed, repetitions=args.reps)
    reports = []
    for name in names:
        try:
            reports.append(build_report(pair, name, args.adjust, config))
        except PartstabError:
            if explicit:
                raise
            # Defaulted list: skip kinds the input does not support.
    text = reports_to_json(reports) if args.fmt == "json" else reports_to_csv(reports)
    sys.stdout.write(text)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    kind = _resolve_sim_kind(args.index, args.variant, args.scope)
    design = SimulationDesign(
        index=kind,
        seed=args.seed,
        clusters_first=_parse_range(args.clusters_u, "--clusters-u"),
        clusters_second=_parse_range(args.clusters_v, "--clusters-v"),
        units=_parse_range(args.units, "--units"),
        repetitions=args.reps,
        adjusted=args.adjust,
        adjustment_reps=args.adjust_reps,
    )
    text = grid_to_csv(expected_value_grid(design))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_transitions(args: argparse.Namespace) -> int:
    pair = _load_pair(args.first, args.second)
    sys.stdout.write(transitions_to_csv(emit_transitions(pair)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partstab",
        description="Partition stability indices with newcomer and outgoer handling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cmp_p = sub.add_parser("compare", help="evaluate indices on two partition files")
    cmp_p.add_argument("first", help="first partition file (.csv or .json)")
    cmp_p.add_argument("second", help="second partition file (.csv or .json)")
    cmp_p.add_argument(
        "--indices",
        help="comma-separated mnemonics from: " + ",".join(REPORT_ORDER),
    )
    cmp_p.add_argument("--adjust", action="store_true", help="attach chance correction")
    cmp_p.add_argument("--reps", type=int, default=1000, help="permutation replicates")
    cmp_p.add_argument("--seed", type=int, help="RNG seed for permutation estimates")
    cmp_p.add_argument(
        "--format", dest="fmt", choices=("csv", "json"), default="csv",
        help="output format (default csv)",
    )
    cmp_p.set_defaults(func=_cmd_compare)

    sim_p = sub.add_parser("simulate", help="run the expected-value grid study")
    sim_p.add_argument("--index", required=True, help="index mnemonic or family name")
    sim_p.add_argument("--variant", choices=("one", "two"))
    sim_p.add_argument("--scope", choices=SCOPES)
    sim_p.add_argument("--clusters-u", default="8:24:2", help="first-side cluster counts A:B:STEP")
    sim_p.add_argument("--clusters-v", default="8:24:2", help="second-side cluster counts A:B:STEP")
    sim_p.add_argument("--units", default="100:220:20", help="unit totals A:B:STEP")
    sim_p.add_argument("--reps", type=int, default=300, help="replicates per cell")
    sim_p.add_argument("--adjust", action="store_true", help="report adjusted values")
    sim_p.add_argument("--adjust-reps", type=int, default=200, help="permutation replicates per pair")
    sim_p.add_argument("--seed", type=int, required=True, help="RNG seed")
    sim_p.add_argument("--out", help="write the grid CSV to this path instead of stdout")
    sim_p.set_defaults(func=_cmd_simulate)

    tr_p = sub.add_parser("transitions", help="emit cluster flow records for two files")
    tr_p.add_argument("first", help="first partition file (.csv or .json)")
    tr_p.add_argument("second", help="second partition file (.csv or .json)")
    tr_p.set_defaults(func=_cmd_transitions)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (PartstabError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
