"""Partitions, alignment of two snapshots, and contingency tables.

A partition maps unit ids to cluster labels. Two partitions taken at
different times need not cover the same units: units present only in the
second snapshot are newcomers, units present only in the first are
outgoers. Alignment extends both partitions to the union of their unit
sets by collecting each extra group into one reserved cluster, which is
the structure the modified indices are defined on.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    DuplicateUnit,
    EmptyInput,
    MalformedRecord,
    NonOverlappingSets,
)

NEWCOMER_LABEL = "__NEWCOMERS__"
OUTGOER_LABEL = "__OUTGOERS__"
RESERVED_LABELS = frozenset({NEWCOMER_LABEL, OUTGOER_LABEL})

# Cap on the union size so every squared-marginal sum fits in int64.
MAX_UNITS = 10**6


def _check_unit_id(unit: str) -> str:
    if not isinstance(unit, str):
        raise MalformedRecord(f"unit id must be text, got {type(unit).__name__}")
    cleaned = unit.strip()
    if not cleaned:
        raise MalformedRecord("unit id is empty")
    if "," in cleaned or "\n" in cleaned or "\r" in cleaned:
        raise MalformedRecord(f"unit id {cleaned!r} contains a comma or newline")
    return cleaned


def _check_label(label: str, allow_reserved: bool) -> str:
    if not isinstance(label, str):
        raise MalformedRecord(f"cluster label must be text, got {type(label).__name__}")
    cleaned = label.strip()
    if not cleaned:
        raise MalformedRecord("cluster label is empty")
    if not allow_reserved and cleaned in RESERVED_LABELS:
        raise MalformedRecord(f"cluster label {cleaned!r} is reserved")
    return cleaned


class Partition:
    """Immutable assignment of units to clusters.

    Labels are compared as exact text; "1" and "01" are distinct clusters.
    The reserved labels used for aligned newcomer and outgoer clusters are
    rejected unless the partition is built internally by alignment.
    """

    __slots__ = ("_assignments", "_clusters")

    def __init__(
        self,
        assignments: Mapping[str, str] | Iterable[tuple[str, str]],
        *,
        _allow_reserved: bool = False,
    ) -> None:
        items = assignments.items() if isinstance(assignments, Mapping) else assignments
        cleaned: dict[str, str] = {}
        for unit, label in items:
            unit = _check_unit_id(unit)
            label = _check_label(label, _allow_reserved)
            if unit in cleaned:
                raise DuplicateUnit(f"unit {unit!r} assigned more than once")
            cleaned[unit] = label
        if not cleaned:
            raise EmptyInput("partition has no units")
        by_label: dict[str, set[str]] = {}
        for unit, label in cleaned.items():
            by_label.setdefault(label, set()).add(unit)
        self._assignments = cleaned
        self._clusters = tuple(
            (label, frozenset(by_label[label])) for label in sorted(by_label)
        )

    @property
    def assignments(self) -> Mapping[str, str]:
        return MappingProxyType(self._assignments)

    @property
    def units(self) -> frozenset[str]:
        return frozenset(self._assignments)

    @property
    def clusters(self) -> tuple[tuple[str, frozenset[str]], ...]:
        """Clusters as (label, members), sorted by label."""
        return self._clusters

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self._clusters)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(members) for _, members in self._clusters)

    @property
    def n_units(self) -> int:
        return len(self._assignments)

    def label_of(self, unit: str) -> str:
        return self._assignments[unit]

    def restrict(self, units: Iterable[str]) -> "Partition":
        """Partition of the given units only; empty clusters disappear."""
        keep = set(units)
        return Partition(
            {u: l for u, l in self._assignments.items() if u in keep},
            _allow_reserved=True,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._assignments == other._assignments

    def __hash__(self) -> int:
        return hash(frozenset(self._assignments.items()))

    def __repr__(self) -> str:
        return f"Partition({self.n_units} units, {len(self._clusters)} clusters)"


def parse_partition(source, fmt: str = "csv") -> Partition:
    """Read a partition from a file path, file object, or text.

    CSV input needs the exact header ``unit,cluster``; JSON input is an
    array of objects with ``unit`` and ``cluster`` keys. Unit ids and
    labels are stripped of surrounding whitespace and must be non-empty;
    the reserved aligned-cluster labels are rejected.
    """
    if fmt not in ("csv", "json"):
        raise MalformedRecord(f"unknown partition format {fmt!r}")
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    if fmt == "csv":
        return _parse_csv(text)
    return _parse_json(text)


def _parse_csv(text: str) -> Partition:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [row for row in rows if row]
    if not rows:
        raise EmptyInput("no rows in partition file")
    header = [field.strip() for field in rows[0]]
    if header != ["unit", "cluster"]:
        raise MalformedRecord(
            f"expected header 'unit,cluster', got {','.join(rows[0])!r}"
        )
    records = rows[1:]
    if not records:
        raise EmptyInput("header only, no partition records")
    pairs = []
    for lineno, row in enumerate(records, start=2):
        if len(row) != 2:
            raise MalformedRecord(f"line {lineno}: expected 2 fields, got {len(row)}")
        pairs.append((row[0].strip(), row[1].strip()))
    return Partition(pairs)


def _parse_json(text: str) -> Partition:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"invalid JSON: {exc}") from None
    if not isinstance(data, list):
        raise MalformedRecord("JSON partition must be an array of records")
    if not data:
        raise EmptyInput("no records in partition file")
    pairs = []
    for pos, record in enumerate(data):
        if not isinstance(record, dict) or "unit" not in record or "cluster" not in record:
            raise MalformedRecord(
                f"record {pos}: expected an object with 'unit' and 'cluster'"
            )
        unit, label = record["unit"], record["cluster"]
        if not isinstance(unit, str) or not isinstance(label, str):
            raise MalformedRecord(f"record {pos}: 'unit' and 'cluster' must be text")
        pairs.append((unit.strip(), label.strip()))
    return Partition(pairs)


class AlignedPair:
    """Two partitions extended to their union of units.

    ``u_prime`` is the first partition plus one reserved cluster holding
    the newcomers; ``v_prime`` is the second plus one reserved cluster
    holding the outgoers. A reserved cluster is omitted when its group is
    empty, so aligning two partitions of the same unit set changes
    nothing.
    """

    __slots__ = (
        "first",
        "second",
        "persistent",
        "newcomers",
        "outgoers",
        "u_prime",
        "v_prime",
    )

    def __init__(self, first: Partition, second: Partition) -> None:
        s, t = first.units, second.units
        persistent = s & t
        if not persistent:
            raise NonOverlappingSets("partitions share no units")
        self.first = first
        self.second = second
        self.persistent = frozenset(persistent)
        self.newcomers = frozenset(t - s)
        self.outgoers = frozenset(s - t)
        if self.newcomers:
            extended = dict(first.assignments)
            extended.update({u: NEWCOMER_LABEL for u in self.newcomers})
            self.u_prime = Partition(extended, _allow_reserved=True)
        else:
            self.u_prime = first
        if self.outgoers:
            extended = dict(second.assignments)
            extended.update({u: OUTGOER_LABEL for u in self.outgoers})
            self.v_prime = Partition(extended, _allow_reserved=True)
        else:
            self.v_prime = second

    @property
    def units(self) -> frozenset[str]:
        return self.persistent | self.newcomers | self.outgoers

    @property
    def n_union(self) -> int:
        return len(self.persistent) + len(self.newcomers) + len(self.outgoers)

    def __repr__(self) -> str:
        return (
            f"AlignedPair(persistent={len(self.persistent)}, "
            f"newcomers={len(self.newcomers)}, outgoers={len(self.outgoers)})"
        )


def align(first: Partition, second: Partition) -> AlignedPair:
    """Align two partition snapshots over the union of their units."""
    return AlignedPair(first, second)


class ContingencyTable:
    """Cross-classification counts of one partition against another.

    Rows follow the first partition's cluster labels in lexicographic
    order and columns the second's, except that a reserved newcomer row
    or outgoer column always comes last. Tables built from aligned data
    have a zero corner cell; tables arising from permutation replicates
    need not.
    """

    __slots__ = ("counts", "row_labels", "col_labels", "newcomer_row", "outgoer_col")

    def __init__(
        self,
        counts: np.ndarray,
        row_labels: tuple[str, ...],
        col_labels: tuple[str, ...],
        newcomer_row: int | None = None,
        outgoer_col: int | None = None,
    ) -> None:
        counts = np.asarray(counts, dtype=np.int64)
        if counts.ndim != 2:
            raise ValueError("counts must be a 2-d array")
        if counts.shape != (len(row_labels), len(col_labels)):
            raise ValueError("label tuples do not match the counts shape")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        total = int(counts.sum())
        if total > MAX_UNITS:
            raise ValueError(f"unit total {total} exceeds the {MAX_UNITS} cap")
        if newcomer_row is not None and newcomer_row != counts.shape[0] - 1:
            raise ValueError("newcomer row must be the last row")
        if outgoer_col is not None and outgoer_col != counts.shape[1] - 1:
            raise ValueError("outgoer column must be the last column")
        counts.setflags(write=False)
        self.counts = counts
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        self.newcomer_row = newcomer_row
        self.outgoer_col = outgoer_col

    @property
    def row_marginals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_marginals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    def __repr__(self) -> str:
        return f"ContingencyTable(shape={self.counts.shape}, total={self.total})"


def _ordered_labels(partition: Partition, reserved: str) -> list[str]:
    """Cluster labels sorted lexicographically, the reserved one last."""
    labels = [l for l in partition.labels if l != reserved]
    if reserved in partition.labels:
        labels.append(reserved)
    return labels


def _codes(partition: Partition, units: list[str], reserved: str) -> tuple[np.ndarray, list[str]]:
    """Integer cluster codes for ``units`` in the given order.

    Codes follow the lexicographic label order with the reserved label
    mapped to the highest code, mirroring the table layout.
    """
    labels = _ordered_labels(partition, reserved)
    index = {label: i for i, label in enumerate(labels)}
    codes = np.fromiter(
        (index[partition.label_of(u)] for u in units), dtype=np.int64, count=len(units)
    )
    return codes, labels


def _crosstab(row_codes: np.ndarray, n_rows: int, col_codes: np.ndarray, n_cols: int) -> np.ndarray:
    flat = np.bincount(row_codes * n_cols + col_codes, minlength=n_rows * n_cols)
    return flat.reshape(n_rows, n_cols).astype(np.int64, copy=False)


def contingency(pair: AlignedPair, mode: str = "augmented") -> ContingencyTable:
    """Build the contingency table of an aligned pair.

    mode="augmented" crosses ``u_prime`` with ``v_prime`` over the union
    of units; mode="core" crosses the two partitions restricted to the
    persistent units, dropping clusters that lose all members.
    """
    if mode == "augmented":
        units = sorted(pair.units)
        rcodes, rlabels = _codes(pair.u_prime, units, NEWCOMER_LABEL)
        ccodes, clabels = _codes(pair.v_prime, units, OUTGOER_LABEL)
        counts = _crosstab(rcodes, len(rlabels), ccodes, len(clabels))
        return ContingencyTable(
            counts,
            tuple(rlabels),
            tuple(clabels),
            newcomer_row=len(rlabels) - 1 if pair.newcomers else None,
            outgoer_col=len(clabels) - 1 if pair.outgoers else None,
        )
    if mode == "core":
        units = sorted(pair.persistent)
        first = pair.first.restrict(units)
        second = pair.second.restrict(units)
        rcodes, rlabels = _codes(first, units, NEWCOMER_LABEL)
        ccodes, clabels = _codes(second, units, OUTGOER_LABEL)
        counts = _crosstab(rcodes, len(rlabels), ccodes, len(clabels))
        return ContingencyTable(counts, tuple(rlabels), tuple(clabels))
    raise ValueError(f"unknown contingency mode {mode!r}")
