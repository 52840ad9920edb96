"""Pilot CSV parsing, validation, and summary statistics.

Accepted grammar: UTF-8 text, one header row naming (at least) the label
and two prediction columns, then one data row per individual. Labels are
``0``/``1`` or ``true``/``false`` (case-insensitive); predictions are
finite decimal numbers with ``.`` as the decimal separator regardless of
locale. Blank lines are ignored. Parsing is strict by default: the first
bad cell aborts with its row number. With ``lenient=True`` bad rows are
dropped and reported instead; silent data loss in a power calculation is
worse than a hard error, so lenient mode still itemizes every drop.

Predictions outside [0, 1] trigger a warning but are accepted: AUROC is
rank-based, so unbounded scores are legal.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Union

from .errors import (
    BadLabelError,
    BadNumberError,
    DegenerateAurocError,
    DomainError,
    EmptyAfterParsingError,
    MissingColumnError,
    SingleClassError,
)
from .pilot import PilotDataset
from .roc import AurocEstimate, auroc_with_ci

Source = Union[str, Path, IO[str], IO[bytes]]

_TRUE_LABELS = {"1", "true"}
_FALSE_LABELS = {"0", "false"}


@dataclass(frozen=True)
class PilotFileSpec:
    """Where to read the pilot from and how its columns are named."""

    source: Source
    label_column: str = "label"
    score_a_column: str = "pred_a"
    score_b_column: str = "pred_b"
    delimiter: str = ","
    lenient: bool = False

    def __post_init__(self):
        names = (self.label_column, self.score_a_column, self.score_b_column)
        if len(set(names)) != 3:
            raise DomainError(f"column names must be distinct, got {names}")


@dataclass(frozen=True)
class DroppedRow:
    row: int
    reason: str


@dataclass(frozen=True)
class PilotSummary:
    """Row counts, prevalence, and per-model AUROC estimates of a pilot.

    ``auroc_a``/``auroc_b`` are None when the estimate sits on the {0, 1}
    boundary and no confidence interval exists.
    """

    n_rows: int
    n_cases: int
    n_controls: int
    prevalence: float
    auroc_a: AurocEstimate | None
    auroc_b: AurocEstimate | None
    rows_dropped: tuple[DroppedRow, ...]


def _open_text(source: Source):
    """Return (text_stream, should_close)."""
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8-sig", newline=""), True
    data = source.read()
    if isinstance(data, bytes):
        text = data.decode("utf-8-sig")
    else:
        text = data.lstrip("﻿")
    return io.StringIO(text), False


def parse_pilot(fspec: PilotFileSpec) -> tuple[PilotDataset, PilotSummary]:
    """Parse and validate a pilot CSV into a dataset plus its summary.

    Row numbers in diagnostics are 1-based counting the header, so the
    first data row is row 2.
    """
    stream, should_close = _open_text(fspec.source)
    try:
        reader = csv.reader(stream, delimiter=fspec.delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyAfterParsingError("file is empty") from None
        columns = {}
        for wanted in (fspec.label_column, fspec.score_a_column, fspec.score_b_column):
            hits = [i for i, name in enumerate(header) if name.strip() == wanted]
            if not hits:
                raise MissingColumnError(
                    f"column {wanted!r} not found in header {header}"
                )
            if len(hits) > 1:
                raise MissingColumnError(
                    f"column {wanted!r} appears {len(hits)} times in the header"
                )
            columns[wanted] = hits[0]

        labels: list[int] = []
        scores_a: list[float] = []
        scores_b: list[float] = []
        dropped: list[DroppedRow] = []

        for row_number, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                labels_value = _parse_label(row, columns[fspec.label_column], row_number)
                a_value = _parse_number(
                    row, columns[fspec.score_a_column], fspec.score_a_column, row_number
                )
                b_value = _parse_number(
                    row, columns[fspec.score_b_column], fspec.score_b_column, row_number
                )
            except (BadLabelError, BadNumberError) as exc:
                if fspec.lenient:
                    dropped.append(DroppedRow(row=row_number, reason=str(exc)))
                    continue
                raise
            labels.append(labels_value)
            scores_a.append(a_value)
            scores_b.append(b_value)
    finally:
        if should_close:
            stream.close()

    if not labels:
        raise EmptyAfterParsingError("no usable data rows after parsing")
    n_cases = sum(labels)
    if n_cases == 0 or n_cases == len(labels):
        raise SingleClassError(
            "pilot contains only "
            + ("cases" if n_cases else "controls")
            + "; power comparison needs both classes"
        )

    _warn_if_outside_unit(scores_a, fspec.score_a_column)
    _warn_if_outside_unit(scores_b, fspec.score_b_column)

    dataset = PilotDataset(labels=labels, scores_a=scores_a, scores_b=scores_b)
    return dataset, summarize_pilot(dataset, rows_dropped=dropped)


def summarize_pilot(
    pilot: PilotDataset, rows_dropped: Iterable[DroppedRow] = ()
) -> PilotSummary:
    """Summary of an already-validated pilot, however it was loaded."""
    return PilotSummary(
        n_rows=pilot.n_rows,
        n_cases=pilot.n_cases,
        n_controls=pilot.n_controls,
        prevalence=pilot.prevalence,
        auroc_a=_auroc_or_none(pilot.labels, pilot.scores_a),
        auroc_b=_auroc_or_none(pilot.labels, pilot.scores_b),
        rows_dropped=tuple(rows_dropped),
    )


def _parse_label(row: list[str], index: int, row_number: int) -> int:
    raw = row[index] if index < len(row) else ""
    value = raw.strip().lower()
    if value in _TRUE_LABELS:
        return 1
    if value in _FALSE_LABELS:
        return 0
    raise BadLabelError(row_number, raw)


def _parse_number(row: list[str], index: int, column: str, row_number: int) -> float:
    raw = row[index] if index < len(row) else ""
    try:
        value = float(raw.strip())
    except ValueError:
        raise BadNumberError(row_number, column, raw) from None
    if not math.isfinite(value):
        raise BadNumberError(row_number, column, raw)
    return value


def _warn_if_outside_unit(values: list[float], column: str) -> None:
    outside = sum(1 for v in values if v < 0.0 or v > 1.0)
    if outside:
        warnings.warn(
            f"{outside} value(s) in column {column!r} fall outside [0, 1]; "
            "fine for rank-based analysis, but double-check these are the "
            "intended predictions",
            UserWarning,
            stacklevel=2,
        )


def _auroc_or_none(labels, scores) -> AurocEstimate | None:
    try:
        return auroc_with_ci(labels, scores)
    except DegenerateAurocError:
        return None


def write_pilot(
    pilot: PilotDataset,
    destination: Union[str, Path, IO[str]],
    *,
    label_column: str = "label",
    score_a_column: str = "pred_a",
    score_b_column: str = "pred_b",
    delimiter: str = ",",
) -> None:
    """Serialize a pilot back to CSV; parse(write(x)) reproduces x."""
    if isinstance(destination, (str, Path)):
        stream = open(destination, "w", encoding="utf-8", newline="")
        should_close = True
    else:
        stream = destination
        should_close = False
    try:
        writer = csv.writer(stream, delimiter=delimiter)
        writer.writerow([label_column, score_a_column, score_b_column])
        for y, a, b in zip(pilot.labels, pilot.scores_a, pilot.scores_b):
            writer.writerow([int(y), repr(float(a)), repr(float(b))])
    finally:
        if should_close:
            stream.close()
