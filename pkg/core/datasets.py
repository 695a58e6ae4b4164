"""
Delimited-text ingestion for the command layer.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import pandas as pd

from estimators.samples import Sample

from .exceptions import DataInputError

logger = logging.getLogger(__name__)

ALL_GROUP = 'All'
MIN_POSITIVE_OBSERVATIONS = 2


@dataclass(frozen=True)
class DataColumnSpec:
    """
    Where to find observations: a file, a column given by name or 1-based
    position, and optionally a second column to group rows by.
    """
    path: str
    column: str
    delimiter: str = ','
    has_header: bool = True
    group_by: Optional[str] = None


@dataclass(frozen=True)
class SampleGroup:
    name: str
    sample: Sample
    skipped_rows: Tuple[int, ...] = ()

    @property
    def n(self):
        return self.sample.n

    @property
    def zero_count(self):
        return self.sample.zero_count


def _read_frame(spec):
    try:
        return pd.read_csv(
            spec.path,
            sep=spec.delimiter,
            header=0 if spec.has_header else None,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
        )
    except FileNotFoundError:
        raise DataInputError(f"data file not found: {spec.path}")
    except pd.errors.EmptyDataError:
        raise DataInputError(f"data file is empty: {spec.path}")
    except (pd.errors.ParserError, UnicodeDecodeError) as exc:
        raise DataInputError(f"cannot parse {spec.path}: {exc}")


def _resolve_column(frame, column, has_header):
    column = str(column).strip()
    if has_header and column in frame.columns:
        return column
    if column.isdigit():
        position = int(column)
        if 1 <= position <= frame.shape[1]:
            return frame.columns[position - 1]
        raise DataInputError(f"column position {position} is outside 1..{frame.shape[1]}")
    if has_header:
        raise DataInputError(
            f"column {column!r} not found; available: {', '.join(map(str, frame.columns))}"
        )
    raise DataInputError("files without a header row need a 1-based column position")


def load_groups(spec, skip_bad=False):
    """
    Read the value column (and group column) and return one SampleGroup per
    group in first-appearance order, followed by the 'All' group.

    Unparseable values fail with their line numbers unless ``skip_bad`` is
    set; negative values always fail.
    """
    frame = _read_frame(spec)
    if frame.empty:
        raise DataInputError(f"no data rows in {spec.path}")
    value_column = _resolve_column(frame, spec.column, spec.has_header)
    line_numbers = frame.index.to_numpy() + (2 if spec.has_header else 1)

    values = pd.to_numeric(frame[value_column].str.strip(), errors='coerce').to_numpy(dtype=float)
    bad = ~np.isfinite(values)
    skipped = ()
    if bad.any():
        if not skip_bad:
            raise DataInputError(
                f"unparseable values in column {value_column!r}", rows=line_numbers[bad].tolist()
            )
        skipped = tuple(line_numbers[bad].tolist())
        logger.info("Skipping %d unparseable row(s) in %s", len(skipped), spec.path)

    negative = ~bad & (values < 0)
    if negative.any():
        raise DataInputError(
            f"negative values in column {value_column!r}", rows=line_numbers[negative].tolist()
        )

    keep = ~bad
    logger.info("Loaded %d value(s) from %s column %r", int(keep.sum()), spec.path, value_column)

    groups = []
    if spec.group_by:
        group_column = _resolve_column(frame, spec.group_by, spec.has_header)
        labels = frame[group_column].str.strip().to_numpy()
        for label in pd.unique(labels[keep]):
            groups.append(_make_group(str(label), values[keep & (labels == label)], skipped))
    groups.append(_make_group(ALL_GROUP, values[keep], skipped))
    return groups


def _make_group(name, values, skipped):
    if values.size == 0:
        raise DataInputError(f"group {name!r} is empty")
    sample = Sample.from_values(values)
    if sample.positive_count < MIN_POSITIVE_OBSERVATIONS:
        raise DataInputError(
            f"group {name!r} needs at least {MIN_POSITIVE_OBSERVATIONS} positive observations"
        )
    if sample.zero_count:
        logger.info("Group %r contains %d zero value(s)", name, sample.zero_count)
    return SampleGroup(name=name, sample=sample, skipped_rows=skipped)
