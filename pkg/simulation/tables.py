"""
Table files for simulation reports.

MISE tables carry one row per distribution and one column per
(curve, scheme) with MISE multiplied by 1000 to four decimals. The aligned
text version marks the smallest value of each curve within a row with '*'.
"""

import logging
from pathlib import Path

import pandas as pd

from core.formatting import dumps_summary

from .serializers import SimulationReportSerializer

logger = logging.getLogger(__name__)

MISE_SCALE = 1000


def _as_list(reports):
    if isinstance(reports, (list, tuple)):
        return list(reports)
    return [reports]


def _row_key(report):
    key = {'experiment': report.config.name, 'dist': str(report.config.dist)}
    key.update(report.config.dist.parameters)
    return key


def mise_frame(reports, sample_size):
    """Rows keyed by distribution parameters, columns '<curve> <scheme>'."""
    rows = []
    for report in _as_list(reports):
        cells = [cell for cell in report.cells if cell.sample_size == sample_size]
        if not cells:
            continue
        row = _row_key(report)
        for cell in cells:
            row[f"{cell.curve.value} {cell.scheme.value}"] = round(cell.curve_mise * MISE_SCALE, 4)
        rows.append(row)
    return pd.DataFrame(rows)


def _marked_text(frame):
    """Aligned text with each row's per-curve minimum starred."""
    display = frame.copy().astype(object)
    value_columns = [column for column in frame.columns if ' ' in str(column)]
    curves = list(dict.fromkeys(column.split(' ')[0] for column in value_columns))
    for curve in curves:
        columns = [column for column in value_columns if column.split(' ')[0] == curve]
        for index, row in frame[columns].iterrows():
            best = row.idxmin()
            for column in columns:
                text = f"{row[column]:.4f}"
                display.at[index, column] = text + ('*' if column == best else ' ')
    return display.to_string(index=False)


def index_summary_frame(reports):
    rows = []
    for report in _as_list(reports):
        for cell in report.cells:
            row = _row_key(report)
            row.update({
                'kind': cell.kind.value,
                'scheme': cell.scheme.value,
                'n': cell.sample_size,
                'exact': cell.exact_index,
                'median': cell.index_median,
                'q1': cell.index_q1,
                'q3': cell.index_q3,
                'iqr': cell.index_iqr,
                'mse': cell.index_mse,
                'mise_x1000': cell.curve_mise * MISE_SCALE,
            })
            rows.append(row)
    return pd.DataFrame(rows)


def raw_frame(reports):
    rows = []
    for report in _as_list(reports):
        for record in report.raw:
            row = {'experiment': report.config.name, 'dist': str(report.config.dist)}
            row.update(record)
            rows.append(row)
    return pd.DataFrame(rows)


def report_to_tables(reports, out_dir):
    """
    Write MISE tables per sample size, the index summary, a JSON summary and,
    when retained, the raw per-replicate estimates. Returns the written paths.
    """
    reports = _as_list(reports)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    sizes = sorted({cell.sample_size for report in reports for cell in report.cells})
    for sample_size in sizes:
        frame = mise_frame(reports, sample_size)
        csv_path = out_dir / f"mise_n{sample_size}.csv"
        frame.to_csv(csv_path, index=False, float_format='%.4f', lineterminator='\n')
        text_path = out_dir / f"mise_n{sample_size}.txt"
        text_path.write_text(
            f"MISE x {MISE_SCALE}, n = {sample_size}\n{_marked_text(frame)}\n", encoding='utf-8'
        )
        written.extend([csv_path, text_path])

    summary_path = out_dir / 'index_summary.csv'
    index_summary_frame(reports).to_csv(summary_path, index=False, lineterminator='\n')
    written.append(summary_path)

    json_path = out_dir / 'summary.json'
    data = SimulationReportSerializer(reports, many=True, context={'digits': 17}).data
    json_path.write_text(dumps_summary(data) + '\n', encoding='utf-8')
    written.append(json_path)

    if any(report.raw for report in reports):
        raw_path = out_dir / 'raw_estimates.csv'
        raw_frame(reports).to_csv(raw_path, index=False, lineterminator='\n')
        written.append(raw_path)

    logger.info("Wrote %d table file(s) to %s", len(written), out_dir)
    return written
