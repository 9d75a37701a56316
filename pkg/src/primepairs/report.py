"""CSV emission for the scan results.

Integers are written bare and reals with 6 significant digits; ``#`` lines
carry summary blocks so the files load straight into plotting tools.
"""

from __future__ import annotations

import contextlib
import csv
import io
import sys
from numbers import Integral

import numpy as np


def fmt(value) -> str:
    if isinstance(value, (Integral, np.integer)):
        return str(int(value))
    return f"{float(value):.6g}"


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def render_csv(header, rows, comments=()) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    for line in comments:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def write_csv(path, header, rows, comments=()):
    text = render_csv(header, rows, comments)
    with _open_out(path) as fh:
        fh.write(text)


def twin_scan_rows(p_values, candidates, twins, predictions):
    for p, c, t, pred in zip(p_values.tolist(), candidates.tolist(), twins.tolist(), predictions.tolist()):
        yield p, (p - 2) ** 2, p * p, c, t, pred, t / pred


TWIN_SCAN_HEADER = ["p_n", "low", "high", "candidates", "twins_found", "prediction", "ratio"]
PREDICT_HEADER = ["p_n", "product_pminus2_over_p", "n_of_candidates", "correction", "prediction"]
POLIGNAC_HEADER = ["m", "pairs_m", "occurrence_ratio", "expected_ratio", "quotient"]
ESTIMATE_HEADER = ["n", "p_n_estimate", "product_estimate", "candidates_estimate", "predicted_twins"]


def polignac_rows(records):
    return [(r.m, r.pairs_m, r.occurrence_ratio, r.expected_ratio, r.quotient) for r in records]


def stats_comments(stats):
    return [
        f"min,{fmt(stats.minimum)}",
        f"max,{fmt(stats.maximum)}",
        f"mean,{fmt(stats.mean)}",
        f"std,{fmt(stats.std_dev)}",
    ]
