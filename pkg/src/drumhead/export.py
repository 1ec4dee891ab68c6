"""
Serialisation of reports, mode fields and sweep tables.

All numbers are written with 12 significant digits and files use LF line
endings, so identical inputs give byte-identical files.
"""

import json
from pathlib import Path

import numpy as np


def num(x) -> str:
    return format(float(x), ".12g")


def _json_num(x):
    return None if x is None else float(num(x))


def report_dict(report) -> dict:
    modes = []
    for rank, (lam, w, (m, n), partner, cents) in enumerate(
        zip(report.raw_lambdas, report.normalized, report.labels, report.partners, report.cents_deviation),
        start=1,
    ):
        modes.append(
            {
                "rank": rank,
                "lambda": _json_num(lam),
                "normalized": _json_num(w),
                "m": m,
                "n": n,
                "partner": partner,
                "cents_vs_nearest_integer": _json_num(cents),
            }
        )
    p = report.params
    return {
        "params": {
            "sigma": _json_num(p.sigma),
            "k": _json_num(p.k),
            "xi": _json_num(p.xi),
            "epsilon": _json_num(p.epsilon),
        },
        "grid": {"nr": report.n_r, "ntheta": report.n_theta},
        "normalization": {
            "convention": report.convention,
            "reference_lambda": _json_num(report.reference_lambda),
        },
        "labeling": report.labeling,
        "modes": modes,
    }


def dumps_report(report) -> str:
    return json.dumps(report_dict(report), indent=2) + "\n"


def _write(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def write_report(report, path):
    return _write(path, dumps_report(report))


def csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else num(v) for v in row))
    return "\n".join(lines) + "\n"


def write_mode_csv(table: np.ndarray, path):
    return _write(path, csv_text(["r", "theta", "value"], table))


def quality_map_text(qmap) -> str:
    """First row: k axis; first column: sigma axis; body: Q."""
    header = ["sigma\\k"] + [num(k) for k in qmap.k_axis]
    rows = [[s, *q] for s, q in zip(qmap.sigma_axis, qmap.q_values)]
    return csv_text(header, rows)


def write_quality_map(qmap, path):
    return _write(path, quality_map_text(qmap))


def write_table(header, rows, path):
    return _write(path, csv_text(header, rows))


def mode_index_text(report, files) -> str:
    header = ["rank", "lambda", "normalized", "m", "n", "partner", "file"]
    rows = []
    for rank, (lam, w, (m, n), partner, name) in enumerate(
        zip(report.raw_lambdas, report.normalized, report.labels, report.partners, files), start=1
    ):
        rows.append([str(rank), num(lam), num(w), str(m), str(n), "" if partner is None else str(partner), name])
    return csv_text(header, rows)
