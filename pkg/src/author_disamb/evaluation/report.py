"""Delimited score reports."""

import numpy as np

HEADER = ("label", "b3_precision", "b3_recall", "b3_f", "pairwise_precision",
          "pairwise_recall", "pairwise_f")


def report_row(label, b3, pairwise):
    return (label, *tuple(b3), *tuple(pairwise))


def mean_row(rows, label="mean"):
    values = np.array([r[1:] for r in rows], dtype=float)
    return (label, *values.mean(axis=0).tolist())


def format_report(rows, delimiter="\t"):
    lines = [delimiter.join(HEADER)]
    for row in rows:
        lines.append(delimiter.join([str(row[0])] + [f"{v:.6f}" for v in row[1:]]))
    return "\n".join(lines) + "\n"


def parse_report(text, delimiter="\t"):
    lines = [ln for ln in text.splitlines() if ln]
    if not lines or tuple(lines[0].split(delimiter)) != HEADER:
        raise ValueError("not a score report")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(delimiter)
        rows.append((parts[0], *map(float, parts[1:])))
    return rows
