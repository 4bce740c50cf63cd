from .crossval import CrossvalFold, crossval_folds
from .metrics import (Scores, b3_scores, blocking_max_recall, contingency, f_measure,
                      pairwise_ratio, pairwise_scores)
from .report import HEADER, format_report, mean_row, parse_report, report_row
from .rfe import rfe_ranking

__all__ = [
    "CrossvalFold", "HEADER", "Scores", "b3_scores", "blocking_max_recall", "contingency",
    "crossval_folds", "f_measure", "format_report", "mean_row", "pairwise_ratio",
    "pairwise_scores", "parse_report", "report_row", "rfe_ranking",
]
