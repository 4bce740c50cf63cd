from .dendrogram import (Dendrogram, LinkageCriterion, build_dendrogram, cut_dendrogram,
                         cut_labels, linkage_merges)
from .disambiguate import (CUT_ALIASES, CutStrategy, DisambiguationResult, block_distances,
                           build_block_dendrograms, cluster_dendrograms, disambiguate,
                           select_blocks)
from .thresholds import (OBJECTIVES, ThresholdCurve, fit_block_thresholds,
                         fit_global_threshold, threshold_curve)

__all__ = [
    "CUT_ALIASES", "CutStrategy", "Dendrogram", "DisambiguationResult", "LinkageCriterion",
    "OBJECTIVES", "ThresholdCurve", "block_distances", "build_block_dendrograms",
    "build_dendrogram", "cluster_dendrograms", "cut_dendrogram", "cut_labels",
    "disambiguate", "fit_block_thresholds", "fit_global_threshold", "linkage_merges",
    "select_blocks", "threshold_curve",
]
