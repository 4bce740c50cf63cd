"""Semi-supervised author disambiguation: blocking, a learned pairwise
linkage function and per-block agglomerative clustering."""

from .blocking import BlockingStrategy, assign_blocks, group_by_block
from .clustering import (CutStrategy, LinkageCriterion, build_dendrogram, cut_dendrogram,
                         disambiguate, fit_block_thresholds, fit_global_threshold)
from .core import (Dataset, DisambiguationError, Publication, Signature, load_dataset,
                   restrict_clustering)
from .evaluation import (b3_scores, blocking_max_recall, crossval_folds, pairwise_scores,
                         rfe_ranking)
from .features import (EthnicityModel, FeatureExtractor, fit_feature_extractor,
                       similarity_profile, train_ethnicity_model)
from .linkage import (LinkageModel, SamplingStrategy, TrainingPair, feature_importances,
                      link_probability, sample_training_pairs, train_linkage_model)
from .pipeline import PipelineConfig

__version__ = "0.1.0"
