from .forest import RandomForest
from .gbrt import GradientBoosting, logistic_loss
from .logistic import LogisticRegression
from .model import (CLASSIFIER_ALIASES, CLASSIFIERS, LinkageModel, feature_importances,
                    link_probability, make_classifier, train_linkage_model)
from .sampling import (SAMPLING_ALIASES, SamplingStrategy, TrainingPair, allocate_quotas,
                       sample_training_pairs)

__all__ = [
    "CLASSIFIERS", "CLASSIFIER_ALIASES", "GradientBoosting", "LinkageModel",
    "LogisticRegression", "RandomForest", "SAMPLING_ALIASES", "SamplingStrategy",
    "TrainingPair", "allocate_quotas", "feature_importances", "link_probability",
    "logistic_loss", "make_classifier", "sample_training_pairs", "train_linkage_model",
]
