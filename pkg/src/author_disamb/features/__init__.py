from .ethnicity import (ETHNIC_GROUPS, EthnicityModel, ethnicity_probabilities,
                        read_names_file, train_ethnicity_model)
from .jaro import jaro, jaro_winkler
from .profile import (FEATURE_NAMES, N_FEATURES, EncodedSignatures, FeatureExtractor,
                      fit_feature_extractor, similarity_profile)
from .tfidf import EmptyCorpusError, TfidfVocabulary, analyze, cosine_tfidf

__all__ = [
    "ETHNIC_GROUPS", "EmptyCorpusError", "EncodedSignatures", "EthnicityModel",
    "FEATURE_NAMES", "FeatureExtractor", "N_FEATURES", "TfidfVocabulary", "analyze",
    "cosine_tfidf", "ethnicity_probabilities", "fit_feature_extractor", "jaro",
    "jaro_winkler", "read_names_file", "similarity_profile", "train_ethnicity_model",
]
