"""User-based collaborative filtering with level-boosted Pearson similarity.

The package provides a sparse rating store, six user-user similarity
measures (plain / weighted / sigmoid-damped Pearson, Jaccard, the
level-boosted measure, and its hybrid fallback), k-NN rating prediction,
and a deterministic offline evaluation harness (MAE, precision, recall).
"""

from .datasets import (
    DatasetSpec,
    IngestSummary,
    ParseResult,
    builtin_spec,
    builtin_specs,
    ingest_summary,
    normalized_spec,
    parse_ratings,
    write_normalized,
)
from .errors import (
    ConfigError,
    EvaluationError,
    LevelcfError,
    ParseError,
    ScaleError,
    SplitError,
    UnknownUserError,
)
from .evaluation import (
    EvalReport,
    SplitSpec,
    evaluate_mae,
    evaluate_topn,
    mae,
    precision_recall,
    split,
    sweep,
    write_reports_csv,
    write_reports_jsonl,
)
from .ratings import Rating, RatingScale, RatingsMatrix
from .recommend import (
    NeighborRanker,
    Neighborhood,
    Prediction,
    nearest_neighbors,
    predict_rating,
    top_n,
)
from .similarity import (
    MultiLevelConfig,
    SimilarityMeasure,
    WpccConfig,
    hybrid,
    hybrid_score,
    jaccard,
    jaccard_score,
    multilevel,
    multilevel_score,
    pcc,
    similarity,
    spcc,
    spcc_score,
    wpcc,
    wpcc_score,
)

__all__ = [
    "ConfigError",
    "DatasetSpec",
    "EvalReport",
    "EvaluationError",
    "IngestSummary",
    "LevelcfError",
    "MultiLevelConfig",
    "NeighborRanker",
    "Neighborhood",
    "ParseError",
    "ParseResult",
    "Prediction",
    "Rating",
    "RatingScale",
    "RatingsMatrix",
    "ScaleError",
    "SimilarityMeasure",
    "SplitError",
    "SplitSpec",
    "UnknownUserError",
    "WpccConfig",
    "builtin_spec",
    "builtin_specs",
    "evaluate_mae",
    "evaluate_topn",
    "hybrid",
    "hybrid_score",
    "ingest_summary",
    "jaccard",
    "jaccard_score",
    "mae",
    "multilevel",
    "multilevel_score",
    "nearest_neighbors",
    "normalized_spec",
    "parse_ratings",
    "pcc",
    "precision_recall",
    "predict_rating",
    "similarity",
    "spcc",
    "spcc_score",
    "split",
    "sweep",
    "top_n",
    "wpcc",
    "wpcc_score",
    "write_normalized",
    "write_reports_csv",
    "write_reports_jsonl",
]

__version__ = "0.1.0"
