"""Hold-out splitting, accuracy metrics, and the experiment sweep.

The split, every neighborhood, and the report ordering are all
deterministic for a fixed seed, so a sweep's output files are
byte-reproducible.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from math import floor, fsum
from typing import Iterable, Sequence, TextIO

from .errors import ConfigError, EvaluationError, SplitError
from .ratings import Rating, RatingScale, RatingsMatrix
from .recommend import NeighborRanker, predict_rating, top_n
from .similarity import SimilarityMeasure


@dataclass(frozen=True)
class SplitSpec:
    """Random hold-out parameters: train fraction and RNG seed."""

    train_fraction: float = 0.8
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(
                f"train fraction must lie strictly between 0 and 1, got {self.train_fraction}"
            )


@dataclass(frozen=True)
class EvalReport:
    """One evaluation result: an MAE row (n is None) or a top-N row."""

    dataset: str
    measure: str
    k: int
    n: int | None
    mae: float | None
    precision: float | None
    recall: float | None
    seed: int
    predictions: int
    fallbacks: int | None


def split(matrix: RatingsMatrix, spec: SplitSpec) -> tuple[RatingsMatrix, list[Rating]]:
    """Partition the matrix's triples into a train matrix and a test list.

    The train side gets floor(train_fraction * total) triples.  Every test
    rating's user is guaranteed at least one train rating: offending test
    triples are swapped with train triples of multiply-rated users, in
    seed-determined order, so the partition sizes never change.
    """
    triples = matrix.triples()
    if not triples:
        raise SplitError("cannot split an empty matrix")
    rng = random.Random(spec.seed)
    rng.shuffle(triples)
    n_train = floor(spec.train_fraction * len(triples))
    train_triples = triples[:n_train]
    test_triples = triples[n_train:]

    train_counts: dict[int, int] = {}
    for r in train_triples:
        train_counts[r.user] = train_counts.get(r.user, 0) + 1

    for i, r in enumerate(test_triples):
        if train_counts.get(r.user, 0) > 0:
            continue
        donor = None
        for j in range(len(train_triples) - 1, -1, -1):
            if train_counts[train_triples[j].user] >= 2:
                donor = j
                break
        if donor is None:
            raise SplitError(
                f"matrix too small to keep test user {r.user} covered by the train side"
            )
        train_counts[train_triples[donor].user] -= 1
        train_counts[r.user] = train_counts.get(r.user, 0) + 1
        train_triples[donor], test_triples[i] = test_triples[i], train_triples[donor]

    train = RatingsMatrix.from_triples(train_triples, matrix.scale)
    return train, test_triples


def mae(pairs: Sequence[tuple[float, float]]) -> float:
    """Mean absolute error over (predicted, actual) pairs."""
    if not pairs:
        raise EvaluationError("MAE is undefined for an empty pair list")
    return fsum(abs(p - r) for p, r in pairs) / len(pairs)


def precision_recall(
    recommended: Sequence[int], relevant: set[int]
) -> tuple[float, float]:
    """Hit fractions of a recommendation list against a relevant set.

    Degenerate denominators (nothing recommended / nothing relevant)
    yield 0 rather than an error.
    """
    hits = len(set(recommended) & relevant)
    precision = hits / len(recommended) if recommended else 0.0
    recall = hits / len(relevant) if relevant else 0.0
    return precision, recall


def evaluate_mae(
    train: RatingsMatrix,
    test: Sequence[Rating],
    measure: SimilarityMeasure,
    k: int,
    *,
    dataset: str = "",
    seed: int = 0,
    ranker: NeighborRanker | None = None,
) -> EvalReport:
    """Predict every held-out rating from the train matrix and aggregate MAE.

    Predictions with no usable neighbor fall back to the user's train mean
    and are included in the error (the fallback count is reported rather
    than the prediction dropped).
    """
    if not test:
        raise EvaluationError("cannot evaluate an empty test set")
    if ranker is None:
        ranker = NeighborRanker(train, (measure,))
    pairs: list[tuple[float, float]] = []
    fallbacks = 0
    for r in test:
        hood = ranker.neighborhood(measure, r.user, k)
        prediction = predict_rating(train, hood, r.item)
        if not any(train.rating(nb, r.item) is not None for nb, _ in hood.members):
            fallbacks += 1
        pairs.append((prediction.value, r.value))
    return EvalReport(
        dataset=dataset,
        measure=measure.label,
        k=k,
        n=None,
        mae=mae(pairs),
        precision=None,
        recall=None,
        seed=seed,
        predictions=len(pairs),
        fallbacks=fallbacks,
    )


def evaluate_topn(
    train: RatingsMatrix,
    test: Sequence[Rating],
    measure: SimilarityMeasure,
    k: int,
    n: int,
    scale: RatingScale | None = None,
    *,
    dataset: str = "",
    seed: int = 0,
    ranker: NeighborRanker | None = None,
) -> EvalReport:
    """Macro-averaged precision/recall of top-n lists against held-out
    relevant items.

    A user qualifies with at least one held-out rating at or above the
    scale's relevance threshold; users with none are excluded from the
    average entirely.
    """
    if scale is None:
        scale = train.scale
    if ranker is None:
        ranker = NeighborRanker(train, (measure,))
    relevant_by_user: dict[int, set[int]] = {}
    for r in test:
        if r.value >= scale.relevance_threshold:
            relevant_by_user.setdefault(r.user, set()).add(r.item)
    if not relevant_by_user:
        raise EvaluationError(
            "no test user has a held-out rating at or above the relevance threshold"
        )
    precisions: list[float] = []
    recalls: list[float] = []
    for user in sorted(relevant_by_user):
        recommended = top_n(train, measure, user, k, n, ranker=ranker)
        p, rec = precision_recall([item for item, _ in recommended], relevant_by_user[user])
        precisions.append(p)
        recalls.append(rec)
    return EvalReport(
        dataset=dataset,
        measure=measure.label,
        k=k,
        n=n,
        mae=None,
        precision=fsum(precisions) / len(precisions),
        recall=fsum(recalls) / len(recalls),
        seed=seed,
        predictions=len(precisions),
        fallbacks=None,
    )


def sweep(
    matrix: RatingsMatrix,
    measures: Sequence[SimilarityMeasure],
    ks: Sequence[int],
    topn_specs: Sequence[tuple[int, int]],
    spec: SplitSpec,
    *,
    dataset: str = "",
    progress=None,
) -> list[EvalReport]:
    """Evaluate measures x ks (MAE) plus measures x topn_specs on one shared
    split, returning reports in canonical (measure, k, n) order.

    ``progress`` is an optional callable fed each report as it finishes.
    """
    if not measures:
        raise ConfigError("sweep needs at least one measure")
    all_ks = [*ks, *(k for k, _ in topn_specs)]
    if not all_ks:
        raise ConfigError("sweep needs at least one k or top-N spec")
    train, test = split(matrix, spec)
    ranker = NeighborRanker(train, measures, max_k=max(all_ks))
    reports: list[EvalReport] = []
    for measure in measures:
        for k in ks:
            report = evaluate_mae(
                train, test, measure, k, dataset=dataset, seed=spec.seed, ranker=ranker
            )
            reports.append(report)
            if progress is not None:
                progress(report)
        for k, n in topn_specs:
            report = evaluate_topn(
                train, test, measure, k, n, dataset=dataset, seed=spec.seed, ranker=ranker
            )
            reports.append(report)
            if progress is not None:
                progress(report)
    reports.sort(key=_report_order)
    return reports


def _report_order(report: EvalReport) -> tuple:
    return (
        report.measure,
        0 if report.n is None else 1,
        report.k,
        -1 if report.n is None else report.n,
    )


# -- figure-ready emission ---------------------------------------------------

CSV_COLUMNS = (
    "dataset",
    "measure",
    "k",
    "n",
    "mae",
    "precision",
    "recall",
    "seed",
    "fallback_count",
)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_reports_csv(reports: Iterable[EvalReport], stream: TextIO) -> None:
    """Write reports as a plot-ready CSV table (full float precision)."""
    stream.write(",".join(CSV_COLUMNS) + "\n")
    for r in reports:
        row = (r.dataset, r.measure, r.k, r.n, r.mae, r.precision, r.recall, r.seed, r.fallbacks)
        stream.write(",".join(_csv_cell(cell) for cell in row) + "\n")


def write_reports_jsonl(reports: Iterable[EvalReport], stream: TextIO) -> None:
    """Write reports as line-delimited JSON records."""
    for r in reports:
        stream.write(json.dumps(asdict(r), sort_keys=True) + "\n")
