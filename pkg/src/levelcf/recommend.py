"""Neighborhood selection, rating prediction, and top-N recommendation.

Neighbors are the k most similar users with strictly positive similarity;
a boosted-measure score of 0 means "no similarity" and never contributes.
All orderings break ties by ascending identifier so runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum
from typing import NamedTuple, Sequence

from .errors import ConfigError
from .ratings import RatingsMatrix
from .similarity import SimilarityMeasure, corated_stats, pcc_from_stats, score_from_stats


@dataclass(frozen=True)
class Neighborhood:
    """Up to k neighbors of ``target``, sorted by similarity descending
    (ties by id ascending); every stored similarity is > 0."""

    target: int
    members: tuple[tuple[int, float], ...]

    def __len__(self) -> int:
        return len(self.members)


class Prediction(NamedTuple):
    user: int
    item: int
    value: float


class NeighborRanker:
    """Caches each user's full positive-similarity ranking for one matrix.

    An evaluation sweep asks for the same user's neighborhood once per
    (measure, k) point; the ranking is computed once per (measure, user)
    and sliced.  Candidates are discovered through the item index, and
    pair statistics are shared across all registered measures, so adding
    measures to a sweep is nearly free.
    """

    def __init__(
        self,
        matrix: RatingsMatrix,
        measures: Sequence[SimilarityMeasure] = (),
        max_k: int | None = None,
    ) -> None:
        self.matrix = matrix
        self.max_k = max_k
        self._measures: list[SimilarityMeasure] = []
        for measure in measures:
            if measure not in self._measures:
                self._measures.append(measure)
        self._rankings: dict[tuple[SimilarityMeasure, int], tuple[tuple[int, float], ...]] = {}

    def ranking(self, measure: SimilarityMeasure, target: int) -> tuple[tuple[int, float], ...]:
        """The target's candidate ranking under ``measure`` (truncated to
        ``max_k`` entries when one was set)."""
        key = (measure, target)
        cached = self._rankings.get(key)
        if cached is None:
            if measure not in self._measures:
                self._measures.append(measure)
            self._rank_target(target)
            cached = self._rankings[key]
        return cached

    def neighborhood(self, measure: SimilarityMeasure, target: int, k: int) -> Neighborhood:
        if k < 1:
            raise ConfigError(f"neighborhood size k must be >= 1, got {k}")
        if self.max_k is not None and k > self.max_k:
            raise ConfigError(f"k={k} exceeds this ranker's max_k={self.max_k}")
        return Neighborhood(target, self.ranking(measure, target)[:k])

    def _rank_target(self, target: int) -> None:
        matrix = self.matrix
        items = matrix.user_items(target)
        candidates: set[int] = set()
        for item in items:
            candidates.update(matrix.item_raters(item))
        candidates.discard(target)

        pending = [m for m in self._measures if (m, target) not in self._rankings]
        scored: dict[SimilarityMeasure, list[tuple[int, float]]] = {m: [] for m in pending}
        for other in sorted(candidates):
            stats = corated_stats(matrix, target, other)
            pcc_value = pcc_from_stats(stats)
            for measure, acc in scored.items():
                value = score_from_stats(measure, stats, pcc_value)
                if value > 0.0:
                    acc.append((other, value))
        for measure, acc in scored.items():
            acc.sort(key=lambda entry: (-entry[1], entry[0]))
            if self.max_k is not None:
                del acc[self.max_k :]
            self._rankings[(measure, target)] = tuple(acc)


def nearest_neighbors(
    matrix: RatingsMatrix, measure: SimilarityMeasure, target: int, k: int
) -> Neighborhood:
    """The k users most similar to ``target`` under ``measure``.

    Users with similarity <= 0 are excluded, so the result may be shorter
    than k (or empty).
    """
    return NeighborRanker(matrix, (measure,)).neighborhood(measure, target, k)


def predict_rating(matrix: RatingsMatrix, hood: Neighborhood, item: int) -> Prediction:
    """Mean-centered similarity-weighted prediction, clamped to the scale.

    Neighbors who have not rated the item contribute nothing; if no
    neighbor rated it the prediction falls back to the target's mean.
    """
    target_mean = matrix.user_mean(hood.target)
    weighted: list[float] = []
    weights: list[float] = []
    for neighbor, sim in hood.members:
        value = matrix.rating(neighbor, item)
        if value is None:
            continue
        weighted.append(sim * (value - matrix.user_mean(neighbor)))
        weights.append(abs(sim))
    if not weights:
        prediction = target_mean
    else:
        prediction = target_mean + fsum(weighted) / fsum(weights)
    return Prediction(hood.target, item, matrix.scale.clamp(prediction))


def top_n(
    matrix: RatingsMatrix,
    measure: SimilarityMeasure,
    target: int,
    k: int,
    n: int,
    *,
    ranker: NeighborRanker | None = None,
) -> list[tuple[int, float]]:
    """The n items with the highest predicted rating for ``target``.

    Candidates are items rated by at least one neighbor and unrated by the
    target; ties in predicted value break by item id ascending.  May return
    fewer than n when candidates run out.
    """
    if n < 1:
        raise ConfigError(f"recommendation count n must be >= 1, got {n}")
    if ranker is None:
        ranker = NeighborRanker(matrix, (measure,))
    hood = ranker.neighborhood(measure, target, k)
    seen = matrix.user_items(target)
    candidates: set[int] = set()
    for neighbor, _ in hood.members:
        candidates.update(matrix.user_items(neighbor))
    candidates.difference_update(seen)
    predictions = [
        (item, predict_rating(matrix, hood, item).value) for item in sorted(candidates)
    ]
    predictions.sort(key=lambda entry: (-entry[1], entry[0]))
    return predictions[:n]
