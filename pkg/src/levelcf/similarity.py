"""User-user similarity measures.

Every measure here reduces to the same per-pair statistics: the co-rated
item count, the union size, and three sums of mean-centered rating
products over the co-rated items.  ``corated_stats`` computes those once;
the ``*_score`` kernels turn them into each measure's value.  The
matrix-level functions (``pcc``, ``wpcc``, ...) are thin wrappers that
evaluate the kernel for one user pair.

Centered sums use ``math.fsum`` so a pair's statistics do not depend on
the order ratings were inserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum
from typing import NamedTuple

from .errors import ConfigError
from .ratings import RatingsMatrix

MEASURE_KINDS = ("pcc", "wpcc", "spcc", "jaccard", "multilevel", "hybrid")


@dataclass(frozen=True)
class WpccConfig:
    """Significance weighting: pairs with fewer than ``threshold`` co-rated
    items have their correlation scaled down proportionally."""

    threshold: int = 50

    def __post_init__(self) -> None:
        if self.threshold < 1:
            raise ConfigError(f"wpcc threshold must be >= 1, got {self.threshold}")


@dataclass(frozen=True)
class MultiLevelConfig:
    """Constants for the level-boosted measure.

    ``t1..t4`` are descending co-rated-count thresholds defining four
    levels; ``x1..x4`` are the per-level boosts added to the correlation;
    ``y`` is the minimum correlation a pair must reach before any level
    applies.
    """

    t1: int = 50
    t2: int = 20
    t3: int = 10
    t4: int = 5
    x1: float = 0.50
    x2: float = 0.375
    x3: float = 0.25
    x4: float = 0.125
    y: float = 0.33

    def __post_init__(self) -> None:
        if not (self.t1 > self.t2 > self.t3 > self.t4 >= 1):
            raise ConfigError(
                "t1 > t2 > t3 > t4 violated "
                f"(got t1={self.t1}, t2={self.t2}, t3={self.t3}, t4={self.t4})"
            )
        if not (self.x1 >= self.x2 >= self.x3 >= self.x4 > 0):
            raise ConfigError(
                "x1 >= x2 >= x3 >= x4 > 0 violated "
                f"(got x1={self.x1}, x2={self.x2}, x3={self.x3}, x4={self.x4})"
            )
        if not -1.0 <= self.y <= 1.0:
            raise ConfigError(f"correlation gate y must lie in [-1, 1], got {self.y}")


@dataclass(frozen=True)
class SimilarityMeasure:
    """A named, configured similarity strategy.

    Kinds needing a config get the standard defaults when none is passed;
    passing a config a kind does not use is rejected.
    """

    kind: str
    wpcc: WpccConfig | None = None
    multilevel: MultiLevelConfig | None = None

    def __post_init__(self) -> None:
        if self.kind not in MEASURE_KINDS:
            raise ConfigError(
                f"unknown measure kind {self.kind!r}; expected one of {MEASURE_KINDS}"
            )
        if self.kind == "wpcc":
            if self.wpcc is None:
                object.__setattr__(self, "wpcc", WpccConfig())
        elif self.wpcc is not None:
            raise ConfigError(f"measure {self.kind!r} does not take a wpcc config")
        if self.kind in ("multilevel", "hybrid"):
            if self.multilevel is None:
                object.__setattr__(self, "multilevel", MultiLevelConfig())
        elif self.multilevel is not None:
            raise ConfigError(f"measure {self.kind!r} does not take a multilevel config")

    @property
    def label(self) -> str:
        return self.kind


class CoRatedStats(NamedTuple):
    """Per-pair statistics every measure is derived from.

    ``dot``, ``sq_a`` and ``sq_b`` are sums over the co-rated items of,
    respectively, the product of both users' deviations from their own
    global mean, and each user's squared deviation.
    """

    corated: int
    union: int
    dot: float
    sq_a: float
    sq_b: float


def corated_stats(matrix: RatingsMatrix, a: int, b: int) -> CoRatedStats:
    """Co-rating statistics for one user pair; symmetric up to (sq_a, sq_b)."""
    items_a = matrix.user_items(a)
    items_b = matrix.user_items(b)
    mean_a = matrix.user_mean(a)
    mean_b = matrix.user_mean(b)

    # Iterate the smaller row; membership tests hit the larger dict.
    if len(items_b) < len(items_a):
        small, large = items_b, items_a
        small_mean, large_mean = mean_b, mean_a
        swapped = True
    else:
        small, large = items_a, items_b
        small_mean, large_mean = mean_a, mean_b
        swapped = False

    dev_small: list[float] = []
    dev_large: list[float] = []
    for item, value in small.items():
        other = large.get(item)
        if other is not None:
            dev_small.append(value - small_mean)
            dev_large.append(other - large_mean)

    n = len(dev_small)
    dot = fsum(x * y for x, y in zip(dev_small, dev_large))
    sq_small = fsum(x * x for x in dev_small)
    sq_large = fsum(y * y for y in dev_large)
    union = len(items_a) + len(items_b) - n
    if swapped:
        return CoRatedStats(n, union, dot, sq_large, sq_small)
    return CoRatedStats(n, union, dot, sq_small, sq_large)


# -- score kernels: measure value from per-pair statistics -----------------


def pcc_from_stats(stats: CoRatedStats) -> float:
    """Pearson correlation over co-rated items, 0 when undefined.

    Undefined cases (fewer than two co-rated items, or either deviation
    norm exactly zero) return the neutral value 0 so downstream branching
    stays total.
    """
    if stats.corated < 2 or stats.sq_a == 0.0 or stats.sq_b == 0.0:
        return 0.0
    value = stats.dot / math.sqrt(stats.sq_a * stats.sq_b)
    # Cauchy-Schwarz bounds |value| by 1; clip float rounding spill.
    return max(-1.0, min(1.0, value))


def wpcc_score(corated: int, pcc_value: float, cfg: WpccConfig) -> float:
    if corated < cfg.threshold:
        return (corated / cfg.threshold) * pcc_value
    return pcc_value


def spcc_score(corated: int, pcc_value: float) -> float:
    return pcc_value / (1.0 + math.exp(-corated / 2.0))


def jaccard_score(corated: int, union: int) -> float:
    if union == 0:
        return 0.0
    return corated / union


def multilevel_score(corated: int, pcc_value: float, cfg: MultiLevelConfig) -> float:
    """Level-boosted correlation: 0 unless the pair clears the correlation
    gate and one of the four co-rated-count levels; otherwise the
    correlation plus that level's boost.  Deliberately not clamped to 1, so
    within-level ordering by correlation survives the boost."""
    if pcc_value < cfg.y:
        return 0.0
    if corated >= cfg.t1:
        return pcc_value + cfg.x1
    if corated >= cfg.t2:
        return pcc_value + cfg.x2
    if corated >= cfg.t3:
        return pcc_value + cfg.x3
    if corated >= cfg.t4:
        return pcc_value + cfg.x4
    return 0.0


def hybrid_score(corated: int, pcc_value: float, cfg: MultiLevelConfig) -> float:
    """Per-pair dispatch: the boosted measure where its constraints hold,
    plain correlation everywhere the boosted measure would return 0."""
    if corated >= cfg.t4 and pcc_value >= cfg.y:
        return multilevel_score(corated, pcc_value, cfg)
    return pcc_value


def score_from_stats(
    measure: SimilarityMeasure, stats: CoRatedStats, pcc_value: float | None = None
) -> float:
    """Evaluate ``measure`` from precomputed pair statistics."""
    if pcc_value is None:
        pcc_value = pcc_from_stats(stats)
    kind = measure.kind
    if kind == "pcc":
        return pcc_value
    if kind == "wpcc":
        return wpcc_score(stats.corated, pcc_value, measure.wpcc)
    if kind == "spcc":
        return spcc_score(stats.corated, pcc_value)
    if kind == "jaccard":
        return jaccard_score(stats.corated, stats.union)
    if kind == "multilevel":
        return multilevel_score(stats.corated, pcc_value, measure.multilevel)
    if kind == "hybrid":
        return hybrid_score(stats.corated, pcc_value, measure.multilevel)
    raise ConfigError(f"unknown measure kind {kind!r}")


# -- matrix-level operations ------------------------------------------------


def pcc(matrix: RatingsMatrix, a: int, b: int) -> float:
    """Pearson correlation of two users over their co-rated items."""
    return pcc_from_stats(corated_stats(matrix, a, b))


def wpcc(matrix: RatingsMatrix, a: int, b: int, cfg: WpccConfig) -> float:
    """Correlation, significance-weighted by the co-rated count."""
    stats = corated_stats(matrix, a, b)
    return wpcc_score(stats.corated, pcc_from_stats(stats), cfg)


def spcc(matrix: RatingsMatrix, a: int, b: int) -> float:
    """Correlation damped by a sigmoid of the co-rated count."""
    stats = corated_stats(matrix, a, b)
    return spcc_score(stats.corated, pcc_from_stats(stats))


def jaccard(matrix: RatingsMatrix, a: int, b: int) -> float:
    """Co-rated count over the size of the users' combined item set."""
    stats = corated_stats(matrix, a, b)
    return jaccard_score(stats.corated, stats.union)


def multilevel(matrix: RatingsMatrix, a: int, b: int, cfg: MultiLevelConfig) -> float:
    """Level-boosted correlation (see ``multilevel_score``)."""
    stats = corated_stats(matrix, a, b)
    return multilevel_score(stats.corated, pcc_from_stats(stats), cfg)


def hybrid(matrix: RatingsMatrix, a: int, b: int, cfg: MultiLevelConfig) -> float:
    """Boosted measure with per-pair fallback to plain correlation."""
    stats = corated_stats(matrix, a, b)
    return hybrid_score(stats.corated, pcc_from_stats(stats), cfg)


def similarity(measure: SimilarityMeasure, matrix: RatingsMatrix, a: int, b: int) -> float:
    """Dispatch to the configured measure.

    Self-similarity is 1.0 for every kind; neighborhoods exclude the target
    anyway, this just keeps the function total.
    """
    if a == b:
        matrix.user_items(a)  # existence check
        return 1.0
    return score_from_stats(measure, corated_stats(matrix, a, b))
