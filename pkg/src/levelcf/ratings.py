"""Sparse in-memory rating store and the per-user quantities derived from it.

The matrix is built once (single writer) and then treated as immutable:
every similarity and evaluation routine only reads from it, so a built
matrix can be shared freely across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum
from typing import Iterable, Iterator, NamedTuple

from .errors import ConfigError, ScaleError, UnknownUserError


class Rating(NamedTuple):
    """One (user, item, value) triple."""

    user: int
    item: int
    value: float


@dataclass(frozen=True)
class RatingScale:
    """Legal rating bounds plus the relevance cutoff used by top-N metrics.

    ``relevance_threshold`` is the minimum rating for an item to count as
    relevant when scoring recommendation lists; when omitted it defaults to
    the upper quartile point of the scale.
    """

    min: float
    max: float
    relevance_threshold: float | None = None

    def __post_init__(self) -> None:
        if not self.min < self.max:
            raise ConfigError(f"rating scale requires min < max, got [{self.min}, {self.max}]")
        if self.relevance_threshold is None:
            object.__setattr__(
                self, "relevance_threshold", self.min + 0.75 * (self.max - self.min)
            )
        if not self.min <= self.relevance_threshold <= self.max:
            raise ConfigError(
                f"relevance threshold {self.relevance_threshold} outside scale "
                f"[{self.min}, {self.max}]"
            )

    def contains(self, value: float) -> bool:
        return self.min <= value <= self.max

    def clamp(self, value: float) -> float:
        return min(self.max, max(self.min, value))


class RatingsMatrix:
    """Sparse user -> (item -> rating) store.

    Duplicate (user, item) insertions overwrite (last write wins).  Per-user
    means are memoized and computed with an exactly-rounded sum, so they do
    not depend on insertion order.
    """

    def __init__(self, scale: RatingScale) -> None:
        self.scale = scale
        self._by_user: dict[int, dict[int, float]] = {}
        self._raters: dict[int, set[int]] = {}
        self._means: dict[int, float] = {}

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[int, int, float]], scale: RatingScale) -> "RatingsMatrix":
        matrix = cls(scale)
        for user, item, value in triples:
            matrix.insert(user, item, value)
        return matrix

    def insert(self, user: int, item: int, value: float) -> None:
        """Store one rating, rejecting values outside the declared scale."""
        if not self.scale.contains(value):
            raise ScaleError(
                f"rating {value} for (user={user}, item={item}) outside scale "
                f"[{self.scale.min}, {self.scale.max}]"
            )
        self._by_user.setdefault(user, {})[item] = float(value)
        self._raters.setdefault(item, set()).add(user)
        self._means.pop(user, None)

    # -- lookups ----------------------------------------------------------

    def has_user(self, user: int) -> bool:
        return user in self._by_user

    def users(self) -> list[int]:
        return sorted(self._by_user)

    def items(self) -> list[int]:
        return sorted(self._raters)

    def rating(self, user: int, item: int) -> float | None:
        row = self._by_user.get(user)
        return None if row is None else row.get(item)

    def user_items(self, user: int) -> dict[int, float]:
        """The user's item -> rating row.  Treat the result as read-only."""
        try:
            return self._by_user[user]
        except KeyError:
            raise UnknownUserError(f"unknown user {user}") from None

    def item_raters(self, item: int) -> set[int]:
        """Users who rated ``item``.  Treat the result as read-only."""
        return self._raters.get(item, set())

    def user_mean(self, user: int) -> float:
        """Arithmetic mean over all of the user's ratings."""
        mean = self._means.get(user)
        if mean is None:
            row = self.user_items(user)
            mean = fsum(row.values()) / len(row)
            self._means[user] = mean
        return mean

    def corated_items(self, a: int, b: int) -> set[int]:
        """Items rated by both users; symmetric in (a, b)."""
        items_a = self.user_items(a)
        items_b = self.user_items(b)
        if len(items_b) < len(items_a):
            items_a, items_b = items_b, items_a
        return {item for item in items_a if item in items_b}

    # -- whole-matrix views -------------------------------------------------

    @property
    def n_users(self) -> int:
        return len(self._by_user)

    @property
    def n_items(self) -> int:
        return len(self._raters)

    @property
    def n_ratings(self) -> int:
        return sum(len(row) for row in self._by_user.values())

    def __len__(self) -> int:
        return self.n_ratings

    def triples(self) -> list[Rating]:
        """All ratings in canonical (user, item) order."""
        out = []
        for user in sorted(self._by_user):
            row = self._by_user[user]
            for item in sorted(row):
                out.append(Rating(user, item, row[item]))
        return out

    def __iter__(self) -> Iterator[Rating]:
        return iter(self.triples())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatingsMatrix):
            return NotImplemented
        return self.scale == other.scale and self._by_user == other._by_user

    def __repr__(self) -> str:
        return (
            f"RatingsMatrix(users={self.n_users}, items={self.n_items}, "
            f"ratings={self.n_ratings}, scale=[{self.scale.min}, {self.scale.max}])"
        )
