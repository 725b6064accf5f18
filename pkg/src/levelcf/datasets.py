"""Parsing of line-oriented rating files into a RatingsMatrix.

Input is the normalized triple form ``user<SEP>item<SEP>rating`` with a
configurable separator; extra trailing fields (timestamps) are ignored.
Sources that are not natively triple files (e.g. joke-rating matrices)
must be pre-converted to triples; the normalized format is the contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, TextIO

from .errors import ConfigError, ParseError
from .ratings import RatingScale, RatingsMatrix


@dataclass(frozen=True)
class DatasetSpec:
    """How to read one dataset: separator, column positions, scale, cap."""

    id: str
    delimiter: str
    scale: RatingScale
    user_col: int = 0
    item_col: int = 1
    rating_col: int = 2
    max_records: int | None = None

    def __post_init__(self) -> None:
        if not self.delimiter:
            raise ConfigError("dataset delimiter must be non-empty")
        cols = (self.user_col, self.item_col, self.rating_col)
        if len(set(cols)) != 3 or min(cols) < 0:
            raise ConfigError(f"user/item/rating columns must be distinct and >= 0, got {cols}")
        if self.max_records is not None and self.max_records < 1:
            raise ConfigError(f"max_records must be >= 1, got {self.max_records}")


@dataclass
class ParseResult:
    """A parsed matrix plus the line accounting: every input line is either
    ingested or rejected-and-counted."""

    matrix: RatingsMatrix
    lines: int = 0
    ingested: int = 0
    malformed: int = 0
    out_of_scale: int = 0
    user_labels: dict[str, int] = field(default_factory=dict)
    item_labels: dict[str, int] = field(default_factory=dict)

    @property
    def rejected(self) -> int:
        return self.malformed + self.out_of_scale


class IngestSummary(NamedTuple):
    users: int
    items: int
    ratings: int


def _decode_id(token: str, labels: dict[str, int]) -> int:
    """Integer id for a token; non-integer tokens are dictionary-encoded to
    fresh negative ids so they can never collide with native ones."""
    try:
        return int(token)
    except ValueError:
        encoded = labels.get(token)
        if encoded is None:
            encoded = -(len(labels) + 1)
            labels[token] = encoded
        return encoded


def parse_ratings(
    source: Iterable[str],
    spec: DatasetSpec,
    *,
    max_malformed_fraction: float = 0.1,
) -> ParseResult:
    """Parse a line-oriented rating stream under ``spec``.

    Well-formed lines become ratings (last write wins on duplicate
    (user, item) pairs); malformed lines and out-of-scale values are
    rejected and counted per line.  If more than ``max_malformed_fraction``
    of the lines seen are malformed, the whole parse fails.  Reading stops
    once ``spec.max_records`` ratings have been ingested.
    """
    result = ParseResult(matrix=RatingsMatrix(spec.scale))
    needed = max(spec.user_col, spec.item_col, spec.rating_col) + 1
    for raw in source:
        result.lines += 1
        parts = raw.rstrip("\r\n").split(spec.delimiter)
        if len(parts) < needed:
            result.malformed += 1
            continue
        rating_token = parts[spec.rating_col].strip()
        try:
            value = float(rating_token)
        except ValueError:
            result.malformed += 1
            continue
        if not math.isfinite(value):
            result.malformed += 1
            continue
        if not spec.scale.contains(value):
            result.out_of_scale += 1
            continue
        user = _decode_id(parts[spec.user_col].strip(), result.user_labels)
        item = _decode_id(parts[spec.item_col].strip(), result.item_labels)
        result.matrix.insert(user, item, value)
        result.ingested += 1
        if spec.max_records is not None and result.ingested >= spec.max_records:
            break
    if result.lines and result.malformed / result.lines > max_malformed_fraction:
        raise ParseError(
            f"{result.malformed} of {result.lines} lines malformed under spec "
            f"{spec.id!r} (limit {max_malformed_fraction:.0%}); wrong delimiter?"
        )
    return result


def ingest_summary(matrix: RatingsMatrix) -> IngestSummary:
    """Distinct user/item counts and the number of stored ratings."""
    return IngestSummary(matrix.n_users, matrix.n_items, matrix.n_ratings)


def write_normalized(matrix: RatingsMatrix, stream: TextIO) -> None:
    """Emit the matrix as canonical tab-separated triples, full precision."""
    for r in matrix.triples():
        stream.write(f"{r.user}\t{r.item}\t{r.value!r}\n")


def normalized_spec(id: str, scale: RatingScale, max_records: int | None = None) -> DatasetSpec:
    """Spec for re-reading a file produced by ``write_normalized``."""
    return DatasetSpec(id=id, delimiter="\t", scale=scale, max_records=max_records)


def builtin_specs() -> list[DatasetSpec]:
    """Specs for the five stock datasets, in their published file layouts.

    The joke-rating source ships as a spreadsheet matrix and is expected in
    normalized triple form; its cap keeps only the first million ratings.
    """
    return [
        DatasetSpec(
            id="ml-100k",
            delimiter="\t",
            scale=RatingScale(1, 5, relevance_threshold=4),
        ),
        DatasetSpec(
            id="ml-1m",
            delimiter="::",
            scale=RatingScale(1, 5, relevance_threshold=4),
        ),
        DatasetSpec(
            id="jester",
            delimiter="\t",
            scale=RatingScale(-10, 10, relevance_threshold=5.0),
            max_records=1_000_000,
        ),
        DatasetSpec(
            id="epinions",
            delimiter=" ",
            scale=RatingScale(1, 5, relevance_threshold=4),
        ),
        DatasetSpec(
            id="movietweetings",
            delimiter="::",
            scale=RatingScale(0, 10, relevance_threshold=8),
        ),
    ]


def builtin_spec(id: str) -> DatasetSpec:
    for spec in builtin_specs():
        if spec.id == id:
            return spec
    known = ", ".join(s.id for s in builtin_specs())
    raise ConfigError(f"unknown dataset id {id!r}; known ids: {known}")
