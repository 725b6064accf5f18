import random

import pytest

from levelcf import (
    ConfigError,
    Rating,
    RatingScale,
    RatingsMatrix,
    ScaleError,
    UnknownUserError,
)
from synth import random_matrix


def test_insert_single_rating(scale15):
    matrix = RatingsMatrix(scale15)
    matrix.insert(1, 2, 2)
    assert matrix.n_ratings == 1
    assert matrix.rating(1, 2) == 2.0
    assert matrix.user_mean(1) == 2.0


def test_insert_five_ratings_mean(worked_matrix):
    # (5 + 4 + 3 + 2 + 1) / 5
    assert worked_matrix.user_mean(1) == 3.0


def test_insert_rejects_out_of_scale(scale15):
    matrix = RatingsMatrix(scale15)
    with pytest.raises(ScaleError, match=r"user=1.*item=2"):
        matrix.insert(1, 2, 9)
    assert matrix.n_ratings == 0


def test_insert_overwrites_duplicates(scale15):
    matrix = RatingsMatrix(scale15)
    matrix.insert(1, 7, 2)
    matrix.insert(1, 7, 5)
    assert matrix.rating(1, 7) == 5.0
    assert matrix.n_ratings == 1
    assert matrix.user_mean(1) == 5.0


def test_reinsert_identical_is_idempotent(worked_matrix):
    before_mean = worked_matrix.user_mean(1)
    before_corated = worked_matrix.corated_items(1, 3)
    worked_matrix.insert(1, 1, 5)
    assert worked_matrix.user_mean(1) == before_mean
    assert worked_matrix.corated_items(1, 3) == before_corated
    assert worked_matrix.n_ratings == 15


def test_corated_items_full_overlap(worked_matrix):
    assert worked_matrix.corated_items(1, 2) == {1, 2, 3, 4, 5}


def test_corated_items_disjoint(scale15):
    matrix = RatingsMatrix(scale15)
    matrix.insert(1, 1, 3)
    matrix.insert(2, 2, 3)
    assert matrix.corated_items(1, 2) == set()


def test_corated_unknown_user(worked_matrix):
    with pytest.raises(UnknownUserError, match="99"):
        worked_matrix.corated_items(1, 99)


def test_corated_symmetry_random():
    rng = random.Random(11)
    for _ in range(20):
        matrix, data = random_matrix(rng)
        users = sorted(data)
        for a in users:
            for b in users:
                expected = set(data[a]) & set(data[b])
                assert matrix.corated_items(a, b) == expected
                assert matrix.corated_items(a, b) == matrix.corated_items(b, a)


def test_user_mean_examples(scale15, worked_matrix):
    single = RatingsMatrix(scale15)
    single.insert(9, 1, 4)
    assert single.user_mean(9) == 4.0
    # (5 + 4 + 3 + 2 + 5) / 5
    assert worked_matrix.user_mean(3) == 3.8


def test_user_mean_unknown_user(worked_matrix):
    with pytest.raises(UnknownUserError):
        worked_matrix.user_mean(42)


def test_corated_bound_and_mean_range():
    rng = random.Random(23)
    for _ in range(20):
        matrix, data = random_matrix(rng)
        users = sorted(data)
        for a in users:
            mean = matrix.user_mean(a)
            assert matrix.scale.min <= mean <= matrix.scale.max
            for b in users:
                overlap = len(matrix.corated_items(a, b))
                assert overlap <= min(len(data[a]), len(data[b]))


def test_mean_independent_of_insertion_order(scale15):
    values = [(1, i, v) for i, v in enumerate([4, 2, 5, 1, 3, 3, 4], start=1)]
    forward = RatingsMatrix(scale15)
    backward = RatingsMatrix(scale15)
    for user, item, value in values:
        forward.insert(user, item, value)
    for user, item, value in reversed(values):
        backward.insert(user, item, value)
    assert forward.user_mean(1) == backward.user_mean(1)
    assert forward == backward


def test_triples_are_canonical(worked_matrix):
    triples = worked_matrix.triples()
    assert triples == sorted(triples)
    assert triples[0] == Rating(1, 1, 5.0)
    assert len(triples) == 15


def test_scale_invariants():
    with pytest.raises(ConfigError):
        RatingScale(5, 1)
    with pytest.raises(ConfigError):
        RatingScale(1, 5, relevance_threshold=6)
    assert RatingScale(1, 5).relevance_threshold == 4.0
    assert RatingScale(-10, 10).relevance_threshold == 5.0


def test_scale_clamp():
    scale = RatingScale(1, 5, relevance_threshold=4)
    assert scale.clamp(5.7) == 5.0
    assert scale.clamp(0.2) == 1.0
    assert scale.clamp(3.3) == 3.3
