import pytest

from levelcf import MultiLevelConfig, RatingScale, RatingsMatrix


@pytest.fixture
def scale15():
    return RatingScale(1, 5, relevance_threshold=4)


@pytest.fixture
def worked_matrix(scale15):
    """Two identical raters (1, 2) and a third agreeing on everything but
    the last item: the standard worked example for these measures."""
    matrix = RatingsMatrix(scale15)
    for item, value in enumerate([5, 4, 3, 2, 1], start=1):
        matrix.insert(1, item, value)
        matrix.insert(2, item, value)
    for item, value in enumerate([5, 4, 3, 2, 5], start=1):
        matrix.insert(3, item, value)
    return matrix


@pytest.fixture
def default_ml():
    return MultiLevelConfig()
