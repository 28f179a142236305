import numpy as np
import pytest

from src.domain.models.errors import ArgumentError
from src.infrastructure.random.stream_factory import CHANNEL_INITIAL, CHANNEL_NOISE, stream, sub_seed


def test_stream_is_a_pure_function_of_its_key():
    a = stream(5, 3, CHANNEL_NOISE).standard_normal(8)
    b = stream(5, 3, CHANNEL_NOISE).standard_normal(8)
    np.testing.assert_array_equal(a, b)


def test_replicates_and_channels_are_distinct():
    base = stream(5, 3, CHANNEL_NOISE).standard_normal(8)
    assert not np.array_equal(base, stream(5, 4, CHANNEL_NOISE).standard_normal(8))
    assert not np.array_equal(base, stream(5, 3, CHANNEL_INITIAL).standard_normal(8))
    assert not np.array_equal(base, stream(6, 3, CHANNEL_NOISE).standard_normal(8))


def test_negative_seed_is_folded_and_negative_ids_are_rejected():
    stream(-1, 0).standard_normal(1)
    with pytest.raises(ArgumentError):
        stream(0, -1)


def test_sub_seed_is_deterministic_and_label_dependent():
    assert sub_seed(9, 7) == sub_seed(9, 7)
    assert sub_seed(9, 7) != sub_seed(9, 11)


@pytest.mark.parametrize("i, j", [(0, 1), (0, 2), (7, 8), (3, 1000)])
def test_replicate_streams_are_uncorrelated(i, j):
    a = stream(11, i).standard_normal(100_000)
    b = stream(11, j).standard_normal(100_000)
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.02


def test_channels_of_one_replicate_are_uncorrelated():
    a = stream(11, 4, CHANNEL_NOISE).standard_normal(100_000)
    b = stream(11, 4, CHANNEL_INITIAL).standard_normal(100_000)
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.02
