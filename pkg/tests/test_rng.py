from collections import Counter

import pytest

from uxagent.rng import SplitMix64, Xoshiro256StarStar

# published reference outputs of the two generators
SPLITMIX_ZERO_FIRST = 0xE220A8397B1DCDAF
XOSHIRO_1234 = [
    11520, 0, 1509978240, 1215971899390074240, 1216172134540287360,
    607988272756665600, 16172922978634559625, 8476171486693032832,
    10595114339597558777, 2904607092377533576,
]


def test_splitmix_reference_value():
    assert SplitMix64(0).next() == SPLITMIX_ZERO_FIRST


def test_xoshiro_reference_stream():
    rng = Xoshiro256StarStar.from_state([1, 2, 3, 4])
    assert [rng.next_u64() for _ in range(10)] == XOSHIRO_1234


def test_seeding_goes_through_splitmix():
    sm = SplitMix64(42)
    assert Xoshiro256StarStar(42).getstate() == tuple(sm.next() for _ in range(4))


def test_same_seed_same_stream():
    a, b = Xoshiro256StarStar(7), Xoshiro256StarStar(7)
    assert [a.next_u64() for _ in range(50)] == [b.next_u64() for _ in range(50)]


def test_zero_state_rejected():
    with pytest.raises(ValueError):
        Xoshiro256StarStar.from_state([0, 0, 0, 0])


def test_below_is_in_range_and_roughly_uniform():
    rng = Xoshiro256StarStar(3)
    counts = Counter(rng.below(5) for _ in range(5000))
    assert set(counts) == set(range(5))
    assert all(900 < c < 1100 for c in counts.values())


def test_choice_of_empty_sequence():
    with pytest.raises(IndexError):
        Xoshiro256StarStar(0).choice([])
