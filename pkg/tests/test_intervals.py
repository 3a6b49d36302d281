"""Interval sets against a pointwise oracle.

Segment bounds in the generated data stay below 15, so membership over
``range(30)`` determines the set on the window and position 29 already
tells bounded from unbounded apart.
"""

import pytest
from hypothesis import given, strategies as st

from latwb.errors import StructureError
from latwb.intervals import EMPTY_SET, FULL_SET, IntervalSet

WINDOW = range(30)


segments = st.lists(
    st.tuples(st.integers(0, 12), st.one_of(st.none(), st.integers(0, 14))),
    max_size=4,
)
interval_sets = segments.map(lambda segs: IntervalSet.of(*segs))


def window_set(s: IntervalSet) -> frozenset:
    return frozenset(n for n in WINDOW if n in s)


def test_of_normalizes():
    assert IntervalSet.of((3, 5), (5, 7), (1, 2)) == IntervalSet.of((1, 2), (3, 7))
    assert IntervalSet.of((4, 4), (7, 3)) == EMPTY_SET
    assert IntervalSet.of((0, 3), (2, None), (5, 9)) == IntervalSet.tail(0)
    assert IntervalSet.of((0, None)) == FULL_SET


def test_direct_construction_requires_canonical_segments():
    with pytest.raises(StructureError):
        IntervalSet(((3, 5), (0, 1)))
    with pytest.raises(StructureError):
        IntervalSet(((0, 2), (2, 4)))
    with pytest.raises(StructureError):
        IntervalSet.of((-1, 4))


def test_stock_constructors():
    assert window_set(IntervalSet.point(3)) == {3}
    assert window_set(IntervalSet.initial(4)) == {0, 1, 2, 3}
    assert IntervalSet.initial(0) == EMPTY_SET
    assert 100 in IntervalSet.tail(7) and 6 not in IntervalSet.tail(7)
    assert not EMPTY_SET and FULL_SET


def test_extrema():
    s = IntervalSet.of((2, 4), (9, 11))
    assert s.min_element() == 2 and s.max_element() == 10
    with pytest.raises(StructureError):
        EMPTY_SET.min_element()
    with pytest.raises(StructureError):
        IntervalSet.tail(0).max_element()
    assert IntervalSet.tail(5).min_element() == 5


def test_str_and_data_round_trip():
    s = IntervalSet.of((0, 2), (5, None))
    assert str(s) == "[0,2) u [5,w)"
    assert str(EMPTY_SET) == "{}"
    assert IntervalSet.from_data(s.to_data()) == s


@given(interval_sets, interval_sets)
def test_boolean_operations_match_the_pointwise_oracle(a, b):
    assert window_set(a | b) == window_set(a) | window_set(b)
    assert window_set(a & b) == window_set(a) & window_set(b)
    assert window_set(a - b) == window_set(a) - window_set(b)
    assert window_set(a.complement()) == frozenset(WINDOW) - window_set(a)


@given(interval_sets, interval_sets)
def test_leq_is_window_containment(a, b):
    assert (a <= b) == (window_set(a) <= window_set(b))


@given(interval_sets)
def test_complement_involution_and_boundedness(a):
    assert a.complement().complement() == a
    assert a.is_bounded() == (29 not in a)
    # the set and its complement split the naturals, so exactly one holds a tail
    assert a.complement().is_bounded() != a.is_bounded()


@given(interval_sets, interval_sets)
def test_equality_agrees_with_set_equality(a, b):
    same = window_set(a) == window_set(b)
    assert (a == b) == same
    if same:
        assert hash(a) == hash(b)
