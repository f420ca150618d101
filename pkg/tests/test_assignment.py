import pytest

from timcloud.assignment import (
    AssignmentError,
    MessageAssignment,
    cooperation_order,
    mod3_assignment,
    validate,
)
from timcloud.topology import wyner


def _ma(*sets):
    return MessageAssignment(len(sets), tuple(frozenset(s) for s in sets))


def test_cooperation_order_examples():
    assert cooperation_order(_ma({1}, set(), {2})) == 1
    assert cooperation_order(_ma(set(), set(), set())) == 0
    assert cooperation_order(_ma({1, 2}, {2}, {3})) == 2


def test_mod3_assignment_k3():
    a = mod3_assignment(3)
    assert a.transmit_sets == (frozenset({1}), frozenset(), frozenset({2}))


def test_mod3_assignment_k6():
    a = mod3_assignment(6)
    assert [sorted(s) for s in a.transmit_sets] == [[1], [], [2], [4], [], [5]]


def test_mod3_assignment_k1():
    assert mod3_assignment(1).transmit_sets == (frozenset({1}),)


@pytest.mark.parametrize("k", range(1, 31))
def test_mod3_properties(k):
    a = mod3_assignment(k)
    assert cooperation_order(a) == 1
    t = wyner(k)
    for i, s in enumerate(a.transmit_sets, start=1):
        if s:
            (j,) = s
            assert t.has_link(i, j)
    nonempty = sum(1 for s in a.transmit_sets if s)
    assert nonempty == k - (k + 1) // 3


def test_validate_ok():
    assert validate(mod3_assignment(6), wyner(6), 1) is None


def test_validate_budget_violation():
    v = validate(_ma({1, 2}, set(), set()), wyner(3), 1)
    assert v is not None and v.message == 1


def test_validate_out_of_range():
    sets = tuple([frozenset({7})] + [frozenset()] * 5)
    v = validate(MessageAssignment(6, sets), wyner(6), 1)
    assert v is not None and v.message == 1 and "range" in v.reason


def test_validate_dimension_mismatch():
    with pytest.raises(AssignmentError):
        validate(mod3_assignment(3), wyner(4), 1)


def test_json_round_trip():
    a = mod3_assignment(5)
    assert MessageAssignment.from_json_dict(a.to_json_dict()) == a


def test_wrong_set_count_rejected():
    with pytest.raises(AssignmentError):
        MessageAssignment(3, (frozenset(), frozenset()))
