from fractions import Fraction

import pytest

from timcloud.scheduler import (
    ExactSearchSizeError,
    Schedule,
    ScheduleError,
    achievable_dof,
    schedule_exact,
    schedule_greedy,
    schedule_to_scheme,
)
from timcloud.topology import Topology, cyclic_wyner, fully_connected, wyner

from conftest import brute_force_max_schedule, random_topology_suite


def test_exact_wyner3():
    assert schedule_exact(wyner(3)).pairs == ((1, 1), (3, 2))


def test_exact_wyner6_size():
    assert len(schedule_exact(wyner(6))) == 4


def test_exact_empty_topology():
    assert schedule_exact(Topology(4, frozenset())).pairs == ()


def test_exact_size_guard():
    with pytest.raises(ExactSearchSizeError):
        schedule_exact(wyner(13))
    # override permitted
    assert len(schedule_exact(wyner(13), force=True)) == 13 - (13 + 1) // 3


def test_exact_is_deterministic():
    t = wyner(7)
    assert schedule_exact(t).pairs == schedule_exact(t).pairs


def test_greedy_wyner30():
    assert len(schedule_greedy(wyner(30))) == 20


def test_greedy_fully_connected():
    assert len(schedule_greedy(fully_connected(5))) == 1


def test_greedy_wyner4():
    assert schedule_greedy(wyner(4)).pairs == ((1, 1), (3, 2), (4, 4))


def test_greedy_matches_exact_on_wyner_prefixes():
    for k in range(1, 13):
        assert len(schedule_greedy(wyner(k))) == len(schedule_exact(wyner(k)))


def test_schedule_validity_invariant():
    for t in [wyner(8), cyclic_wyner(9), fully_connected(4)]:
        for s in [schedule_exact(t), schedule_greedy(t)]:
            assert s.is_valid_for(t)


def test_schedule_rejects_duplicates():
    with pytest.raises(ScheduleError):
        Schedule(3, ((1, 1), (1, 2)))
    with pytest.raises(ScheduleError):
        Schedule(3, ((1, 1), (2, 1)))


def test_schedule_to_scheme_wyner3():
    t = wyner(3)
    scheme = schedule_to_scheme(schedule_exact(t), t)
    assert scheme.n == 1
    assert scheme.m == (1, 0, 1)
    assert scheme.assignment.transmit_set(1) == {1}
    assert scheme.assignment.transmit_set(2) == frozenset()
    assert scheme.assignment.transmit_set(3) == {2}


def test_schedule_to_scheme_empty():
    t = wyner(2)
    scheme = schedule_to_scheme(Schedule(2, ()), t)
    assert scheme.m == (0, 0)


def test_schedule_to_scheme_rejects_invalid():
    with pytest.raises(ScheduleError):
        schedule_to_scheme(Schedule(3, ((1, 2),)), wyner(3))  # link (1,2) absent


def test_achievable_dof_examples():
    assert achievable_dof(wyner(3))[0] == 2
    assert achievable_dof(wyner(30))[0] == 20
    assert achievable_dof(fully_connected(8))[0] == 1


def test_achievable_dof_certificate_revalidates():
    for t in [wyner(6), fully_connected(5), cyclic_wyner(6), wyner(20)]:
        value, cert = achievable_dof(t)
        assert cert.kind == "schedule"
        assert cert.value == value
        assert cert.revalidate(t)


@pytest.mark.parametrize("k", range(1, 13))
def test_wyner_family_closed_form(k):
    assert achievable_dof(wyner(k))[0] == k - (k + 1) // 3


@pytest.mark.parametrize("k", [3, 6, 9, 12])
def test_cyclic_family(k):
    assert achievable_dof(cyclic_wyner(k))[0] == Fraction(2 * k, 3)


def test_oracle_equivalence_sample():
    # the full 200-topology sweep lives in the acceptance suite
    for t in random_topology_suite(seed=7, count=30):
        exact = len(schedule_exact(t))
        assert exact == brute_force_max_schedule(t)
        assert len(schedule_greedy(t)) <= exact


def test_schedule_json_round_trip():
    s = schedule_exact(wyner(6))
    assert Schedule.from_json_dict(s.to_json_dict(), 6) == s
