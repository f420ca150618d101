from fractions import Fraction

from timcloud.bounds import (
    Condition1Certificate,
    Condition1Failure,
    best_condition1_bound,
    check_condition1,
    identical_neighbors_bound,
    upper_bound,
)
from timcloud.scheduler import achievable_dof
from timcloud.topology import Topology, cyclic_wyner, fully_connected, wyner

from conftest import random_topology_suite


def test_check_condition1_wyner6():
    cert = check_condition1(wyner(6), {2, 5})
    assert isinstance(cert, Condition1Certificate)
    assert cert.bound == 4
    assert cert.matching == ((1, 1), (2, 3), (4, 4), (5, 6))
    assert cert.is_valid_for(wyner(6))


def test_check_condition1_empty_set():
    cert = check_condition1(wyner(4), set())
    assert isinstance(cert, Condition1Certificate)
    assert cert.bound == 4
    assert cert.matching == ()


def test_check_condition1_overlap_failure():
    fail = check_condition1(wyner(3), {1, 2})
    assert isinstance(fail, Condition1Failure)
    assert fail.reason == "overlap"
    assert fail.witness == (1, 2)


def test_check_condition1_matching_failure():
    fail = check_condition1(fully_connected(3), {1})
    assert isinstance(fail, Condition1Failure)
    assert fail.reason == "matching"
    assert fail.witness  # deficient transmitter set as witness
    assert set(fail.witness) <= {1, 2, 3}


def test_matching_necessity():
    for t in random_topology_suite(seed=3, count=40):
        for rx in range(1, t.k + 1):
            res = check_condition1(t, {rx})
            if isinstance(res, Condition1Certificate):
                assert t.k - 1 >= len(t.rx_neighbors(rx))


def test_best_condition1_wyner6():
    cert = best_condition1_bound(wyner(6))
    assert cert.kind == "condition1"
    assert cert.value == 4
    assert cert.revalidate(wyner(6))


def test_best_condition1_wyner30_greedy():
    cert = best_condition1_bound(wyner(30))
    assert cert.value == 20
    assert cert.revalidate(wyner(30))


def test_best_condition1_fully_connected_trivial():
    cert = best_condition1_bound(fully_connected(5))
    assert cert.kind == "trivial"
    assert cert.value == 5


def test_exhaustive_at_least_as_tight_as_greedy():
    for t in random_topology_suite(seed=11, count=40):
        exhaustive = best_condition1_bound(t, exhaustive_limit=8)
        greedy = best_condition1_bound(t, exhaustive_limit=0)
        assert exhaustive.value <= greedy.value
        assert exhaustive.revalidate(t) and greedy.revalidate(t)


def test_identical_neighbors_bound():
    assert identical_neighbors_bound(fully_connected(7)).value == 1
    assert identical_neighbors_bound(wyner(5)).value == 5
    assert identical_neighbors_bound(Topology(2, frozenset())).value == 0


def test_identical_neighbors_evidence_revalidates():
    for t in [fully_connected(4), wyner(6), Topology(3, frozenset({(1, 1), (2, 1)}))]:
        cert = identical_neighbors_bound(t)
        assert cert.revalidate(t)


def test_upper_bound_examples():
    cert = upper_bound(wyner(6))
    assert cert.value == 4 and cert.kind == "condition1"
    cert = upper_bound(fully_connected(6))
    assert cert.value == 1 and cert.kind == "identical-neighbors"
    assert upper_bound(wyner(1)).value == 1


def test_wyner_tightness_desk_scale():
    for k in range(3, 31, 3):
        t = wyner(k)
        assert upper_bound(t).value == achievable_dof(t)[0] == Fraction(2 * k, 3)


def test_cyclic_invariance():
    for k in (3, 6, 9, 12):
        assert upper_bound(cyclic_wyner(k)).value == upper_bound(wyner(k)).value


def test_soundness_sandwich_sample():
    for t in random_topology_suite(seed=5, count=40):
        lower, lower_cert = achievable_dof(t)
        upper = upper_bound(t)
        assert lower <= upper.value
        assert lower_cert.revalidate(t)
        assert upper.revalidate(t)


def test_certificate_json_shape():
    doc = upper_bound(wyner(6)).to_json_dict()
    assert doc["kind"] == "condition1"
    assert doc["value"] == {"num": 4, "den": 1}
    assert "receiver_set" in doc["evidence"] and "matching" in doc["evidence"]
