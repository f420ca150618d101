import random

import pytest
from hypothesis import given, strategies as st

from timcloud.topology import (
    CONSTANT,
    Topology,
    TopologyError,
    cyclic_wyner,
    fully_connected,
    identical_neighbor_groups,
    mixed_coherence_example,
    neighbors,
    wyner,
)

from conftest import random_topology


def test_wyner_3_matches_chain_pattern():
    t = wyner(3)
    assert t.links == {(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)}
    assert all(c == 1 for c in t.coherence.values())


def test_wyner_1_single_pair():
    assert wyner(1).links == {(1, 1)}


def test_wyner_4_hand_expanded():
    t = wyner(4)
    assert len(t.links) == 7
    assert t.rx_neighbors(4) == {3, 4}


@pytest.mark.parametrize("k", range(1, 13))
def test_wyner_link_count(k):
    assert len(wyner(k).links) == 2 * k - 1


def test_wyner_rejects_zero():
    with pytest.raises(TopologyError):
        wyner(0)


def test_cyclic_adds_wraparound_link():
    assert cyclic_wyner(3).links == wyner(3).links | {(1, 3)}
    assert cyclic_wyner(2).links == {(1, 1), (2, 1), (2, 2), (1, 2)}
    assert len(cyclic_wyner(6).links) == 12


def test_cyclic_rejects_small_k():
    with pytest.raises(TopologyError):
        cyclic_wyner(1)


@pytest.mark.parametrize("k", [1, 2, 4])
def test_fully_connected(k):
    t = fully_connected(k)
    assert len(t.links) == k * k
    for rx in range(1, k + 1):
        assert t.rx_neighbors(rx) == set(range(1, k + 1))


def test_mixed_coherence_example_links_and_coherence():
    t = mixed_coherence_example()
    assert len(t.links) == 6
    assert t.rx_neighbors(1) == {1}
    assert t.rx_neighbors(2) == {1, 2}
    assert t.rx_neighbors(3) == {1, 2, 3}
    assert t.coherence_of(3, 1) == 2
    assert t.coherence_of(3, 2) == 2
    assert t.coherence_of(2, 1) == 1
    assert t.coherence_of(2, 2) == 1


def test_neighbors_examples():
    assert neighbors(wyner(3), {2}) == {1, 2}
    assert neighbors(wyner(3), set()) == set()
    assert neighbors(wyner(6), {2, 5}) == {1, 2, 4, 5}


def test_neighbors_rejects_out_of_range():
    with pytest.raises(TopologyError):
        neighbors(wyner(3), {4})


def test_identical_neighbor_groups():
    assert identical_neighbor_groups(fully_connected(3)) == ((1, 2, 3),)
    assert identical_neighbor_groups(wyner(5)) == ((1,), (2,), (3,), (4,), (5,))
    empty = Topology(3, frozenset())
    assert identical_neighbor_groups(empty) == ((1, 2, 3),)


@given(st.integers(0, 10_000))
def test_neighbors_monotone(seed):
    rng = random.Random(seed)
    t = random_topology(rng, rng.randint(1, 7), 0.5)
    all_rx = list(range(1, t.k + 1))
    b = set(rng.sample(all_rx, rng.randint(0, t.k)))
    a = set(rng.sample(sorted(b), rng.randint(0, len(b)))) if b else set()
    assert neighbors(t, a) <= neighbors(t, b)


@given(st.integers(0, 10_000))
def test_neighborhood_size_bounded_by_degree_sum(seed):
    rng = random.Random(seed)
    t = random_topology(rng, rng.randint(1, 7), 0.5)
    a = {rx for rx in range(1, t.k + 1) if rng.random() < 0.5}
    degree_sum = sum(len(t.rx_neighbors(i)) for i in a)
    nb = neighbors(t, a)
    assert len(nb) <= degree_sum
    disjoint = degree_sum == len(nb)
    per_rx = [t.rx_neighbors(i) for i in sorted(a)]
    pairwise = all(
        not (per_rx[x] & per_rx[y]) for x in range(len(per_rx)) for y in range(x + 1, len(per_rx))
    )
    assert disjoint == pairwise


@given(st.integers(0, 10_000))
def test_json_round_trip(seed):
    rng = random.Random(seed)
    t = random_topology(rng, rng.randint(1, 7), 0.5)
    coherence = {}
    for link in t.sorted_links():
        roll = rng.random()
        if roll < 0.2:
            coherence[link] = CONSTANT
        elif roll < 0.5:
            coherence[link] = rng.randint(2, 5)
    t = Topology(t.k, t.links, coherence)
    assert Topology.from_json(t.to_json()) == t


def test_serialization_is_deterministic():
    t = Topology(3, frozenset({(3, 3), (1, 1), (2, 1)}), {(2, 1): 4})
    assert t.to_json() == '{"k":3,"links":[[1,1],[2,1],[3,3]],"coherence":[[2,1,4]]}'


def test_rejects_bad_documents():
    with pytest.raises(TopologyError):
        Topology.from_json('{"k":2,"links":[[1,1],[1,1]]}')
    with pytest.raises(TopologyError):
        Topology.from_json('{"k":2,"links":[[3,1]]}')
    with pytest.raises(TopologyError):
        Topology.from_json("not json")
    with pytest.raises(TopologyError):
        Topology(2, frozenset({(1, 1)}), {(1, 1): 0})
    with pytest.raises(TopologyError):
        Topology(2, frozenset({(1, 1)}), {(2, 2): 1})
