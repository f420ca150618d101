import random

from timcloud.topology import Topology


def random_topology(rng: random.Random, k: int, density: float) -> Topology:
    links = {
        (rx, tx)
        for rx in range(1, k + 1)
        for tx in range(1, k + 1)
        if rng.random() < density
    }
    return Topology(k, frozenset(links))


def random_topology_suite(seed: int = 20240, count: int = 200) -> list[Topology]:
    """Seeded corpus of small random topologies over three link densities."""
    rng = random.Random(seed)
    densities = [0.2, 0.5, 0.8]
    return [
        random_topology(rng, rng.randint(2, 8), densities[idx % 3])
        for idx in range(count)
    ]


def _compatible_pair(t: Topology, a: tuple[int, int], b: tuple[int, int]) -> bool:
    # independent restatement of conflict-freeness, used only as an oracle
    (i, j), (i2, j2) = a, b
    if i == i2 or j == j2:
        return False
    return not t.has_link(i, j2) and not t.has_link(i2, j)


def brute_force_max_schedule(t: Topology) -> int:
    """Plain enumeration of every conflict-free pair subset; no pruning."""
    links = t.sorted_links()
    best = 0

    def rec(start: int, chosen: list[tuple[int, int]]) -> None:
        nonlocal best
        best = max(best, len(chosen))
        for idx in range(start, len(links)):
            cand = links[idx]
            if all(_compatible_pair(t, c, cand) for c in chosen):
                chosen.append(cand)
                rec(idx + 1, chosen)
                chosen.pop()

    rec(0, [])
    return best
