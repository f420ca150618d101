"""Bipartite network topologies: generation, queries, JSON serialization.

A topology is a bipartite connectivity pattern between K transmitters and
K receivers (both 1-indexed), with an optional per-link coherence time.
A coherence time of c means the channel coefficient on that link is redrawn
at slots 1, c+1, 2c+1, ...; the string "constant" means a single draw for
the whole block.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

CONSTANT = "constant"

Link = tuple[int, int]  # (receiver, transmitter)
CoherenceTime = Union[int, str]


class TopologyError(ValueError):
    """Raised for malformed topologies or bad generator parameters."""


def _check_coherence_value(c: CoherenceTime) -> CoherenceTime:
    if c == CONSTANT:
        return CONSTANT
    if isinstance(c, bool) or not isinstance(c, int) or c < 1:
        raise TopologyError(f"coherence time must be a positive integer or {CONSTANT!r}, got {c!r}")
    return c


@dataclass(frozen=True)
class Topology:
    """Immutable bipartite connectivity with per-link coherence times.

    ``links`` holds (receiver, transmitter) pairs; indices are 1-based and
    must lie in 1..k. ``coherence`` is defined for exactly the links present
    (default 1).
    """

    k: int
    links: frozenset[Link]
    coherence: Mapping[Link, CoherenceTime] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise TopologyError(f"k must be a positive integer, got {self.k!r}")
        links = frozenset((int(rx), int(tx)) for rx, tx in self.links)
        for rx, tx in links:
            if not (1 <= rx <= self.k and 1 <= tx <= self.k):
                raise TopologyError(f"link ({rx}, {tx}) out of range 1..{self.k}")
        coh = dict(self.coherence) if self.coherence else {}
        for link, c in coh.items():
            link = (int(link[0]), int(link[1]))
            if link not in links:
                raise TopologyError(f"coherence given for absent link {link}")
        full = {link: _check_coherence_value(coh.get(link, 1)) for link in links}
        object.__setattr__(self, "links", links)
        object.__setattr__(self, "coherence", full)

    def __hash__(self) -> int:
        return hash((self.k, self.links, tuple(sorted(self.coherence.items(), key=lambda kv: kv[0]))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Topology):
            return NotImplemented
        return self.k == other.k and self.links == other.links and dict(self.coherence) == dict(other.coherence)

    def has_link(self, rx: int, tx: int) -> bool:
        return (rx, tx) in self.links

    def coherence_of(self, rx: int, tx: int) -> CoherenceTime:
        return self.coherence[(rx, tx)]

    def rx_neighbors(self, rx: int) -> frozenset[int]:
        """Transmitters heard by receiver ``rx``."""
        return frozenset(tx for r, tx in self.links if r == rx)

    def sorted_links(self) -> list[Link]:
        return sorted(self.links)

    def with_unit_coherence(self) -> "Topology":
        """Same connectivity with every coherence time reset to 1."""
        return Topology(self.k, self.links)

    # -- JSON ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        doc: dict = {"k": self.k, "links": [list(l) for l in self.sorted_links()]}
        extra = sorted((rx, tx, c) for (rx, tx), c in self.coherence.items() if c != 1)
        if extra:
            doc["coherence"] = [[rx, tx, c] for rx, tx, c in extra]
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @staticmethod
    def from_json_dict(doc: Mapping) -> "Topology":
        try:
            k = doc["k"]
            links = [(int(rx), int(tx)) for rx, tx in doc["links"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise TopologyError(f"malformed topology document: {exc}") from exc
        if len(set(links)) != len(links):
            raise TopologyError("duplicate links in topology document")
        coherence = {}
        for entry in doc.get("coherence", []):
            try:
                rx, tx, c = entry
            except (TypeError, ValueError) as exc:
                raise TopologyError(f"malformed coherence entry {entry!r}") from exc
            coherence[(int(rx), int(tx))] = c if c == CONSTANT else int(c)
        return Topology(k, frozenset(links), coherence)

    @staticmethod
    def from_json(text: str) -> "Topology":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TopologyError(f"invalid JSON: {exc}") from exc
        return Topology.from_json_dict(doc)


# -- generators ----------------------------------------------------------


def wyner(k: int) -> Topology:
    """Chain network: receiver i hears transmitters i and i-1."""
    if k < 1:
        raise TopologyError(f"wyner requires k >= 1, got {k}")
    links = {(i, i) for i in range(1, k + 1)} | {(i, i - 1) for i in range(2, k + 1)}
    return Topology(k, frozenset(links))


def cyclic_wyner(k: int) -> Topology:
    """Chain network closed into a cycle: adds the link from transmitter k to receiver 1."""
    if k < 2:
        raise TopologyError(f"cyclic_wyner requires k >= 2, got {k}")
    base = wyner(k)
    return Topology(k, base.links | {(1, k)})


def fully_connected(k: int) -> Topology:
    """Every transmitter reaches every receiver."""
    if k < 1:
        raise TopologyError(f"fully_connected requires k >= 1, got {k}")
    links = {(i, j) for i in range(1, k + 1) for j in range(1, k + 1)}
    return Topology(k, frozenset(links))


def mixed_coherence_example() -> Topology:
    """Three-user triangular network with unequal coherence times.

    Receiver 1 hears transmitter 1 only; receiver 2 hears transmitters 1-2
    with fast-fading links; receiver 3 hears all three, with its cross links
    from transmitters 1 and 2 staying constant for two slots.
    """
    links = {(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)}
    coherence = {(3, 1): 2, (3, 2): 2}
    return Topology(3, frozenset(links), coherence)


# -- queries ---------------------------------------------------------------


def check_receiver_set(t: Topology, receivers: Iterable[int]) -> frozenset[int]:
    members = frozenset(int(i) for i in receivers)
    for i in members:
        if not (1 <= i <= t.k):
            raise TopologyError(f"receiver index {i} out of range 1..{t.k}")
    return members


def neighbors(t: Topology, receivers: Iterable[int]) -> frozenset[int]:
    """Union of the transmitter neighborhoods of the given receivers."""
    members = check_receiver_set(t, receivers)
    out: set[int] = set()
    for rx, tx in t.links:
        if rx in members:
            out.add(tx)
    return frozenset(out)


def identical_neighbor_groups(t: Topology) -> tuple[tuple[int, ...], ...]:
    """Partition receivers by equal neighborhoods, groups ordered by smallest member."""
    by_nbhd: dict[frozenset[int], list[int]] = {}
    for rx in range(1, t.k + 1):
        by_nbhd.setdefault(t.rx_neighbors(rx), []).append(rx)
    groups = sorted((tuple(sorted(g)) for g in by_nbhd.values()), key=lambda g: g[0])
    return tuple(groups)
