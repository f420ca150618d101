"""Converse DoF upper bounds with machine-checkable certificates.

Two bound families are computed:

* disjoint-neighborhood certificates: a receiver set A whose per-receiver
  neighborhoods are pairwise disjoint, together with a matching that covers
  every transmitter heard by A using receivers outside A. Such a set
  certifies sum DoF <= K - |A|.
* identical-neighborhood grouping: receivers hearing the same transmitter
  set share a single DoF; unreachable receivers get none.

Both certificates re-validate independently of the search that found them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .certificates import (
    KIND_CONDITION1,
    KIND_IDENTICAL_NEIGHBORS,
    DofCertificate,
    trivial_bound,
)
from .topology import Topology, check_receiver_set, identical_neighbor_groups, neighbors

DEFAULT_EXHAUSTIVE_LIMIT = 12


def _max_matching(txs: list[int], rxs: list[int], t: Topology) -> dict[int, int]:
    """Maximum matching of transmitters to receivers over present links.

    Kuhn's augmenting-path algorithm; deterministic given the sorted inputs.
    Returns a map transmitter -> matched receiver.
    """
    match_rx: dict[int, int] = {}  # receiver -> transmitter

    def augment(tx: int, seen: set[int]) -> bool:
        for rx in rxs:
            if rx in seen or not t.has_link(rx, tx):
                continue
            seen.add(rx)
            if rx not in match_rx or augment(match_rx[rx], seen):
                match_rx[rx] = tx
                return True
        return False

    for tx in txs:
        augment(tx, set())
    return {tx: rx for rx, tx in match_rx.items()}


def _deficient_set(txs: list[int], rxs: list[int], t: Topology, matching: dict[int, int]) -> list[int]:
    """Hall violator: transmitters reachable by alternating paths from an unmatched one."""
    unmatched = [tx for tx in txs if tx not in matching]
    frontier = set(unmatched)
    reached_rx: set[int] = set()
    matched_of = {rx: tx for tx, rx in matching.items()}
    changed = True
    while changed:
        changed = False
        for tx in sorted(frontier):
            for rx in rxs:
                if t.has_link(rx, tx) and rx not in reached_rx:
                    reached_rx.add(rx)
                    other = matched_of.get(rx)
                    if other is not None and other not in frontier:
                        frontier.add(other)
                        changed = True
    return sorted(frontier)


@dataclass(frozen=True)
class Condition1Certificate:
    """Receiver set with pairwise-disjoint neighborhoods plus a covering matching."""

    members: frozenset[int]
    matching: tuple[tuple[int, int], ...]  # (transmitter, receiver), sorted by transmitter
    bound: Fraction

    def is_valid_for(self, t: Topology) -> bool:
        try:
            members = check_receiver_set(t, self.members)
        except Exception:
            return False
        # pairwise disjoint neighborhoods
        seen: set[int] = set()
        for i in sorted(members):
            nb = t.rx_neighbors(i)
            if nb & seen:
                return False
            seen |= nb
        covered = neighbors(t, members)
        matched_tx = [tx for tx, _ in self.matching]
        matched_rx = [rx for _, rx in self.matching]
        if set(matched_tx) != set(covered) or len(set(matched_rx)) != len(matched_rx):
            return False
        for tx, rx in self.matching:
            if rx in members or not t.has_link(rx, tx):
                return False
        return True

    def certified_value(self, t: Topology) -> Fraction:
        return Fraction(t.k - len(self.members))

    def to_json_dict(self) -> dict:
        return {
            "receiver_set": sorted(self.members),
            "matching": [[tx, rx] for tx, rx in self.matching],
            "bound": {"num": self.bound.numerator, "den": self.bound.denominator},
        }


@dataclass(frozen=True)
class Condition1Failure:
    reason: str  # "overlap" or "matching"
    detail: str
    witness: tuple[int, ...]  # overlapping receiver pair, or deficient transmitter set


def check_condition1(
    t: Topology, receivers: Iterable[int]
) -> Union[Condition1Certificate, Condition1Failure]:
    """Certificate for the given receiver set, or the first clause it breaks."""
    members = check_receiver_set(t, receivers)
    ordered = sorted(members)
    seen: dict[int, int] = {}  # transmitter -> receiver that claimed it
    for i in ordered:
        for tx in sorted(t.rx_neighbors(i)):
            if tx in seen:
                return Condition1Failure(
                    "overlap",
                    f"receivers {seen[tx]} and {i} share transmitter {tx}",
                    (seen[tx], i),
                )
            seen[tx] = i
    covered = sorted(neighbors(t, members))
    complement = sorted(set(range(1, t.k + 1)) - members)
    matching = _max_matching(covered, complement, t)
    if len(matching) < len(covered):
        deficient = _deficient_set(covered, complement, t, matching)
        return Condition1Failure(
            "matching",
            f"no matching covers transmitters {deficient} with receivers outside the set",
            tuple(deficient),
        )
    return Condition1Certificate(
        members=members,
        matching=tuple(sorted(matching.items())),
        bound=Fraction(t.k - len(members)),
    )


def _certificate_for(t: Topology, members: frozenset[int]) -> DofCertificate:
    if not members:
        return trivial_bound(t)
    cert = check_condition1(t, members)
    assert isinstance(cert, Condition1Certificate)
    return DofCertificate(KIND_CONDITION1, cert.bound, cert)


def best_condition1_bound(
    t: Topology, exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> DofCertificate:
    """Tightest disjoint-neighborhood bound found.

    Exhaustive DFS over receiver subsets (index order) when K fits under the
    limit, pruning on neighborhood overlap and on the counting necessity
    |outside receivers| >= |covered transmitters|; greedy scan otherwise.
    Falls back to the trivial bound K when no nonempty set qualifies.
    """
    if t.k <= exhaustive_limit:
        best: Optional[frozenset[int]] = None

        def dfs(next_rx: int, members: list[int], covered: set[int]) -> None:
            nonlocal best
            if members and (best is None or len(members) > len(best)):
                if isinstance(check_condition1(t, members), Condition1Certificate):
                    best = frozenset(members)
            if len(members) + (t.k - next_rx + 1) <= (len(best) if best else 0):
                return
            for rx in range(next_rx, t.k + 1):
                nb = t.rx_neighbors(rx)
                if nb & covered:
                    continue
                new_covered = covered | nb
                # adding receivers only shrinks the outside while growing coverage
                if t.k - (len(members) + 1) < len(new_covered):
                    continue
                members.append(rx)
                dfs(rx + 1, members, new_covered)
                members.pop()

        dfs(1, [], set())
        return _certificate_for(t, best if best else frozenset())

    members: list[int] = []
    covered: set[int] = set()
    for rx in range(1, t.k + 1):
        nb = t.rx_neighbors(rx)
        if nb & covered:
            continue
        if isinstance(check_condition1(t, members + [rx]), Condition1Certificate):
            members.append(rx)
            covered |= nb
    return _certificate_for(t, frozenset(members))


@dataclass(frozen=True)
class NeighborhoodGrouping:
    """Receivers partitioned by identical transmitter neighborhoods."""

    groups: tuple[tuple[int, ...], ...]

    def is_valid_for(self, t: Topology) -> bool:
        return self.groups == identical_neighbor_groups(t)

    def certified_value(self, t: Topology) -> Fraction:
        reachable = sum(1 for g in self.groups if t.rx_neighbors(g[0]))
        return Fraction(reachable)

    def to_json_dict(self) -> dict:
        return {"groups": [list(g) for g in self.groups]}


def identical_neighbors_bound(t: Topology) -> DofCertificate:
    """One DoF per distinct nonempty neighborhood; unreachable receivers get none."""
    grouping = NeighborhoodGrouping(identical_neighbor_groups(t))
    return DofCertificate(KIND_IDENTICAL_NEIGHBORS, grouping.certified_value(t), grouping)


def upper_bound(t: Topology, exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> DofCertificate:
    """Minimum of the trivial, disjoint-neighborhood, and grouping bounds."""
    candidates = [
        best_condition1_bound(t, exhaustive_limit),
        identical_neighbors_bound(t),
        trivial_bound(t),
    ]
    best = min(candidates, key=lambda c: c.value)
    if not best.revalidate(t):
        raise RuntimeError("internal error: upper bound certificate failed re-validation")
    return best
