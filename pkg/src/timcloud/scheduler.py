"""One-shot interference-avoidance scheduling (achievable DoF lower bounds).

A schedule is a set of (receiver, serving transmitter) pairs with distinct
receivers and distinct transmitters such that no active transmitter reaches
any other scheduled receiver. Each scheduled message is then delivered in a
single slot with zero interference, so the schedule size is an achievable
sum DoF.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .assignment import assignment_from_pairs
from .certificates import KIND_SCHEDULE, DofCertificate
from .topology import Topology

EXACT_SEARCH_LIMIT = 12


class ScheduleError(ValueError):
    pass


class ExactSearchSizeError(ScheduleError):
    """Topology too large for exhaustive scheduling; pass force=True to override."""


@dataclass(frozen=True)
class Schedule:
    k: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple(sorted((int(i), int(j)) for i, j in self.pairs))
        rxs = [i for i, _ in pairs]
        txs = [j for _, j in pairs]
        if len(set(rxs)) != len(rxs) or len(set(txs)) != len(txs):
            raise ScheduleError("schedule pairs must have distinct receivers and distinct transmitters")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def is_valid_for(self, t: Topology) -> bool:
        if self.k != t.k:
            return False
        for i, j in self.pairs:
            if not t.has_link(i, j):
                return False
        # conflict-freeness: no active transmitter reaches another scheduled receiver
        for i, j in self.pairs:
            for i2, j2 in self.pairs:
                if (i, j) != (i2, j2) and t.has_link(i, j2):
                    return False
        return True

    def certified_value(self, t: Topology) -> Fraction:
        return Fraction(len(self.pairs))

    def to_json_dict(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @staticmethod
    def from_json_dict(doc: Mapping, k: int) -> "Schedule":
        return Schedule(k, tuple((int(i), int(j)) for i, j in doc["pairs"]))


def _compatible(t: Topology, chosen: Sequence[tuple[int, int]], cand: tuple[int, int]) -> bool:
    i, j = cand
    for i2, j2 in chosen:
        if i == i2 or j == j2:
            return False
        if t.has_link(i, j2) or t.has_link(i2, j):
            return False
    return True


def schedule_exact(t: Topology, *, force: bool = False) -> Schedule:
    """Maximum-cardinality conflict-free schedule via branch and bound.

    Deterministic: among maximum schedules, returns the lexicographically
    smallest pair set. Exponential in the number of links; refuses K above
    EXACT_SEARCH_LIMIT unless forced.
    """
    if t.k > EXACT_SEARCH_LIMIT and not force:
        raise ExactSearchSizeError(
            f"exact search guarded at K <= {EXACT_SEARCH_LIMIT} (got K={t.k}); pass force=True to override"
        )
    candidates = t.sorted_links()
    best: list[tuple[int, int]] = []

    def extend(start: int, chosen: list[tuple[int, int]]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        # bound: one pair per remaining candidate receiver at most
        remaining_rx = {candidates[idx][0] for idx in range(start, len(candidates))}
        if len(chosen) + len(remaining_rx) <= len(best):
            return
        for idx in range(start, len(candidates)):
            cand = candidates[idx]
            if _compatible(t, chosen, cand):
                chosen.append(cand)
                extend(idx + 1, chosen)
                chosen.pop()

    extend(0, [])
    return Schedule(t.k, tuple(best))


def schedule_greedy(t: Topology) -> Schedule:
    """Greedy schedule: receivers in increasing index, lowest feasible transmitter."""
    chosen: list[tuple[int, int]] = []
    for rx in range(1, t.k + 1):
        for tx in sorted(t.rx_neighbors(rx)):
            if _compatible(t, chosen, (rx, tx)):
                chosen.append((rx, tx))
                break
    return Schedule(t.k, tuple(chosen))


def schedule_to_scheme(s: Schedule, t: Topology):
    """Single-slot linear scheme carrying one symbol per scheduled message."""
    from .verifier import LinearScheme  # local import: verifier depends on nothing here

    if not s.is_valid_for(t):
        raise ScheduleError("schedule is not valid for the given topology")
    m = [0] * t.k
    precoders = {}
    for i, j in s.pairs:
        m[i - 1] = 1
        precoders[(j, i)] = [[1.0]]
    assignment = assignment_from_pairs(t.k, [(i, j) for i, j in s.pairs])
    return LinearScheme(n=1, m=tuple(m), assignment=assignment, precoders=precoders)


def achievable_dof(t: Topology, *, exact_limit: int = EXACT_SEARCH_LIMIT) -> tuple[Fraction, DofCertificate]:
    """Best one-shot schedule size as an exact rational, with the schedule as evidence."""
    if t.k <= exact_limit:
        sched = schedule_exact(t)
    else:
        sched = schedule_greedy(t)
    cert = DofCertificate(KIND_SCHEDULE, Fraction(len(sched)), sched)
    if not cert.revalidate(t):
        raise ScheduleError("internal error: produced schedule failed re-validation")
    return cert.value, cert
