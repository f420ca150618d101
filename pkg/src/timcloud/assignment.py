"""Message-to-transmitter assignments under a cooperation budget.

Each message i has a transmit set: the transmitters allowed to carry it.
An empty set means the message is simply not transmitted. The cooperation
order of an assignment is the largest transmit-set size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .topology import Topology


class AssignmentError(ValueError):
    pass


@dataclass(frozen=True)
class MessageAssignment:
    k: int
    transmit_sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise AssignmentError(f"k must be a positive integer, got {self.k!r}")
        sets = tuple(frozenset(int(j) for j in s) for s in self.transmit_sets)
        if len(sets) != self.k:
            raise AssignmentError(f"expected {self.k} transmit sets, got {len(sets)}")
        object.__setattr__(self, "transmit_sets", sets)

    def transmit_set(self, message: int) -> frozenset[int]:
        return self.transmit_sets[message - 1]

    def to_json_dict(self) -> dict:
        return {"k": self.k, "transmit_sets": [sorted(s) for s in self.transmit_sets]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @staticmethod
    def from_json_dict(doc: Mapping) -> "MessageAssignment":
        try:
            return MessageAssignment(doc["k"], tuple(frozenset(s) for s in doc["transmit_sets"]))
        except (KeyError, TypeError) as exc:
            raise AssignmentError(f"malformed assignment document: {exc}") from exc


def cooperation_order(a: MessageAssignment) -> int:
    """Maximum transmit-set size; 0 iff nothing is transmitted."""
    return max((len(s) for s in a.transmit_sets), default=0)


def mod3_assignment(k: int) -> MessageAssignment:
    """Single-transmitter assignment serving two of every three consecutive messages.

    Message i goes to transmitter i when i mod 3 = 1, to transmitter i-1 when
    i mod 3 = 0, and is dropped when i mod 3 = 2.
    """
    if k < 1:
        raise AssignmentError(f"mod3_assignment requires k >= 1, got {k}")
    sets = []
    for i in range(1, k + 1):
        if i % 3 == 1:
            sets.append(frozenset({i}))
        elif i % 3 == 0:
            sets.append(frozenset({i - 1}))
        else:
            sets.append(frozenset())
    return MessageAssignment(k, tuple(sets))


@dataclass(frozen=True)
class AssignmentViolation:
    message: int
    reason: str


def validate(a: MessageAssignment, t: Topology, n_max: int) -> Optional[AssignmentViolation]:
    """None when the assignment fits the topology size and cooperation budget.

    Otherwise a violation naming the first offending message index.
    """
    if a.k != t.k:
        raise AssignmentError(f"assignment has k={a.k} but topology has k={t.k}")
    if n_max < 1:
        raise AssignmentError(f"n_max must be positive, got {n_max}")
    for i, s in enumerate(a.transmit_sets, start=1):
        for j in sorted(s):
            if not (1 <= j <= a.k):
                return AssignmentViolation(i, f"transmitter index {j} out of range 1..{a.k}")
        if len(s) > n_max:
            return AssignmentViolation(i, f"transmit set has size {len(s)} > cooperation budget {n_max}")
    return None


def assignment_from_pairs(k: int, pairs: Iterable[tuple[int, int]]) -> MessageAssignment:
    """Assignment where each (message, transmitter) pair gives a singleton transmit set."""
    sets: list[frozenset[int]] = [frozenset()] * k
    for i, j in pairs:
        sets[i - 1] = frozenset({j})
    return MessageAssignment(k, tuple(sets))
