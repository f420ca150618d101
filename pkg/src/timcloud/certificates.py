"""Machine-checkable DoF certificates.

A certificate bundles an exact rational DoF bound with the evidence that
justifies it: an interference-avoidance schedule (lower bound), a
disjoint-neighborhood receiver set with a covering matching, an
identical-neighborhood grouping, or nothing (the trivial bound K).
Evidence objects know how to re-validate themselves against a topology,
so a certificate can be checked independently of how it was found.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Protocol, runtime_checkable

from .topology import Topology

KIND_SCHEDULE = "schedule"
KIND_CONDITION1 = "condition1"
KIND_IDENTICAL_NEIGHBORS = "identical-neighbors"
KIND_TRIVIAL = "trivial"


def fraction_to_json(value: Fraction) -> dict:
    return {"num": value.numerator, "den": value.denominator}


def fraction_from_json(doc: dict) -> Fraction:
    return Fraction(doc["num"], doc["den"])


@runtime_checkable
class Evidence(Protocol):
    def is_valid_for(self, t: Topology) -> bool: ...

    def certified_value(self, t: Topology) -> Fraction: ...

    def to_json_dict(self) -> dict: ...


@dataclass(frozen=True)
class DofCertificate:
    kind: str
    value: Fraction
    evidence: Optional[Evidence]

    def revalidate(self, t: Topology) -> bool:
        """True iff the evidence still certifies exactly this value on ``t``."""
        if self.kind == KIND_TRIVIAL:
            return self.value == Fraction(t.k)
        if self.evidence is None:
            return False
        return self.evidence.is_valid_for(t) and self.evidence.certified_value(t) == self.value

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": fraction_to_json(self.value),
            "evidence": self.evidence.to_json_dict() if self.evidence is not None else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))


def trivial_bound(t: Topology) -> DofCertificate:
    return DofCertificate(KIND_TRIVIAL, Fraction(t.k), None)
