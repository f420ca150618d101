"""Numerical verification of linear schemes on sampled generic channels.

Channels are drawn i.i.d. standard normal per coherence block, absent links
are identically zero, and scheme decodability is judged by the zero-forcing
criterion: the desired signal matrix has full column rank and meets the
interference column space only at the origin. Rank is numerical rank from
the SVD with a scale-aware threshold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np

from .assignment import MessageAssignment
from .topology import CONSTANT, Topology

RANK_TOL_FACTOR = 1e-10


class SchemeError(ValueError):
    pass


def numerical_rank(mat: np.ndarray) -> int:
    """Count of singular values above max(rows, cols) * s_max * 1e-10."""
    if mat.size == 0:
        return 0
    s = np.linalg.svd(mat, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    tol = max(mat.shape) * s[0] * RANK_TOL_FACTOR
    return int(np.sum(s > tol))


@dataclass(frozen=True)
class LinearScheme:
    """Block-length-n linear precoding scheme.

    ``m[i-1]`` is the number of symbols carried for message i; ``precoders``
    maps (transmitter, message) to the n x m_i precoding matrix, and exists
    exactly for transmitters in the message's transmit set when m_i > 0.
    """

    n: int
    m: tuple[int, ...]
    assignment: MessageAssignment
    precoders: Mapping[tuple[int, int], np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise SchemeError(f"block length must be positive, got {self.n}")
        m = tuple(int(x) for x in self.m)
        if len(m) != self.assignment.k or any(x < 0 for x in m):
            raise SchemeError("m must list one nonnegative symbol count per message")
        mats = {}
        for (tx, msg), mat in self.precoders.items():
            arr = np.asarray(mat)
            if arr.shape != (self.n, m[msg - 1]):
                raise SchemeError(
                    f"precoder for transmitter {tx}, message {msg} has shape {arr.shape}, "
                    f"expected ({self.n}, {m[msg - 1]})"
                )
            arr = arr.astype(complex) if np.iscomplexobj(arr) else arr.astype(float)
            arr.setflags(write=False)
            mats[(int(tx), int(msg))] = arr
        expected = {
            (tx, msg)
            for msg in range(1, self.assignment.k + 1)
            if m[msg - 1] > 0
            for tx in self.assignment.transmit_set(msg)
        }
        if set(mats) != expected:
            raise SchemeError(
                f"precoders must exist exactly for active (transmitter, message) pairs; "
                f"missing {sorted(expected - set(mats))}, extra {sorted(set(mats) - expected)}"
            )
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "precoders", mats)

    @property
    def k(self) -> int:
        return self.assignment.k

    def to_json_dict(self) -> dict:
        precoders = []
        for (tx, msg), mat in sorted(self.precoders.items()):
            if np.iscomplexobj(mat):
                rows = [[[float(v.real), float(v.imag)] for v in row] for row in mat]
            else:
                rows = [[float(v) for v in row] for row in mat]
            precoders.append({"tx": tx, "msg": msg, "matrix": rows})
        return {
            "n": self.n,
            "m": list(self.m),
            "transmit_sets": [sorted(s) for s in self.assignment.transmit_sets],
            "precoders": precoders,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @staticmethod
    def from_json_dict(doc: Mapping) -> "LinearScheme":
        try:
            m = tuple(int(x) for x in doc["m"])
            sets = tuple(frozenset(int(j) for j in s) for s in doc["transmit_sets"])
            assignment = MessageAssignment(len(m), sets)
            precoders = {}
            for entry in doc["precoders"]:
                rows = []
                for row in entry["matrix"]:
                    rows.append([complex(v[0], v[1]) if isinstance(v, (list, tuple)) else float(v) for v in row])
                arr = np.array(rows) if rows and rows[0] else np.zeros((int(doc["n"]), 0))
                precoders[(int(entry["tx"]), int(entry["msg"]))] = arr
            return LinearScheme(int(doc["n"]), m, assignment, precoders)
        except (KeyError, TypeError, IndexError) as exc:
            raise SchemeError(f"malformed scheme document: {exc}") from exc

    @staticmethod
    def from_json(text: str) -> "LinearScheme":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemeError(f"invalid JSON: {exc}") from exc
        return LinearScheme.from_json_dict(doc)


@dataclass(frozen=True)
class ChannelRealization:
    """Per-link coefficient sequences, constant within coherence blocks."""

    topology: Topology
    n: int
    seed: int
    coefficients: Mapping[tuple[int, int], np.ndarray]

    def diag(self, rx: int, tx: int) -> np.ndarray:
        """Channel of link (rx, tx) as an n x n diagonal matrix; zero if absent."""
        seq = self.coefficients.get((rx, tx))
        if seq is None:
            return np.zeros((self.n, self.n))
        return np.diag(seq)


def sample_channel(t: Topology, n: int, seed: int) -> ChannelRealization:
    """Draw one realization, i.i.d. standard normal per coherence block.

    Deterministic in (t, n, seed); links are processed in sorted order.
    Exact zeros are redrawn (a probability-zero event kept out anyway).
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    rng = np.random.default_rng(seed)
    coeffs = {}
    for rx, tx in t.sorted_links():
        c = t.coherence_of(rx, tx)
        block = n if c == CONSTANT else int(c)
        seq = np.empty(n)
        for start in range(0, n, block):
            v = rng.standard_normal()
            while v == 0.0:
                v = rng.standard_normal()
            seq[start : start + block] = v
        seq.setflags(write=False)
        coeffs[(rx, tx)] = seq
    return ChannelRealization(t, n, seed, coeffs)


def footprint(s: LinearScheme, h: ChannelRealization, message: int, rx: int) -> np.ndarray:
    """Contribution of one message at one receiver over the block.

    The n x m_i sum of diag(channel) @ precoder over the message's
    transmitters that reach the receiver; zero matrix when none do.
    """
    if s.k != h.topology.k or s.n != h.n:
        raise SchemeError(
            f"scheme (k={s.k}, n={s.n}) does not match realization (k={h.topology.k}, n={h.n})"
        )
    mi = s.m[message - 1]
    out = np.zeros((s.n, mi), dtype=complex if any(np.iscomplexobj(v) for v in s.precoders.values()) else float)
    for tx in sorted(s.assignment.transmit_set(message)):
        if h.topology.has_link(rx, tx) and mi > 0:
            out = out + h.diag(rx, tx) @ s.precoders[(tx, message)]
    return out


@dataclass(frozen=True)
class DecodingResult:
    decodable: tuple[bool, ...]
    dof: Fraction

    def to_json_dict(self) -> dict:
        return {
            "decodable": list(self.decodable),
            "dof": {"num": self.dof.numerator, "den": self.dof.denominator},
        }


def zf_decodability(t: Topology, s: LinearScheme, h: ChannelRealization) -> DecodingResult:
    """Per-receiver zero-forcing decodability flags and the achieved DoF.

    Receiver i decodes iff its desired matrix has full column rank m_i and
    stacking the interference does not lower the combined rank below
    m_i + rank(interference). Messages with m_i = 0 are vacuously decodable
    and contribute nothing.
    """
    if t.k != h.topology.k or t.links != h.topology.links:
        raise SchemeError("realization was sampled on a different topology")
    flags = []
    delivered = 0
    for i in range(1, t.k + 1):
        mi = s.m[i - 1]
        if mi == 0:
            flags.append(True)
            continue
        desired = footprint(s, h, i, i)
        others = [footprint(s, h, j, i) for j in range(1, t.k + 1) if j != i and s.m[j - 1] > 0]
        interference = np.hstack(others) if others else np.zeros((s.n, 0))
        ok = (
            numerical_rank(desired) == mi
            and numerical_rank(np.hstack([desired, interference]))
            == mi + numerical_rank(interference)
        )
        flags.append(bool(ok))
        if ok:
            delivered += mi
    return DecodingResult(tuple(flags), Fraction(delivered, s.n))


@dataclass(frozen=True)
class MonteCarloVerdict:
    trials: int
    seed: int
    decodable: tuple[bool, ...]  # flags from the first trial
    dof: Fraction
    generic: bool
    dissenting_seeds: tuple[int, ...]

    def all_active_decodable(self, s: LinearScheme) -> bool:
        return self.generic and all(
            f for f, mi in zip(self.decodable, s.m) if mi > 0
        )

    def to_json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "decodable": list(self.decodable),
            "dof": {"num": self.dof.numerator, "den": self.dof.denominator},
            "generic": self.generic,
            "dissenting_seeds": list(self.dissenting_seeds),
        }


def monte_carlo_dof(t: Topology, s: LinearScheme, trials: int = 50, seed: int = 0) -> MonteCarloVerdict:
    """Repeat zf_decodability over independent realizations (seed + trial index)."""
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    first: Optional[DecodingResult] = None
    dissent = []
    for trial in range(trials):
        h = sample_channel(t, s.n, seed + trial)
        res = zf_decodability(t, s, h)
        if first is None:
            first = res
        elif res != first:
            dissent.append(seed + trial)
    assert first is not None
    return MonteCarloVerdict(
        trials=trials,
        seed=seed,
        decodable=first.decodable,
        dof=first.dof,
        generic=not dissent,
        dissenting_seeds=tuple(dissent),
    )


@dataclass(frozen=True)
class RankTrialReport:
    message: int
    trials: int
    seed: int
    hypothesis_met: int
    passes: int
    failures: int
    counterexample_seeds: tuple[int, ...]


def check_interference_rank(
    t: Topology,
    s: LinearScheme,
    message: int,
    trials: int = 50,
    seed: int = 0,
) -> RankTrialReport:
    """Monte Carlo check that a chain-interior message's interference reveals it.

    Restricted to chain (or cyclic-chain) topologies with the message carried
    only by its own and the preceding transmitter. Per trial: when the desired
    matrix at the intended receiver has full column rank, the side-by-side
    stack of the message's footprints at the two flanking receivers must have
    rank at least m_i. Trials where the full-rank hypothesis fails are counted
    separately, not asserted.
    """
    i = message
    if not (3 <= i <= t.k - 1):
        raise SchemeError(f"message index must satisfy 3 <= i <= K-1, got i={i}, K={t.k}")
    expected_chain = {(r, r) for r in range(1, t.k + 1)} | {(r, r - 1) for r in range(2, t.k + 1)}
    if not expected_chain <= t.links:
        raise SchemeError("interference rank check requires the chain connectivity pattern")
    tset = s.assignment.transmit_set(i)
    if not tset <= {i - 1, i}:
        raise SchemeError(f"transmit set of message {i} must lie within {{{i - 1}, {i}}}, got {sorted(tset)}")
    if s.m[i - 1] < 1:
        raise SchemeError(f"message {i} carries no symbols")

    mi = s.m[i - 1]
    hypothesis_met = passes = failures = 0
    bad: list[int] = []
    for trial in range(trials):
        h = sample_channel(t, s.n, seed + trial)
        desired = footprint(s, h, i, i)
        if numerical_rank(desired) != mi:
            continue
        hypothesis_met += 1
        stack = np.hstack([footprint(s, h, i, i - 1), footprint(s, h, i, i + 1)])
        if numerical_rank(stack) >= mi:
            passes += 1
        else:
            failures += 1
            bad.append(seed + trial)
    return RankTrialReport(
        message=i,
        trials=trials,
        seed=seed,
        hypothesis_met=hypothesis_met,
        passes=passes,
        failures=failures,
        counterexample_seeds=tuple(bad),
    )


def random_full_rank_precoder(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Standard normal n x m matrix, redrawn until full column rank."""
    while True:
        mat = rng.standard_normal((n, m))
        if numerical_rank(mat) == min(n, m):
            return mat


def two_slot_repetition_scheme() -> LinearScheme:
    """Two-slot scheme for the mixed-coherence example topology.

    Slot 1: all three transmitters send; slot 2: transmitters 1 and 2 repeat.
    The slow links toward receiver 3 stay constant across the two slots, so
    the repeated interference cancels there while receiver 2 collects two
    independent equations.
    """
    assignment = MessageAssignment(3, (frozenset({1}), frozenset({2}), frozenset({3})))
    precoders = {
        (1, 1): [[1.0], [1.0]],
        (2, 2): [[1.0], [1.0]],
        (3, 3): [[1.0], [0.0]],
    }
    return LinearScheme(n=2, m=(1, 1, 1), assignment=assignment, precoders=precoders)
