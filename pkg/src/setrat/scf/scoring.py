"""Rank-based rules: scoring rules, scoring runoffs and omninomination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from ..errors import NonLinearPreference, PreconditionError
from ..prefs import Profile, restrict_order


def score_vector(values: Sequence) -> tuple:
    """Validate a score vector: non-increasing, and strictly decreasing overall when length > 1."""
    s = tuple(Fraction(v) for v in values)
    if not s:
        raise ValueError("score vector must be nonempty")
    if any(a < b for a, b in zip(s, s[1:])):
        raise ValueError(f"score vector must be non-increasing: {s}")
    if len(s) > 1 and not s[0] > s[-1]:
        raise ValueError(f"score vector needs first score above last: {s}")
    return s


@dataclass(frozen=True)
class ScoreFamily:
    """Score vectors per feasible-set size; sizes are independent of each other."""

    name: str
    vector_for: Callable[[int], tuple]

    def __call__(self, k: int) -> tuple:
        return self.vector_for(k)

    @classmethod
    def custom(cls, vectors: Mapping[int, Sequence], name="scoring") -> "ScoreFamily":
        table = {int(k): score_vector(v) for k, v in vectors.items()}
        for k, v in table.items():
            if len(v) != k:
                raise ValueError(f"score vector for size {k} has length {len(v)}")

        def lookup(k):
            if k == 1:
                return table.get(1, (Fraction(0),))
            try:
                return table[k]
            except KeyError:
                raise PreconditionError(f"score family {name!r} undefined for size {k}") from None

        return cls(name, lookup)


def _plurality(k):
    return tuple(Fraction(int(i == 0)) for i in range(k))


def _borda(k):
    return tuple(Fraction(k - 1 - i) for i in range(k))


def _antiplurality(k):
    return tuple(Fraction(int(i < k - 1)) for i in range(k)) if k > 1 else (Fraction(1),)


PLURALITY = ScoreFamily("plurality", _plurality)
BORDA = ScoreFamily("borda", _borda)
ANTIPLURALITY = ScoreFamily("antiplurality", _antiplurality)


def linear_positions(profile: Profile, idx: Sequence[int]) -> np.ndarray:
    """Per-entry rank positions (0 = top) of the alternatives ``idx``.

    Raises NonLinearPreference when some ballot ties two of them.
    """
    r = profile.ranks[:, idx]
    if len(idx) > 1:
        srt = np.sort(r, axis=1)
        ties = np.any(srt[:, 1:] == srt[:, :-1], axis=1)
        if np.any(ties):
            e = int(np.flatnonzero(ties)[0])
            names = [profile.universe.names[i] for i in idx]
            raise NonLinearPreference(restrict_order(profile.entries[e][1], names))
    return np.argsort(np.argsort(r, axis=1, kind="stable"), axis=1, kind="stable")


def scores(profile: Profile, feasible, family) -> dict:
    """Cumulative score of each member of ``feasible``.

    ``family`` is a :class:`ScoreFamily` or an explicit vector for this size.
    """
    u = profile.universe
    idx = u.indices(u.mask(feasible))
    k = len(idx)
    vec = score_vector(family(k) if callable(family) else family)
    if len(vec) != k:
        raise ValueError(f"score vector length {len(vec)} does not match feasible set size {k}")
    pos = linear_positions(profile, idx)
    total = [Fraction(0)] * k
    for mult, row in zip(profile.multiplicities, pos):
        for j, p in enumerate(row):
            total[j] += int(mult) * vec[p]
    return {u.names[i]: t for i, t in zip(idx, total)}


def scoring_choice(profile: Profile, feasible, family) -> frozenset:
    """Alternatives with the highest cumulative score."""
    s = scores(profile, feasible, family)
    best = max(s.values())
    return frozenset(a for a, v in s.items() if v == best)


RUNOFF_POLICIES = ("plurality_loser", "below_average_borda")


def runoff_choice(profile: Profile, feasible, policy: str) -> frozenset:
    """Iterated elimination, recomputing scores on the survivors each round.

    ``plurality_loser`` drops every alternative with the lowest plurality
    score (STV-style); ``below_average_borda`` drops every alternative with
    Borda score strictly below the mean (Nanson).  A round that would drop
    everyone ends the process instead.
    """
    if policy not in RUNOFF_POLICIES:
        raise ValueError(f"unknown runoff policy {policy!r}")
    remaining = frozenset(profile.universe.members(profile.universe.mask(feasible)))
    while len(remaining) > 1:
        if policy == "plurality_loser":
            s = scores(profile, remaining, PLURALITY)
            low = min(s.values())
            out = {a for a, v in s.items() if v == low}
        else:
            s = scores(profile, remaining, BORDA)
            mean = sum(s.values()) / len(s)
            out = {a for a, v in s.items() if v < mean}
        if not out or out == remaining:
            break
        remaining = remaining - out
    return remaining


def omninomination(profile: Profile, feasible) -> frozenset:
    """Alternatives ranked first within ``feasible`` by at least one voter."""
    u = profile.universe
    idx = u.indices(u.mask(feasible))
    pos = linear_positions(profile, idx)
    tops = {idx[int(np.flatnonzero(row == 0)[0])] for row in pos}
    return frozenset(u.names[i] for i in tops)
