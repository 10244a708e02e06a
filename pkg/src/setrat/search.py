"""Profile generators and counterexample search over induced choice tables."""

from __future__ import annotations

import string
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Iterator

import numpy as np

from .axioms import AxiomId, check_axiom, check_self_stable
from .choice import induce_table
from .errors import PreconditionError
from .prefs import Profile, Universe, WeakOrder

MAX_EXHAUSTIVE_ALTS = 5
MAX_EXHAUSTIVE_VOTERS = 8
MODES = ("exhaustive", "random", "tournament")


def default_universe(k: int) -> Universe:
    if not 1 <= k <= 26:
        raise ValueError("between 1 and 26 alternatives are supported")
    return Universe(string.ascii_lowercase[:k])


def _ordered_partitions(items):
    if not items:
        yield ()
        return
    n = len(items)
    for size in range(1, n + 1):
        for first in combinations(items, size):
            rest = [x for x in items if x not in first]
            for tail in _ordered_partitions(rest):
                yield (first,) + tail


def all_orders(universe: Universe, linear: bool = True) -> list:
    """Every linear (or weak) order over ``universe`` in a fixed deterministic order."""
    names = list(universe.names)
    if linear:
        return [WeakOrder.linear(p) for p in permutations(names)]
    return [WeakOrder(part) for part in _ordered_partitions(names)]


@dataclass(frozen=True)
class GeneratorSpec:
    """Where to look for profiles.

    ``exhaustive`` enumerates every multiset of ``num_voters`` ballots;
    ``random`` draws ``count`` impartial-culture profiles from ``seed``;
    ``tournament`` realizes every labelled tournament on ``num_alternatives``
    through McGarvey's two-voters-per-edge construction (``num_voters`` is
    ignored there).
    """

    mode: str
    num_voters: int
    num_alternatives: int
    linear: bool = True
    count: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.num_alternatives < 1:
            raise ValueError("need at least one alternative")
        if self.mode != "tournament" and self.num_voters < 1:
            raise ValueError("need at least one voter")
        if self.mode == "exhaustive" and (
            self.num_alternatives > MAX_EXHAUSTIVE_ALTS or self.num_voters > MAX_EXHAUSTIVE_VOTERS
        ):
            raise ValueError(
                f"exhaustive mode is limited to {MAX_EXHAUSTIVE_ALTS} alternatives "
                f"and {MAX_EXHAUSTIVE_VOTERS} voters"
            )
        if self.mode == "random" and (self.count is None or self.seed is None):
            raise ValueError("random mode needs both count and seed")
        if self.mode == "tournament" and self.num_alternatives > 7:
            raise ValueError("tournament mode is limited to 7 alternatives")

    @classmethod
    def exhaustive(cls, num_voters, num_alternatives, linear=True):
        return cls("exhaustive", num_voters, num_alternatives, linear)

    @classmethod
    def random(cls, count, seed, num_voters, num_alternatives, linear=True):
        return cls("random", num_voters, num_alternatives, linear, count, seed)

    @classmethod
    def tournaments(cls, num_alternatives):
        return cls("tournament", 0, num_alternatives, True)


def _grouped(universe, orders, picks) -> Profile:
    counts = Counter(picks)
    return Profile(universe, tuple((counts[i], orders[i]) for i in sorted(counts)))


def mcgarvey_profile(universe: Universe, edges) -> Profile:
    """Profile whose strict majority relation is exactly ``edges`` (margin 2 each)."""
    names = list(universe.names)
    ballots = []
    for x, y in edges:
        rest = [z for z in names if z not in (x, y)]
        ballots.append(WeakOrder.linear([x, y] + rest))
        ballots.append(WeakOrder.linear(rest[::-1] + [x, y]))
    return Profile(universe, tuple((1, o) for o in ballots))


def iter_profiles(gen: GeneratorSpec) -> Iterator[Profile]:
    u = default_universe(gen.num_alternatives)
    if gen.mode == "tournament":
        names = u.names
        pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
        for flips in product((False, True), repeat=len(pairs)):
            edges = [(b, a) if f else (a, b) for (a, b), f in zip(pairs, flips)]
            if not edges:
                yield Profile(u, ((1, WeakOrder.linear(names)),))
            else:
                yield mcgarvey_profile(u, edges)
        return
    orders = all_orders(u, gen.linear)
    if gen.mode == "exhaustive":
        for picks in combinations_with_replacement(range(len(orders)), gen.num_voters):
            yield _grouped(u, orders, picks)
    else:
        rng = np.random.default_rng(gen.seed)
        for _ in range(gen.count):
            picks = rng.integers(0, len(orders), size=gen.num_voters)
            yield _grouped(u, orders, [int(i) for i in picks])


def table_violation(table, axiom):
    """First witness of ``axiom`` (an AxiomId or ``self_stable``) on ``table``, or None."""
    if axiom == "self_stable":
        v = check_self_stable(table)
    else:
        v = check_axiom(table, AxiomId(axiom))
    return None if v.holds else v.witness


def search_counterexample(scf, axiom, gen: GeneratorSpec):
    """First generated profile whose induced table violates ``axiom``.

    Returns ``(profile, witness)`` or ``None`` when the space is exhausted.
    Profiles on which the rule's precondition fails (majority ties for
    tournament-only rules) are skipped.
    """
    for profile in iter_profiles(gen):
        try:
            table = induce_table(scf, profile)
        except PreconditionError:
            continue
        w = table_violation(table, axiom)
        if w is not None:
            return profile, w
    return None
