"""Universes, weak orders, preference profiles and majority margins.

Feasible sets are handled as bitmasks over a :class:`Universe`; every public
function also accepts an iterable of alternative names and returns
``frozenset`` objects of names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import ProfileSyntaxError, UniverseError

NAME_RE = re.compile(r"[a-z0-9_]+")


@lru_cache(maxsize=None)
def canonical_order(k: int) -> np.ndarray:
    """Nonempty masks over ``k`` bits, sorted by size and then by member sequence."""
    masks = [
        sum(1 << i for i in combo)
        for size in range(1, k + 1)
        for combo in combinations(range(k), size)
    ]
    out = np.array(masks, dtype=np.int64)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=None)
def _rank_of_mask(k: int) -> np.ndarray:
    pos = np.zeros(1 << k, dtype=np.int64)
    pos[canonical_order(k)] = np.arange(1, 1 << k)
    pos.flags.writeable = False
    return pos


def submasks(mask: int) -> list[int]:
    """Nonempty submasks of ``mask`` in canonical order."""
    bits = [i for i in range(mask.bit_length()) if mask >> i & 1]
    return [
        sum(1 << bits[i] for i in combo)
        for size in range(1, len(bits) + 1)
        for combo in combinations(range(len(bits)), size)
    ]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def fmt_set(names: Iterable[str]) -> str:
    return "{" + ",".join(sorted(names)) + "}"


class Universe:
    """A finite, lexicographically ordered set of alternative ids."""

    __slots__ = ("names", "index")

    def __init__(self, names: Iterable[str]):
        names = list(names)
        if not names:
            raise UniverseError("a universe needs at least one alternative")
        for n in names:
            if not isinstance(n, str) or not NAME_RE.fullmatch(n):
                raise UniverseError(f"invalid alternative id {n!r}")
        if len(set(names)) != len(names):
            raise UniverseError("duplicate alternative ids")
        self.names = tuple(sorted(names))
        self.index = {n: i for i, n in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self.index

    def __eq__(self, other):
        return isinstance(other, Universe) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Universe({list(self.names)!r})"

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    def mask(self, feasible, allow_empty=False) -> int:
        """Bitmask of ``feasible`` (a mask, a name, or an iterable of names)."""
        if isinstance(feasible, (int, np.integer)):
            m = int(feasible)
            if m < 0 or m & ~self.full:
                raise UniverseError(f"mask {m} outside universe {fmt_set(self.names)}")
        else:
            if isinstance(feasible, str):
                feasible = [feasible]
            m = 0
            for name in feasible:
                try:
                    m |= 1 << self.index[name]
                except KeyError:
                    raise UniverseError(f"unknown alternative {name!r}") from None
        if m == 0 and not allow_empty:
            raise UniverseError("feasible sets must be nonempty")
        return m

    def members(self, mask: int) -> frozenset:
        return frozenset(self.names[i] for i in range(len(self.names)) if mask >> i & 1)

    def indices(self, mask: int) -> list[int]:
        return [i for i in range(len(self.names)) if mask >> i & 1]

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.names[i] for i in self.indices(mask)) + "}"

    def subsets(self, within=None) -> list[int]:
        """Nonempty subsets (as masks) of ``within`` (default: everything), canonical order."""
        if within is None:
            return [int(m) for m in canonical_order(len(self.names))]
        return submasks(self.mask(within))

    def sort_key(self, mask: int):
        return _rank_of_mask(len(self.names))[mask]


@dataclass(frozen=True)
class WeakOrder:
    """Complete transitive preference stored as an ordered partition.

    ``classes[0]`` holds the most preferred alternatives.
    """

    classes: tuple

    def __post_init__(self):
        classes = tuple(tuple(sorted(c)) for c in self.classes)
        if any(len(c) == 0 for c in classes):
            raise UniverseError("indifference classes must be nonempty")
        flat = [a for c in classes for a in c]
        if len(set(flat)) != len(flat):
            raise UniverseError("alternative repeated within one order")
        object.__setattr__(self, "classes", classes)

    @classmethod
    def linear(cls, names: Sequence[str]) -> "WeakOrder":
        return cls(tuple((n,) for n in names))

    @classmethod
    def parse(cls, text: str) -> "WeakOrder":
        return cls(tuple(tuple(p.strip() for p in c.split("~")) for c in text.split(">")))

    @cached_property
    def alternatives(self) -> frozenset:
        return frozenset(a for c in self.classes for a in c)

    @cached_property
    def rank(self) -> dict:
        return {a: r for r, c in enumerate(self.classes) for a in c}

    @property
    def is_linear(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    def prefers(self, a: str, b: str) -> bool:
        """Strict preference ``a P b``."""
        return self.rank[a] < self.rank[b]

    def weakly_prefers(self, a: str, b: str) -> bool:
        return self.rank[a] <= self.rank[b]

    def top(self) -> tuple:
        return self.classes[0]

    def rename(self, mapping) -> "WeakOrder":
        return WeakOrder(tuple(tuple(mapping[a] for a in c) for c in self.classes))

    def __str__(self):
        return " > ".join(" ~ ".join(c) for c in self.classes)


def restrict_order(order: WeakOrder, feasible) -> WeakOrder:
    """Restriction of ``order`` to ``feasible``; empty classes are dropped."""
    keep = frozenset([feasible] if isinstance(feasible, str) else feasible)
    if not keep:
        raise UniverseError("feasible sets must be nonempty")
    if not keep <= order.alternatives:
        missing = sorted(keep - order.alternatives)
        raise UniverseError(f"feasible set not within the order's universe: {missing}")
    return WeakOrder(tuple(c for c in (tuple(a for a in cl if a in keep) for cl in order.classes) if c))


@dataclass(frozen=True)
class Profile:
    """Multiset of weak orders over one universe, as ``(multiplicity, order)`` entries."""

    universe: Universe
    entries: tuple = field()

    def __post_init__(self):
        entries = tuple((int(m), o) for m, o in self.entries)
        if not entries:
            raise UniverseError("a profile needs at least one entry")
        for m, o in entries:
            if m < 1:
                raise UniverseError("multiplicity must be positive")
            if o.alternatives != frozenset(self.universe.names):
                raise UniverseError(f"order '{o}' does not rank exactly the universe")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_orders(cls, orders: Iterable, universe: Universe | None = None) -> "Profile":
        """Build from plain orders (strings, name sequences or WeakOrders), one voter each."""
        parsed = []
        for o in orders:
            if isinstance(o, WeakOrder):
                parsed.append(o)
            elif isinstance(o, str):
                parsed.append(WeakOrder.parse(o))
            else:
                parsed.append(WeakOrder.linear(o))
        if universe is None:
            universe = Universe(sorted(parsed[0].alternatives))
        return cls(universe, tuple((1, o) for o in parsed))

    @property
    def n(self) -> int:
        return sum(m for m, _ in self.entries)

    @property
    def is_linear(self) -> bool:
        return all(o.is_linear for _, o in self.entries)

    @cached_property
    def ranks(self) -> np.ndarray:
        r = np.array(
            [[o.rank[a] for a in self.universe.names] for _, o in self.entries],
            dtype=np.int64,
        )
        r.flags.writeable = False
        return r

    @cached_property
    def multiplicities(self) -> np.ndarray:
        m = np.array([m for m, _ in self.entries], dtype=np.int64)
        m.flags.writeable = False
        return m

    @cached_property
    def full_margins(self) -> np.ndarray:
        m = kernels.margin_matrix(self.ranks, self.multiplicities)
        m.flags.writeable = False
        return m

    def voters(self) -> list:
        """Expanded ballot list, one order per voter, in entry order."""
        return [o for m, o in self.entries for _ in range(m)]

    def __str__(self):
        return format_profile(self)


def format_profile(profile: Profile) -> str:
    return "".join(f"{m}: {o}\n" for m, o in profile.entries)


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[a-z0-9_]+)|(?P<op>[>~:])|(?P<bad>\S))")


def _tokens(line, lineno):
    pos = 0
    while pos < len(line):
        m = _TOKEN_RE.match(line, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group("bad") is not None:
            raise ProfileSyntaxError(f"unexpected character {m.group('bad')!r}", lineno, m.start("bad") + 1)
        kind = "name" if m.group("name") is not None else m.group("op")
        yield kind, m.group(m.lastgroup), m.start(m.lastgroup) + 1
        pos = m.end()


def _parse_line(line, lineno):
    toks = list(_tokens(line, lineno))
    end_col = len(line.rstrip()) + 1
    if len(toks) < 3 or toks[0][0] != "name" or not toks[0][1].isdigit():
        col = toks[0][2] if toks else 1
        raise ProfileSyntaxError("expected '<multiplicity> : <order>'", lineno, col)
    if toks[1][0] != ":":
        raise ProfileSyntaxError("expected ':' after multiplicity", lineno, toks[1][2])
    mult = int(toks[0][1])
    if mult < 1:
        raise ProfileSyntaxError("multiplicity must be positive", lineno, toks[0][2])
    classes, current, seen = [], [], {}
    expect_name = True
    for kind, text, col in toks[2:]:
        if expect_name:
            if kind != "name":
                raise ProfileSyntaxError(f"expected alternative, got {text!r}", lineno, col)
            if text in seen:
                raise ProfileSyntaxError(f"alternative {text!r} repeated within one order", lineno, col)
            seen[text] = col
            current.append(text)
            expect_name = False
        else:
            if kind == ">":
                classes.append(tuple(current))
                current = []
            elif kind != "~":
                raise ProfileSyntaxError(f"expected '>' or '~', got {text!r}", lineno, col)
            expect_name = True
    if expect_name:
        raise ProfileSyntaxError("order ends with an operator", lineno, end_col)
    classes.append(tuple(current))
    return mult, classes, seen


def parse_profile(text: str, universe: Universe | None = None) -> Profile:
    """Parse the ``.prof`` format.

    Each non-blank line reads ``<multiplicity> : <class> ( > <class> )*`` where a
    class is one alternative or several joined by ``~``; ``#`` starts a comment.
    Without an explicit ``universe`` the referenced alternatives define it.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        rows.append((lineno, *_parse_line(line, lineno)))
    if not rows:
        raise ProfileSyntaxError("profile contains no ballots")
    if universe is None:
        universe = Universe(sorted({a for *_, seen in rows for a in seen}))
    everyone = set(universe.names)
    entries = []
    for lineno, mult, classes, seen in rows:
        for a, col in seen.items():
            if a not in everyone:
                raise ProfileSyntaxError(f"unknown alternative {a!r}", lineno, col)
        missing = everyone - set(seen)
        if missing:
            raise ProfileSyntaxError(f"order does not rank {fmt_set(missing)}", lineno)
        entries.append((mult, WeakOrder(tuple(classes))))
    return Profile(universe, tuple(entries))


class MarginMatrix:
    """Skew-symmetric net majority margins over a feasible set.

    ``m[i, j]`` counts voters preferring the ``i``-th to the ``j``-th
    alternative minus those with the opposite strict preference.
    """

    __slots__ = ("alternatives", "m", "_key")

    def __init__(self, alternatives: Sequence[str], m):
        m = np.array(m, dtype=np.int64)
        if m.shape != (len(alternatives), len(alternatives)):
            raise ValueError("margin matrix shape does not match alternatives")
        if not np.array_equal(m, -m.T):
            raise ValueError("margin matrix must be skew-symmetric")
        m.flags.writeable = False
        self.alternatives = tuple(alternatives)
        self.m = m
        self._key = None

    def __getitem__(self, pair):
        a, b = pair
        i = self.alternatives.index(a)
        j = self.alternatives.index(b)
        return int(self.m[i, j])

    def __eq__(self, other):
        return (
            isinstance(other, MarginMatrix)
            and self.alternatives == other.alternatives
            and np.array_equal(self.m, other.m)
        )

    def __hash__(self):
        return hash(self.key())

    def key(self):
        """Hashable ``(size, entries)`` summary, independent of alternative names."""
        if self._key is None:
            self._key = (len(self.alternatives), self.m.tobytes())
        return self._key

    def __len__(self):
        return len(self.alternatives)

    def is_tournament(self) -> bool:
        off = ~np.eye(len(self.alternatives), dtype=bool)
        return bool(np.all(self.m[off] != 0))

    def first_tie(self):
        k = len(self.alternatives)
        for i in range(k):
            for j in range(i + 1, k):
                if self.m[i, j] == 0:
                    return self.alternatives[i], self.alternatives[j]
        return None

    def __repr__(self):
        return f"MarginMatrix({list(self.alternatives)!r}, {self.m.tolist()!r})"


def margins(profile: Profile, feasible=None) -> MarginMatrix:
    """Majority margins of ``profile`` restricted to ``feasible`` (default: the universe)."""
    u = profile.universe
    mask = u.full if feasible is None else u.mask(feasible)
    idx = u.indices(mask)
    return MarginMatrix([u.names[i] for i in idx], profile.full_margins[np.ix_(idx, idx)])


def may_pairwise(profile: Profile, pair) -> frozenset:
    """Simple majority rule on a two-element set; a tie returns both."""
    u = profile.universe
    mask = u.mask(pair)
    if popcount(mask) != 2:
        raise UniverseError(f"majority rule needs exactly two alternatives, got {u.fmt(mask)}")
    i, j = u.indices(mask)
    v = profile.full_margins[i, j]
    if v > 0:
        return frozenset([u.names[i]])
    if v < 0:
        return frozenset([u.names[j]])
    return frozenset([u.names[i], u.names[j]])


def weak_condorcet_winners(profile: Profile, feasible=None) -> frozenset:
    """Alternatives that no other member of ``feasible`` beats by majority (may be empty)."""
    mm = margins(profile, feasible)
    ok = np.all(mm.m >= 0, axis=1)
    return frozenset(a for a, good in zip(mm.alternatives, ok) if good)
