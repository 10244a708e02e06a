"""Choice functions as explicit tables, and the relations they reveal."""

from __future__ import annotations

import re
from typing import Callable, Iterable

import numpy as np

from .errors import TableSyntaxError, UniverseError
from .prefs import Universe, canonical_order, fmt_set, popcount, submasks

MAX_TABLE_UNIVERSE = 16


class ChoiceTable:
    """Total map from every nonempty subset of a universe to a nonempty subset of it.

    Stored as an int64 array ``choice`` indexed by feasible-set bitmask.
    """

    __slots__ = ("universe", "choice")

    def __init__(self, universe: Universe, choice):
        k = len(universe)
        if k > MAX_TABLE_UNIVERSE:
            raise UniverseError(
                f"choice tables are limited to {MAX_TABLE_UNIVERSE} alternatives, got {k}"
            )
        arr = np.array(choice, dtype=np.int64)
        if arr.shape != (1 << k,):
            raise ValueError(f"choice array must have length {1 << k}")
        arr[0] = 0
        order = canonical_order(k)
        chosen = arr[order]
        if np.any(chosen == 0):
            bad = int(order[np.flatnonzero(chosen == 0)[0]])
            raise ValueError(f"empty choice from {universe.fmt(bad)}")
        if np.any(chosen & ~order):
            bad = int(order[np.flatnonzero(chosen & ~order)[0]])
            raise ValueError(f"choice from {universe.fmt(bad)} not a subset")
        arr.flags.writeable = False
        self.universe = universe
        self.choice = arr

    @classmethod
    def from_function(cls, universe: Universe, fn: Callable[[int], int]) -> "ChoiceTable":
        """Tabulate ``fn`` (mask -> chosen mask) over all nonempty subsets."""
        arr = np.zeros(1 << len(universe), dtype=np.int64)
        for A in canonical_order(len(universe)):
            arr[A] = fn(int(A))
        return cls(universe, arr)

    @classmethod
    def from_mapping(cls, universe: Universe, mapping) -> "ChoiceTable":
        """From ``{feasible: chosen}`` in names; unlisted singletons choose themselves."""
        arr = np.zeros(1 << len(universe), dtype=np.int64)
        for i in range(len(universe)):
            arr[1 << i] = 1 << i
        for feasible, chosen in mapping.items():
            arr[universe.mask(feasible)] = universe.mask(chosen)
        return cls(universe, arr)

    def __call__(self, feasible) -> frozenset:
        return self.universe.members(int(self.choice[self.universe.mask(feasible)]))

    __getitem__ = __call__

    def chosen(self, mask: int) -> int:
        return int(self.choice[mask])

    def items(self):
        """``(feasible_mask, chosen_mask)`` pairs in canonical order."""
        for A in canonical_order(len(self.universe)):
            yield int(A), int(self.choice[A])

    def __eq__(self, other):
        return (
            isinstance(other, ChoiceTable)
            and self.universe == other.universe
            and np.array_equal(self.choice, other.choice)
        )

    def __hash__(self):
        return hash((self.universe, self.choice.tobytes()))

    def __repr__(self):
        return f"ChoiceTable({self.universe!r}, {serialize_table(self)!r})"


class AltRelation:
    """Binary relation over alternatives, stored as a set of ``(a, b)`` pairs."""

    def __init__(self, universe: Universe, pairs: Iterable):
        self.universe = universe
        self.pairs = frozenset(tuple(p) for p in pairs)

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def strict(self) -> frozenset:
        return frozenset((a, b) for a, b in self.pairs if (b, a) not in self.pairs)

    def is_complete(self) -> bool:
        names = self.universe.names
        return all((a, b) in self.pairs or (b, a) in self.pairs for a in names for b in names)

    def is_transitive(self, pairs=None) -> bool:
        pairs = self.pairs if pairs is None else pairs
        succ = {}
        for a, b in pairs:
            succ.setdefault(a, set()).add(b)
        return all(c in succ.get(a, ()) for a, b in pairs for c in succ.get(b, ()))

    def is_acyclic(self) -> bool:
        """Whether the strict part has no cycle."""
        succ = {a: set() for a in self.universe.names}
        for a, b in self.strict():
            succ[a].add(b)
        state = {}

        def visit(a):
            state[a] = 1
            for b in succ[a]:
                if state.get(b) == 1 or (b not in state and not visit(b)):
                    return False
            state[a] = 2
            return True

        return all(a in state or visit(a) for a in succ)

    def sorted_pairs(self) -> list:
        idx = self.universe.index
        return sorted(self.pairs, key=lambda p: (idx[p[0]], idx[p[1]]))

    def __eq__(self, other):
        return isinstance(other, AltRelation) and (self.universe, self.pairs) == (other.universe, other.pairs)

    def __hash__(self):
        return hash((self.universe, self.pairs))

    def __repr__(self):
        return f"AltRelation({self.sorted_pairs()!r})"


class SetRelation:
    """Binary relation over feasible sets, stored as ``(mask, mask)`` pairs."""

    def __init__(self, universe: Universe, pairs: Iterable):
        self.universe = universe
        self.masks = frozenset((int(x), int(y)) for x, y in pairs)

    def related(self, x, y) -> bool:
        u = self.universe
        return (u.mask(x), u.mask(y)) in self.masks

    def __contains__(self, pair):
        return self.related(*pair)

    def strictly_related(self, x, y) -> bool:
        u = self.universe
        x, y = u.mask(x), u.mask(y)
        return (x, y) in self.masks and (y, x) not in self.masks

    @property
    def pairs(self) -> frozenset:
        m = self.universe.members
        return frozenset((m(x), m(y)) for x, y in self.masks)

    def sorted_masks(self) -> list:
        key = self.universe.sort_key
        return sorted(self.masks, key=lambda p: (key(p[0]), key(p[1])))

    def __len__(self):
        return len(self.masks)

    def __eq__(self, other):
        return isinstance(other, SetRelation) and (self.universe, self.masks) == (other.universe, other.masks)

    def __hash__(self):
        return hash((self.universe, self.masks))

    def __repr__(self):
        f = self.universe.fmt
        return "SetRelation([" + ", ".join(f"{f(x)}->{f(y)}" for x, y in self.sorted_masks()) + "])"


def base_relation_alts(table: ChoiceTable) -> AltRelation:
    """``a`` related to ``b`` iff ``a`` is chosen from ``{a, b}``; reflexive pairs included."""
    u = table.universe
    pairs = []
    for i, a in enumerate(u.names):
        for j, b in enumerate(u.names):
            if table.chosen((1 << i) | (1 << j)) >> i & 1:
                pairs.append((a, b))
    return AltRelation(u, pairs)


def revealed_relation_alts(table: ChoiceTable) -> AltRelation:
    """``a`` related to ``b`` iff ``a`` is chosen from some set containing ``b``."""
    u = table.universe
    k = len(u)
    pairs = set()
    for A, chosen in table.items():
        for i in range(k):
            if chosen >> i & 1:
                for j in range(k):
                    if A >> j & 1:
                        pairs.add((u.names[i], u.names[j]))
    return AltRelation(u, pairs)


def base_relation_sets(table: ChoiceTable) -> SetRelation:
    """``A`` related to ``B`` iff ``A`` is exactly what is chosen from ``A | B``."""
    order = [int(m) for m in canonical_order(len(table.universe))]
    c = table.choice
    return SetRelation(table.universe, ((A, B) for A in order for B in order if c[A | B] == A))


def revealed_relation_sets(table: ChoiceTable) -> SetRelation:
    """``A`` related to ``B`` iff ``A`` is chosen from some superset of ``B``."""
    pairs = set()
    for X, chosen in table.items():
        for B in submasks(X):
            pairs.add((chosen, B))
    return SetRelation(table.universe, pairs)


def maximal_sets(rel: SetRelation, feasible) -> list:
    """Nonempty subsets of ``feasible`` not strictly beaten by another subset, canonical order."""
    u = rel.universe
    subs = submasks(u.mask(feasible))
    inside = set(subs)
    beaten = set()
    for x, y in rel.masks:
        if x in inside and y in inside and (y, x) not in rel.masks:
            beaten.add(y)
    return [u.members(y) for y in subs if y not in beaten]


def export_dot(rel, name="R") -> str:
    """DOT digraph of a set or alternative relation; byte-stable output."""
    lines = [f"digraph {name} {{"]
    if isinstance(rel, SetRelation):
        u = rel.universe
        for A in canonical_order(len(u)):
            lines.append(f'  "{u.fmt(int(A))}";')
        for x, y in rel.sorted_masks():
            lines.append(f'  "{u.fmt(x)}" -> "{u.fmt(y)}";')
    elif isinstance(rel, AltRelation):
        for a in rel.universe.names:
            lines.append(f'  "{a}";')
        for a, b in rel.sorted_pairs():
            lines.append(f'  "{a}" -> "{b}";')
    else:
        raise TypeError(f"cannot export {type(rel).__name__} to DOT")
    lines.append("}")
    return "\n".join(lines) + "\n"


_SET_RE = re.compile(r"\{\s*([^{}]*?)\s*\}")
_LINE_RE = re.compile(r"^\s*(\{[^{}]*\})\s*->\s*(\{[^{}]*\})\s*$")


def _set_names(text, lineno):
    inner = _SET_RE.fullmatch(text.strip()).group(1)
    if not inner:
        return []
    names = [p.strip() for p in inner.split(",")]
    for n in names:
        if not re.fullmatch(r"[a-z0-9_]+", n):
            raise TableSyntaxError(f"invalid alternative {n!r}", lineno)
    if len(set(names)) != len(names):
        raise TableSyntaxError("alternative repeated in a set literal", lineno)
    return names


def parse_table(text: str, universe: Universe | None = None) -> ChoiceTable:
    """Parse the ``.ct`` format: one ``{x,y} -> {x}`` line per feasible set.

    The universe is the union of all mentioned alternatives unless given.
    Singleton lines may be left out since their choice is forced.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE_RE.match(line)
        if m is None:
            raise TableSyntaxError("expected '{...} -> {...}'", lineno)
        rows.append((lineno, _set_names(m.group(1), lineno), _set_names(m.group(2), lineno)))
    if universe is None:
        names = {a for _, fs, ch in rows for a in fs + ch}
        if not names:
            raise TableSyntaxError("empty choice table")
        universe = Universe(sorted(names))
    k = len(universe)
    if k > MAX_TABLE_UNIVERSE:
        raise UniverseError(f"choice tables are limited to {MAX_TABLE_UNIVERSE} alternatives, got {k}")
    arr = np.zeros(1 << k, dtype=np.int64)
    for lineno, fs, ch in rows:
        if not fs:
            raise TableSyntaxError("feasible sets must be nonempty", lineno)
        if not ch:
            raise TableSyntaxError("empty chosen set", lineno)
        try:
            A, C = universe.mask(fs), universe.mask(ch)
        except UniverseError as exc:
            raise TableSyntaxError(str(exc), lineno) from None
        if C & ~A:
            raise TableSyntaxError(f"choice not a subset: {fmt_set(ch)} from {fmt_set(fs)}", lineno)
        if arr[A]:
            raise TableSyntaxError(f"duplicate entry for {fmt_set(fs)}", lineno)
        arr[A] = C
    for i in range(k):
        if not arr[1 << i]:
            arr[1 << i] = 1 << i
    missing = [int(A) for A in canonical_order(k) if not arr[A]]
    if missing:
        raise TableSyntaxError(f"incomplete table: no entry for {universe.fmt(missing[0])}")
    return ChoiceTable(universe, arr)


def serialize_table(table: ChoiceTable) -> str:
    f = table.universe.fmt
    return "".join(f"{f(A)} -> {f(c)}\n" for A, c in table.items())


def induce_table(scf, profile, universe: Universe | None = None) -> ChoiceTable:
    """Choice table ``A -> f(profile, A)`` over every nonempty subset of the universe."""
    from .scf import get_scf

    rule = get_scf(scf)
    u = profile.universe if universe is None else universe
    if u != profile.universe:
        raise UniverseError("universe does not match the profile")
    return ChoiceTable.from_function(u, lambda A: rule.choose_mask(profile, A))


def all_tables(universe: Universe):
    """Every choice table over ``universe`` (only sensible for tiny universes)."""
    from itertools import product

    order = [int(A) for A in canonical_order(len(universe)) if popcount(int(A)) > 1]
    options = [[c for c in submasks(A)] for A in order]
    base = np.zeros(1 << len(universe), dtype=np.int64)
    for i in range(len(universe)):
        base[1 << i] = 1 << i
    for combo in product(*options):
        arr = base.copy()
        arr[order] = combo
        yield ChoiceTable(universe, arr)
