"""Consistency axioms, (set-)rationalizability, stable sets and self-stability.

All checks are exhaustive over the table's feasible sets.  Violations come
with the first witness in canonical enumeration order: outer set ``A``, then
inner set ``B`` (both by size, then member names), then alternative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Iterable

import numpy as np

from . import kernels
from .choice import ChoiceTable, SetRelation, base_relation_alts, revealed_relation_sets
from .errors import InternalError, NotSetRationalizable, NotWellDefined, PreconditionError
from .prefs import Profile, WeakOrder, canonical_order, fmt_set
from .scf import get_scf


class AxiomId(str, Enum):
    alpha = "alpha"
    gamma = "gamma"
    alpha_hat = "alpha_hat"
    alpha_hat_ssp = "alpha_hat_ssp"
    gamma_hat = "gamma_hat"
    warp = "warp"
    path_independence = "path_independence"
    aizerman = "aizerman"
    generalized_condorcet = "generalized_condorcet"

    def __str__(self):
        return self.value


AXIOMS = tuple(a.value for a in AxiomId)


@dataclass(frozen=True)
class Witness:
    """Concrete instantiation of a violated condition.

    ``sets`` maps role names (``A``, ``B``, ``X``, ``x``, ``profile``, ...) to
    frozensets of names, alternative names, or other values.
    """

    axiom: str
    sets: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.sets[key]

    def describe(self) -> str:
        parts = []
        for key, v in self.sets.items():
            if isinstance(v, (frozenset, set)):
                parts.append(f"{key}={fmt_set(v)}")
            elif isinstance(v, Profile):
                continue
            else:
                parts.append(f"{key}={v}")
        return " ".join(parts)

    def to_dict(self) -> dict:
        out = {}
        for key, v in self.sets.items():
            if isinstance(v, (frozenset, set)):
                out[key] = sorted(v)
            elif isinstance(v, Profile):
                out[key] = str(v)
            else:
                out[key] = v
        return {"axiom": str(self.axiom), "sets": out}

    def __str__(self):
        return self.describe()


@dataclass(frozen=True)
class Verdict:
    axiom: str
    holds: bool
    witness: Witness | None = None
    finite_family: bool = False

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a witness must be present exactly when the verdict is a violation")

    def __bool__(self):
        return self.holds

    def report_line(self) -> str:
        if self.holds:
            tail = " (no violation in supplied family)" if self.finite_family else ""
            return f"{self.axiom}: HOLDS{tail}"
        return f"{self.axiom}: VIOLATED {self.witness.describe()}".rstrip()

    def to_dict(self) -> dict:
        return {
            "axiom": str(self.axiom),
            "holds": self.holds,
            "witness": None if self.witness is None else self.witness.to_dict()["sets"],
        }


_KERNEL_FOR = {
    AxiomId.alpha: ("check_alpha", ("A", "B", "x")),
    AxiomId.gamma: ("check_gamma", ("A", "B", "x")),
    AxiomId.alpha_hat: ("check_alpha_hat_ssp", ("A", "B")),
    AxiomId.alpha_hat_ssp: ("check_alpha_hat_ssp", ("A", "B")),
    AxiomId.gamma_hat: ("check_gamma_hat", ("A", "B", "X")),
    AxiomId.warp: ("check_warp", ("A", "B")),
    AxiomId.path_independence: ("check_path_independence", ("A", "B")),
    AxiomId.aizerman: ("check_aizerman", ("A", "B")),
    AxiomId.generalized_condorcet: ("check_generalized_condorcet", ("A", None, "x")),
}


def _witness_from(table, axiom, roles, raw):
    u = table.universe
    sets = {}
    for role, value in zip(roles, raw):
        if role is None:
            continue
        if role == "x":
            sets[role] = u.names[int(value)]
        else:
            sets[role] = u.members(int(value))
    return Witness(str(axiom), sets)


def check_axiom(table: ChoiceTable, axiom, backend=None) -> Verdict:
    """Exhaustively check one axiom on ``table``.

    ``alpha_hat`` is decided through its superset-property form (``S(A) <= B <= A``
    implies ``S(B) == S(A)``), which is equivalent and much cheaper; see
    :func:`alpha_hat_definitional` for the literal three-set form.
    """
    axiom = AxiomId(axiom)
    name, roles = _KERNEL_FOR[axiom]
    impl = kernels if backend is None else kernels.load_backend(backend)
    raw = getattr(impl, name)(table.choice, canonical_order(len(table.universe)))
    if raw[0] == -1:
        return Verdict(str(axiom), True)
    return Verdict(str(axiom), False, _witness_from(table, axiom, roles, raw))


def alpha_hat_definitional(table: ChoiceTable, backend=None) -> Verdict:
    """alpha_hat in its literal form: ``X = S(A | B)`` with ``X <= A & B`` forces ``S(A) = S(B) = X``."""
    impl = kernels if backend is None else kernels.load_backend(backend)
    A, B, X = impl.check_alpha_hat_def(table.choice, canonical_order(len(table.universe)))
    if A == -1:
        return Verdict("alpha_hat", True)
    u = table.universe
    return Verdict("alpha_hat", False, Witness("alpha_hat", {"A": u.members(A), "B": u.members(B), "X": u.members(X)}))


def witness_is_violation(table: ChoiceTable, w: Witness) -> bool:
    """Re-check ``w`` against the axiom's definition, using plain set operations."""
    S = table
    g = w.sets.get
    A, B, X, x = g("A"), g("B"), g("X"), g("x")
    ax = AxiomId(w.axiom)
    if ax is AxiomId.alpha:
        return x in A & B and x in S(A | B) and not (x in S(A) and x in S(B))
    if ax is AxiomId.gamma:
        return x in S(A) and x in S(B) and x not in S(A | B)
    if ax in (AxiomId.alpha_hat, AxiomId.alpha_hat_ssp):
        if X is not None:
            return X == S(A | B) and X <= A & B and (S(A) != X or S(B) != X)
        return S(A) <= B <= A and S(B) != S(A)
    if ax is AxiomId.gamma_hat:
        return S(A) == X and S(B) == X and S(A | B) != X
    if ax is AxiomId.warp:
        return B <= A and bool(S(A) & B) and S(A) & B != S(B)
    if ax is AxiomId.path_independence:
        return S(A | B) != S(S(A) | S(B))
    if ax is AxiomId.aizerman:
        return S(A) <= B <= A and not S(B) <= S(A)
    if ax is AxiomId.generalized_condorcet:
        return (
            x in A
            and len(A) > 1
            and all(S({x, b}) == {x} for b in A - {x})
            and S(A) != {x}
        )
    raise ValueError(f"unknown axiom {w.axiom!r}")


# -- rationalizability -----------------------------------------------------------


def _maximal_under(strict_pairs, names):
    beaten = {b for a, b in strict_pairs if a in names and b in names}
    return frozenset(names) - beaten


def check_rationalizable(table: ChoiceTable):
    """Whether the base relation rationalizes ``table``.

    Returns ``(verdict, relation)``; ``relation`` is the base relation on
    success and ``None`` otherwise.  The answer is cross-checked against
    ``alpha and gamma``.
    """
    rel = base_relation_alts(table)
    strict = rel.strict()
    u = table.universe
    witness = None
    for A, chosen in table.items():
        names = u.members(A)
        if _maximal_under(strict, names) != u.members(chosen):
            witness = Witness("rationalizable", {"A": names})
            break
    holds = witness is None
    sen = check_axiom(table, "alpha").holds and check_axiom(table, "gamma").holds
    if holds != sen:
        raise InternalError("base-relation rationalizability disagrees with alpha and gamma")
    return Verdict("rationalizable", holds, witness), (rel if holds else None)


def is_quasi_transitively_rationalizable(table: ChoiceTable) -> bool:
    verdict, rel = check_rationalizable(table)
    return verdict.holds and rel.is_transitive(rel.strict())


def set_rationalize(table: ChoiceTable) -> SetRelation:
    """The revealed relation on sets, which set-rationalizes any alpha_hat table."""
    v = check_axiom(table, AxiomId.alpha_hat)
    if not v.holds:
        raise NotSetRationalizable(v.witness)
    return revealed_relation_sets(table)


# -- stable sets -----------------------------------------------------------------


@dataclass(frozen=True)
class StableSetReport:
    feasible: frozenset
    stable: list
    minimal: list

    def describe(self) -> str:
        s = ", ".join(fmt_set(x) for x in self.stable) or "none"
        m = ", ".join(fmt_set(x) for x in self.minimal) or "none"
        return f"stable: {s}; minimal: {m}"


def _stable_masks(table: ChoiceTable, feasible: int) -> list:
    order = canonical_order(len(table.universe))
    flags = kernels.stable_mask(table.choice, order, feasible)
    return [int(X) for X, ok in zip(order, flags) if ok]


def _minimal(masks):
    return [X for X in masks if not any(Y != X and Y & ~X == 0 for Y in masks)]


def stable_sets(table: ChoiceTable, feasible) -> StableSetReport:
    """All sets ``X`` with ``S(X) = X`` and ``a not in S(X | {a})`` for every outside ``a``."""
    u = table.universe
    F = u.mask(feasible)
    stable = _stable_masks(table, F)
    return StableSetReport(u.members(F), [u.members(X) for X in stable], [u.members(X) for X in _minimal(stable)])


def s_hat(table: ChoiceTable) -> ChoiceTable:
    """Table of unique minimal stable sets; raises NotWellDefined if one is missing or ambiguous."""
    u = table.universe
    arr = np.zeros(1 << len(u), dtype=np.int64)
    for A in canonical_order(len(u)):
        A = int(A)
        mins = _minimal(_stable_masks(table, A))
        if len(mins) != 1:
            raise NotWellDefined(u.members(A), [u.members(m) for m in mins])
        arr[A] = mins[0]
    return ChoiceTable(u, arr)


def check_self_stable(table: ChoiceTable) -> Verdict:
    """Self-stable iff the minimal stable sets are unique and equal the table itself.

    Cross-checked against ``alpha_hat and gamma_hat``.
    """
    witness = None
    try:
        hat = s_hat(table)
    except NotWellDefined as exc:
        witness = Witness("self_stable", {"A": exc.feasible, "minimal": len(exc.minimal)})
    else:
        if hat != table:
            A = next(A for A, c in table.items() if hat.chosen(A) != c)
            u = table.universe
            witness = Witness("self_stable", {"A": u.members(A), "S(A)": table(A), "minimal": hat(A)})
    holds = witness is None
    hats = check_axiom(table, "alpha_hat").holds and check_axiom(table, "gamma_hat").holds
    if holds != hats:
        raise InternalError("self-stability disagrees with alpha_hat and gamma_hat")
    return Verdict("self_stable", holds, witness)


# -- SCF conditions over finite profile families ------------------------------------

SCF_CONDITIONS = ("pareto", "neutrality", "anonymity", "positive_responsiveness", "weak_dictator")


def _pairs(universe):
    names = universe.names
    return [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]


def _rebuild(profile, orders):
    return Profile(profile.universe, tuple((1, o) for o in orders))


def _single_voter_variants(order: WeakOrder, a, b):
    """Orders that raise ``a`` against ``b`` and keep everything else in place."""
    classes = [list(c) for c in order.classes]
    ra, rb = order.rank[a], order.rank[b]
    out = []
    if ra == rb:  # a I b  ->  a P' b: split a off just above its class
        cls = [x for x in classes[ra] if x != a]
        out.append(WeakOrder(tuple(classes[:ra] + [[a], cls] + classes[ra + 1:])))
    elif rb < ra:  # b P a  ->  a R' b: move a next to b, tied or just above
        rest = [[x for x in c if x != a] for c in classes]
        tied = [c + [a] if i == rb else c for i, c in enumerate(rest)]
        above = rest[:rb] + [[a]] + rest[rb:]
        for cand in (above, tied):
            cand = [c for c in cand if c]
            out.append(WeakOrder(tuple(tuple(c) for c in cand)))
    return out


def check_scf_condition(scf, condition, profiles: Iterable[Profile]) -> Verdict:
    """Check an SCF condition over an explicit, finite family of profiles.

    ``condition`` is one of ``pareto``, ``neutrality``, ``anonymity``,
    ``positive_responsiveness``, or ``("weak_dictator", i)`` for voter ``i``
    (1-based, in expanded ballot order).

    For ``weak_dictator`` the verdict is about non-dictatorship of voter
    ``i``: it holds once some profile shows ``a P_i b`` with ``a`` not chosen
    from ``{a, b}``, and is violated by the first profile in which ``i``
    gets their way on every strictly ranked pair.  "Holds" for the other
    conditions means no violation was found in the family.
    """
    rule = get_scf(scf)
    voter = None
    if isinstance(condition, tuple):
        condition, voter = condition
    elif isinstance(condition, str) and condition.startswith("weak_dictator:"):
        condition, voter = "weak_dictator", int(condition.split(":", 1)[1])
    if condition not in SCF_CONDITIONS:
        raise ValueError(f"unknown SCF condition {condition!r}")
    label = condition if voter is None else f"weak_dictator({voter})"

    def violated(**sets):
        return Verdict(label, False, Witness(label, sets))

    profiles = list(profiles)
    for R in profiles:
        u = R.universe
        f = lambda P, A: rule(P, A)  # noqa: E731
        if condition == "pareto":
            for a, b in _pairs(u):
                for x, y in ((a, b), (b, a)):
                    if all(o.prefers(y, x) for _, o in R.entries) and x in f(R, {x, y}):
                        return violated(profile=R, A=frozenset({x, y}), x=x)
        elif condition == "anonymity":
            ballots = R.voters()
            reference = {A: f(R, A) for A in u.subsets()}
            for perm in _voter_permutations(len(ballots)):
                R2 = _rebuild(R, [ballots[i] for i in perm])
                for A in u.subsets():
                    if f(R2, A) != reference[A]:
                        return violated(profile=R, permuted=R2, A=u.members(A))
        elif condition == "neutrality":
            for perm in permutations(u.names):
                mapping = dict(zip(u.names, perm))
                R2 = Profile(u, tuple((m, o.rename(mapping)) for m, o in R.entries))
                for A in u.subsets():
                    image = frozenset(mapping[a] for a in f(R, A))
                    A2 = frozenset(mapping[a] for a in u.members(A))
                    if f(R2, A2) != image:
                        return violated(profile=R, renamed=R2, A=u.members(A))
        elif condition == "positive_responsiveness":
            ballots = R.voters()
            for a, b in _pairs(u):
                for x, y in ((a, b), (b, a)):
                    if x not in f(R, {x, y}):
                        continue
                    for i, o in enumerate(ballots):
                        for o2 in _single_voter_variants(o, x, y):
                            if R.is_linear and not o2.is_linear:
                                continue
                            R2 = _rebuild(R, ballots[:i] + [o2] + ballots[i + 1:])
                            if f(R2, {x, y}) != {x}:
                                return violated(profile=R, changed=R2, A=frozenset({x, y}), x=x)
        else:
            ballots = R.voters()
            if not 1 <= voter <= len(ballots):
                raise PreconditionError(f"voter {voter} not in a profile of {len(ballots)} voters")
            o = ballots[voter - 1]
            strict_pairs = [(x, y) for a, b in _pairs(u) for x, y in ((a, b), (b, a)) if o.prefers(x, y)]
            for x, y in strict_pairs:
                if x not in f(R, {x, y}):
                    return Verdict(label, True, finite_family=True)
    if condition == "weak_dictator" and profiles:
        first = next((R for R in profiles if any(
            o.prefers(a, b) or o.prefers(b, a)
            for o in [R.voters()[voter - 1]] for a, b in _pairs(R.universe))), profiles[0])
        return violated(profile=first, voter=voter)
    return Verdict(label, True, finite_family=True)


def _voter_permutations(n, limit=720):
    """All voter permutations for small electorates, else rotations and the reversal."""
    if n <= 6:
        yield from permutations(range(n))
        return
    for s in range(n):
        yield tuple((i + s) % n for i in range(n))
    yield tuple(reversed(range(n)))
