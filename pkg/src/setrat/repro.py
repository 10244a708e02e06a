"""Re-run the checks behind the bundled example profiles and tables."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from . import fixtures
from .axioms import check_axiom, check_rationalizable, check_self_stable
from .choice import induce_table, maximal_sets, revealed_relation_sets
from .lp import maximal_lottery
from .prefs import margins, may_pairwise, weak_condorcet_winners

NAMES = tuple(fixtures.FILES)

FIG1_EDGES = [
    ("abc", s) for s in ("a", "b", "c", "ab", "ac", "bc", "abc")
] + [
    ("a", "ab"), ("b", "bc"), ("c", "ac"),
    ("a", "b"), ("b", "c"), ("c", "a"),
    ("a", "a"), ("b", "b"), ("c", "c"),
]


def _check(label, ok, detail=""):
    return label, bool(ok), detail


def _verdict(table, axiom, want_holds, want_witness=None):
    v = check_axiom(table, axiom)
    ok = v.holds == want_holds
    if ok and want_witness is not None:
        ok = all(v.witness[k] == frozenset(s) for k, s in want_witness.items())
    return _check(f"{axiom} {'HOLDS' if want_holds else 'VIOLATED'}", ok, v.report_line())


def check_fig1():
    T = fixtures.fig1()
    rel = revealed_relation_sets(T)
    self_stable = check_self_stable(T)
    missing = [f"{x}->{y}" for x, y in FIG1_EDGES if not rel.related(list(x), list(y))]
    return [
        _verdict(T, "alpha_hat", True),
        _verdict(T, "gamma_hat", True),
        _verdict(T, "alpha", False),
        _check("self-stable HOLDS", self_stable.holds, self_stable.report_line()),
        _check("revealed set relation has the drawn edges", not missing,
               "missing: " + ", ".join(missing) if missing else f"{len(rel)} pairs"),
        _check("maximal set in {a,b} is {a}", maximal_sets(rel, list("ab")) == [frozenset("a")]),
    ]


def check_fig2():
    T = fixtures.fig2()
    verdict, rel = check_rationalizable(T)
    strict = rel.strict() - {(x, x) for x in "abc"} if rel else set()
    maxi = maximal_sets(revealed_relation_sets(T), list("ab"))
    return [
        _check("rationalizable HOLDS", verdict.holds, verdict.report_line()),
        _check("strict base pairs are a>c, c>b", strict == {("a", "c"), ("c", "b")}, str(sorted(strict))),
        _verdict(T, "alpha_hat", False, {"A": "abc", "B": "ab"}),
        _check("both {a} and {a,b} maximal in {a,b}", maxi == [frozenset("a"), frozenset("ab")]),
    ]


def check_gamma_table():
    T = fixtures.gamma_table()
    return [
        _verdict(T, "gamma", True),
        _verdict(T, "gamma_hat", False, {"A": "ab", "B": "ac", "X": "a"}),
    ]


def check_table1():
    R = fixtures.table1()
    fig1 = fixtures.fig1()
    out = []
    for pair, winner in (("ab", "a"), ("bc", "b"), ("ac", "c")):
        got = may_pairwise(R, list(pair))
        out.append(_check(f"majority on {{{','.join(pair)}}} picks {winner}", got == {winner}))
    out.append(_check("no weak Condorcet winner", not weak_condorcet_winners(R)))
    for scf in ("minimax", "tc", "mc", "es"):
        out.append(_check(f"{scf} induces the fig1 table", induce_table(scf, R) == fig1))
    p = maximal_lottery(margins(R))
    out.append(_check("maximal lottery is uniform", all(v == Fraction(1, 3) for v in p.values()),
                      " ".join(f"p({a})={v}" for a, v in p.items())))
    return out


def check_table2():
    R = fixtures.table2()
    out = [_check("a is the unique weak Condorcet winner", weak_condorcet_winners(R) == {"a"})]
    for scf in ("minimax", "nanson", "borda", "plurality", "antiplurality"):
        T = induce_table(scf, R)
        shape = T(list("abc")) == {"a"} and T(list("ab")) == {"a", "b"}
        out.append(_check(f"{scf}: f(abc)={{a}}, f(ab)={{a,b}}", shape))
        label, ok, detail = _verdict(T, "alpha_hat", False, {"A": "abc", "B": "ab"})
        out.append((f"{scf}: {label}", ok, detail))
    return out


CHECKS = {
    "table1": check_table1,
    "table2": check_table2,
    "fig1": check_fig1,
    "fig2": check_fig2,
    "gamma_table": check_gamma_table,
}


def write_fixture(name, directory=".") -> Path:
    filename, text = fixtures.FILES[name]
    path = Path(directory) / filename
    path.write_text(text, encoding="utf-8")
    return path


def run(name):
    return CHECKS[name]()
