from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from setrat.axioms import check_axiom
from setrat.choice import induce_table
from setrat.errors import NonLinearPreference, NotATournament, PreconditionError
from setrat.lp import essential_support
from setrat.prefs import Profile, Universe, margins, weak_condorcet_winners
from setrat.scf import (
    ANTIPLURALITY,
    BORDA,
    PLURALITY,
    REGISTRY,
    ScoreFamily,
    essential_set,
    get_scf,
    gocha,
    iterated_uc,
    minimal_covering,
    minimax,
    omninomination,
    runoff_choice,
    score_vector,
    scores,
    scoring_choice,
    top_cycle,
    uncovered_set,
)
from setrat.search import GeneratorSpec, all_orders, iter_profiles, mcgarvey_profile

from conftest import S

U4 = Universe("abcd")
U5 = Universe("abcde")
UNANIMOUS = Profile.from_orders(["a > b > c"])


@st.composite
def weak_profiles(draw, universe=U4):
    orders = all_orders(universe, linear=False)
    picks = draw(st.lists(st.tuples(st.integers(1, 3), st.sampled_from(orders)), min_size=1, max_size=5))
    return Profile(universe, tuple(picks))


@st.composite
def linear_profiles(draw, universe=U4):
    orders = all_orders(universe, linear=True)
    picks = draw(st.lists(st.tuples(st.integers(1, 3), st.sampled_from(orders)), min_size=1, max_size=5))
    return Profile(universe, tuple(picks))


@st.composite
def tournaments(draw, universe=U5):
    names = universe.names
    edges = []
    for a, b in combinations(names, 2):
        edges.append((a, b) if draw(st.booleans()) else (b, a))
    return mcgarvey_profile(universe, edges)


@st.composite
def feasible(draw, universe):
    return frozenset(draw(st.lists(st.sampled_from(universe.names), min_size=1, unique=True)))


def all_fixed_point(f, x):
    while True:
        y = f(x)
        if y == x:
            return x
        x = y


# -- score vectors -------------------------------------------------------------------


def test_score_vector_validation():
    assert score_vector([2, 1, 0]) == (2, 1, 0)
    with pytest.raises(ValueError):
        score_vector([0, 1, 0])
    with pytest.raises(ValueError):
        score_vector([1, 1, 1])
    assert PLURALITY(3) == (1, 0, 0) and BORDA(3) == (2, 1, 0) and ANTIPLURALITY(3) == (1, 1, 0)


def test_custom_family_sizes_independent():
    fam = ScoreFamily.custom({2: [1, 0], 3: [5, 4, 0]})
    assert fam(3) == (5, 4, 0) and fam(1) == (0,)
    with pytest.raises(PreconditionError):
        fam(4)
    with pytest.raises(ValueError):
        ScoreFamily.custom({3: [1, 0]})


@pytest.mark.parametrize("s2", [Fraction(0), Fraction(1, 2), Fraction(1)])
def test_table2_score_formulas(table2, s2):
    s = scores(table2, S("abc"), [1, s2, 0])
    assert s == {"a": 3 + 2 * s2, "b": 2 + s2, "c": 1 + 3 * s2}


def test_table2_scoring_examples(table2):
    assert scores(table2, S("abc"), [1, Fraction(1, 2), 0]) == {"a": 4, "b": Fraction(5, 2), "c": Fraction(5, 2)}
    assert scoring_choice(table2, S("abc"), [1, Fraction(1, 2), 0]) == {"a"}
    assert scores(table2, S("abc"), PLURALITY) == {"a": 3, "b": 2, "c": 1}
    assert scoring_choice(table2, S("abc"), PLURALITY) == {"a"}
    for fam in (PLURALITY, BORDA, ANTIPLURALITY):
        assert scoring_choice(table2, S("ab"), fam) == {"a", "b"}
        assert scoring_choice(table2, ["c"], fam) == {"c"}


def test_scoring_rejects_ties():
    p = Profile.from_orders(["a ~ b > c"])
    with pytest.raises(NonLinearPreference):
        scoring_choice(p, S("abc"), BORDA)
    # restricted to a set the tie does not touch, it is fine
    assert scoring_choice(p, S("ac"), BORDA) == {"a"}


@given(linear_profiles(), st.integers(1, 5), st.integers(-5, 5))
def test_scoring_affine_invariance(p, lam, mu):
    for vec in ([3, 1, 1, 0], [1, 0, 0, 0], [2, 2, 1, 0]):
        shifted = [lam * v + mu for v in vec]
        assert scoring_choice(p, U4.names, vec) == scoring_choice(p, U4.names, shifted)


@given(linear_profiles(), feasible(U4))
def test_borda_matches_position_count(p, X):
    expected = oracles.borda_scores(p, X)
    assert scores(p, X, BORDA) == expected


# -- runoffs -----------------------------------------------------------------------


def test_runoff_examples(table2):
    assert runoff_choice(table2, S("abc"), "below_average_borda") == {"a"}
    assert runoff_choice(table2, S("abc"), "plurality_loser") == {"a", "b"}
    for policy in ("plurality_loser", "below_average_borda"):
        assert runoff_choice(UNANIMOUS, S("abc"), policy) == {"a"}


def test_runoff_everyone_tied_stops(table1):
    assert runoff_choice(table1, S("abc"), "plurality_loser") == {"a", "b", "c"}
    assert runoff_choice(table1, S("abc"), "below_average_borda") == {"a", "b", "c"}


def test_runoff_unknown_policy(table2):
    with pytest.raises(ValueError):
        runoff_choice(table2, S("abc"), "coombs")


def _nanson_oracle(p, X):
    X = frozenset(X)
    while len(X) > 1:
        s = oracles.borda_scores(p, X)
        mean = Fraction(sum(s.values()), len(s))
        low = {a for a in X if s[a] < mean}
        if not low:
            break
        X = X - low
    return X


@given(linear_profiles(), feasible(U4))
def test_nanson_matches_trace(p, X):
    assert runoff_choice(p, X, "below_average_borda") == _nanson_oracle(p, X)


# -- majority rules against brute force -----------------------------------------------


def test_minimax_examples(table1, table2):
    assert minimax(table2, S("abc")) == {"a"}
    assert minimax(table1, S("abc")) == {"a", "b", "c"}


@given(weak_profiles(), feasible(U4))
def test_minimax_matches_oracle(p, X):
    assert minimax(p, X) == oracles.minimax(margins(p), X)


def test_minimax_on_pairs_is_majority(table1, table2):
    from setrat.prefs import may_pairwise

    for p in (table1, table2):
        for pair in ("ab", "ac", "bc"):
            assert minimax(p, S(pair)) == may_pairwise(p, S(pair))


def test_minimax_weak_condorcet_extension():
    for p in iter_profiles(GeneratorSpec.exhaustive(4, 3, linear=False)):
        w = weak_condorcet_winners(p)
        if w:
            assert minimax(p, p.universe.names) == w


def test_top_cycle_examples(table1, table2):
    assert top_cycle(table1, S("abc")) == {"a", "b", "c"}
    assert top_cycle(table2, S("abc")) == {"a", "b", "c"}
    assert top_cycle(UNANIMOUS, S("abc")) == {"a"}


def test_gocha_examples(table1, table2):
    assert gocha(table2, S("abc")) == {"a"}
    assert gocha(table2, S("ab")) == {"a", "b"}
    assert gocha(table1, S("abc")) == {"a", "b", "c"}


@given(weak_profiles(), feasible(U4))
def test_top_cycle_and_gocha_match_oracles(p, X):
    m = margins(p)
    assert top_cycle(p, X) == oracles.smith_set(m, X)
    assert gocha(p, X) == oracles.schwartz_set(m, X)


@given(tournaments())
def test_top_cycle_equals_gocha_on_tournaments(p):
    assert top_cycle(p, U5.names) == gocha(p, U5.names)


def test_uncovered_examples(table1, table2):
    assert uncovered_set(table1, S("abc")) == {"a", "b", "c"}
    assert uncovered_set(UNANIMOUS, S("abc")) == {"a"}
    with pytest.raises(NotATournament) as info:
        uncovered_set(table2, S("abc"))
    assert str(info.value) == "not a tournament: a,b tied"
    assert info.value.pair == ("a", "b")


@pytest.mark.parametrize("rule", [uncovered_set, iterated_uc, minimal_covering])
def test_tournament_rules_reject_ties(table2, rule):
    with pytest.raises(NotATournament):
        rule(table2, S("abc"))
    # but a feasible set without the tie is fine
    assert rule(table2, S("ac")) == {"a"}


@settings(max_examples=60)
@given(tournaments(), feasible(U5))
def test_uncovered_family_matches_oracles(p, X):
    m = margins(p)
    uc = lambda Y: oracles.uncovered(m, Y)  # noqa: E731
    assert uncovered_set(p, X) == uc(X)
    assert iterated_uc(p, X) == all_fixed_point(uc, frozenset(X))
    # minimal covering set: minimal sets stable under the uncovered set
    stable = [B for B in oracles.nonempty_subsets(X)
              if uc(B) == B and all(x not in uc(B | {x}) for x in X - B)]
    mins = oracles.minimal(stable)
    assert len(mins) == 1
    assert minimal_covering(p, X) == mins[0]


def test_iterated_uc_strictly_smaller_somewhere():
    # some 5-alternative tournament where the uncovered set shrinks again
    found = None
    for p in iter_profiles(GeneratorSpec.tournaments(5)):
        if iterated_uc(p, U5.names) != uncovered_set(p, U5.names):
            found = p
            break
    assert found is not None
    assert iterated_uc(found, U5.names) < uncovered_set(found, U5.names)


def test_table1_and_unanimous_examples(table1):
    for rule in (iterated_uc, minimal_covering, essential_set):
        assert rule(table1, S("abc")) == {"a", "b", "c"}
        assert rule(UNANIMOUS, S("abc")) == {"a"}


def test_essential_set_table2(table2):
    assert essential_set(table2, S("abc")) == {"a", "b"}


@settings(max_examples=40, deadline=None)
@given(tournaments())
def test_containment_chain(p):
    X = U5.names
    es, mc, uc, tc = (r(p, X) for r in (essential_set, minimal_covering, uncovered_set, top_cycle))
    assert es <= mc <= uc <= tc


@settings(max_examples=40, deadline=None)
@given(weak_profiles())
def test_condorcet_winner_chosen_alone(p):
    m = margins(p)
    names = U4.names
    winner = [a for a in names if all(m[a, b] > 0 for b in names if b != a)]
    if not winner:
        return
    for token in ("minimax", "tc", "gocha", "es", "nanson"):
        rule = get_scf(token)
        if rule.linear_only and not p.is_linear:
            continue
        assert rule(p, names) == {winner[0]}
    if m.is_tournament():
        for rule in (uncovered_set, iterated_uc, minimal_covering):
            assert rule(p, names) == {winner[0]}


# -- omninomination ------------------------------------------------------------------


def test_omninomination_examples(table2):
    assert omninomination(table2, S("abc")) == {"a", "b", "c"}
    assert omninomination(UNANIMOUS, S("abc")) == {"a"}
    assert omninomination(table2, S("bc")) == {"b", "c"}


# -- induced-table classification ---------------------------------------------------


SWEEP = list(iter_profiles(GeneratorSpec.exhaustive(3, 3, linear=True)))
WEAK_SWEEP = list(iter_profiles(GeneratorSpec.exhaustive(2, 3, linear=False)))


@pytest.mark.parametrize("token", ["tc", "gocha", "mc", "es", "omni"])
def test_gamma_hat_rules(token):
    for p in SWEEP:
        assert check_axiom(induce_table(token, p), "gamma_hat").holds


@pytest.mark.parametrize("token", ["tc", "mc", "es", "iuc", "omni"])
def test_alpha_hat_rules(token):
    for p in SWEEP:
        assert check_axiom(induce_table(token, p), "alpha_hat").holds


@pytest.mark.parametrize("token", ["gocha", "es"])
def test_gamma_hat_with_ties(token):
    for p in WEAK_SWEEP:
        assert check_axiom(induce_table(token, p), "gamma_hat").holds


def test_gocha_fails_alpha_hat_on_table2(table2):
    v = check_axiom(induce_table("gocha", table2), "alpha_hat")
    assert not v.holds
    assert (v.witness["A"], v.witness["B"]) == (frozenset("abc"), frozenset("ab"))


# -- registry -----------------------------------------------------------------------


def test_registry_tokens():
    assert list(REGISTRY) == [
        "plurality", "borda", "antiplurality", "stv", "nanson", "minimax",
        "tc", "gocha", "uc", "iuc", "mc", "es", "omni",
    ]
    assert get_scf("smith") is REGISTRY["tc"]
    with pytest.raises(KeyError):
        get_scf("kemeny")


def test_linear_only_flags():
    assert {t for t, r in REGISTRY.items() if r.linear_only} == {
        "plurality", "borda", "antiplurality", "stv", "nanson", "omni",
    }
    assert {t for t, r in REGISTRY.items() if r.tournament_only} == {"uc", "iuc", "mc"}



def test_margin_essential_set_can_leave_uncovered_set():
    # d covers b in the majority tournament, yet b carries weight 1/5 in the
    # unique maximal lottery because it beats c by 3 where d beats c by 1
    p = Profile.from_orders(["a > d > b > c"] * 2 + ["b > c > a > d", "b > d > c > a", "c > d > a > b"])
    X = S("abcd")
    m = margins(p)
    assert m.is_tournament()
    assert oracles.lottery_vertices(m.m.tolist()) == {(Fraction(3, 5), Fraction(1, 5), Fraction(1, 5), Fraction(0))}
    assert essential_set(p, X) == {"a", "b", "c"}
    assert uncovered_set(p, X) == minimal_covering(p, X) == {"a", "c", "d"}
    # on the tournament game itself the support is back inside MC
    assert {m.alternatives[i] for i in essential_support(np.sign(m.m))} <= minimal_covering(p, X)
