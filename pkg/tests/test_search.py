from math import comb

import pytest

from setrat import fixtures
from setrat.axioms import check_axiom, witness_is_violation
from setrat.choice import induce_table
from setrat.prefs import margins, parse_profile
from setrat.search import (
    GeneratorSpec,
    all_orders,
    default_universe,
    iter_profiles,
    mcgarvey_profile,
    search_counterexample,
    table_violation,
)

# the first 6-alternative tournament (in generation order) on which the
# iterated uncovered set violates gamma_hat
IUC_GAMMA_HAT_6 = """\
1: a > b > c > d > e > f
1: f > e > d > c > a > b
1: a > c > b > d > e > f
1: f > e > d > b > a > c
1: a > d > b > c > e > f
1: f > e > c > b > a > d
1: e > a > b > c > d > f
1: f > d > c > b > e > a
1: f > a > b > c > d > e
1: e > d > c > b > f > a
1: b > c > a > d > e > f
1: f > e > d > a > b > c
1: d > b > a > c > e > f
1: f > e > c > a > d > b
1: b > e > a > c > d > f
1: f > d > c > a > b > e
1: b > f > a > c > d > e
1: e > d > c > a > b > f
1: c > d > a > b > e > f
1: f > e > b > a > c > d
1: c > e > a > b > d > f
1: f > d > b > a > c > e
1: f > c > a > b > d > e
1: e > d > b > a > f > c
1: e > d > a > b > c > f
1: f > c > b > a > e > d
1: d > f > a > b > c > e
1: e > c > b > a > d > f
1: e > f > a > b > c > d
1: d > c > b > a > e > f
"""


def test_order_counts():
    u = default_universe(3)
    assert len(all_orders(u, linear=True)) == 6
    assert len(all_orders(u, linear=False)) == 13
    assert len(all_orders(default_universe(4), linear=False)) == 75


@pytest.mark.parametrize("n, k, linear", [(3, 3, True), (2, 3, False), (6, 3, True), (2, 4, True)])
def test_exhaustive_space_size(n, k, linear):
    orders = len(all_orders(default_universe(k), linear))
    profiles = list(iter_profiles(GeneratorSpec.exhaustive(n, k, linear)))
    assert len(profiles) == comb(orders + n - 1, n)
    assert len({str(p) for p in profiles}) == len(profiles)
    assert all(p.n == n for p in profiles)


def test_table2_profile_in_exhaustive_space():
    target = fixtures.table2()
    assert any(p == target for p in iter_profiles(GeneratorSpec.exhaustive(6, 3, True)))


def test_random_mode_reproducible():
    g = GeneratorSpec.random(count=20, seed=11, num_voters=5, num_alternatives=4)
    a = [str(p) for p in iter_profiles(g)]
    b = [str(p) for p in iter_profiles(g)]
    assert a == b and len(a) == 20
    other = [str(p) for p in iter_profiles(GeneratorSpec.random(20, 12, 5, 4))]
    assert other != a


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(mode="exhaustive", num_voters=9, num_alternatives=3),
        dict(mode="exhaustive", num_voters=3, num_alternatives=6),
        dict(mode="random", num_voters=3, num_alternatives=3, count=5),
        dict(mode="random", num_voters=3, num_alternatives=3, seed=1),
        dict(mode="tournament", num_voters=0, num_alternatives=8),
        dict(mode="sideways", num_voters=3, num_alternatives=3),
        dict(mode="exhaustive", num_voters=0, num_alternatives=3),
    ],
)
def test_generator_bounds(kwargs):
    with pytest.raises(ValueError):
        GeneratorSpec(**kwargs)


def test_mcgarvey_realizes_edges():
    u = default_universe(4)
    edges = [("a", "b"), ("c", "a"), ("a", "d"), ("b", "c"), ("d", "b"), ("c", "d")]
    m = margins(mcgarvey_profile(u, edges))
    for x, y in edges:
        assert m[x, y] == 2


def test_tournament_mode_covers_all_tournaments():
    profiles = list(iter_profiles(GeneratorSpec.tournaments(4)))
    assert len(profiles) == 2 ** 6
    relations = set()
    for p in profiles:
        m = margins(p)
        assert m.is_tournament()
        relations.add(tuple(m.m.flatten() > 0))
    assert len(relations) == 64


@pytest.mark.parametrize("scf", ["minimax", "borda", "nanson", "gocha", "plurality", "antiplurality"])
def test_alpha_hat_violations_found(scf):
    hit = search_counterexample(scf, "alpha_hat", GeneratorSpec.exhaustive(6, 3, True))
    assert hit is not None
    profile, witness = hit
    assert witness_is_violation(induce_table(scf, profile), witness)
    # the bundled profile is a violation too
    assert check_axiom(induce_table(scf, fixtures.table2()), "alpha_hat").holds is False


def test_stv_witness():
    profile, witness = search_counterexample("stv", "alpha_hat", GeneratorSpec.exhaustive(6, 3, True))
    assert witness_is_violation(induce_table("stv", profile), witness)


@pytest.mark.parametrize(
    "scf, axiom, n",
    [("es", "alpha_hat", 3), ("mc", "gamma_hat", 3), ("borda", "alpha_hat", 1), ("tc", "self_stable", 3)],
)
def test_no_counterexample(scf, axiom, n):
    assert search_counterexample(scf, axiom, GeneratorSpec.exhaustive(n, 3, True)) is None


def test_tournament_only_rules_skip_ties():
    # even electorates give many ties; uc must skip them rather than raise
    assert search_counterexample("uc", "alpha", GeneratorSpec.exhaustive(2, 3, True)) is None
    profile, _ = search_counterexample("uc", "alpha", GeneratorSpec.exhaustive(6, 3, True))
    assert margins(profile).is_tournament()


def test_first_hit_is_first_in_generation_order():
    gen = GeneratorSpec.exhaustive(6, 3, True)
    profile, _ = search_counterexample("borda", "alpha_hat", gen)
    for p in iter_profiles(gen):
        if p == profile:
            break
        assert table_violation(induce_table("borda", p), "alpha_hat") is None


def test_iterated_uc_gamma_hat_small_tournaments():
    for k in (3, 4):
        assert search_counterexample("iuc", "gamma_hat", GeneratorSpec.tournaments(k)) is None


def test_iterated_uc_gamma_hat_six_alternatives():
    p = parse_profile(IUC_GAMMA_HAT_6)
    assert margins(p).is_tournament()
    T = induce_table("iuc", p)
    v = check_axiom(T, "gamma_hat")
    assert not v.holds
    assert v.witness.describe() == "A={a,b,c,e} B={a,b,d,e,f} X={a,b,e}"
    assert witness_is_violation(T, v.witness)
    assert check_axiom(T, "alpha_hat").holds


@pytest.mark.slow
def test_iterated_uc_gamma_hat_six_alternatives_search():
    hit = search_counterexample("iuc", "gamma_hat", GeneratorSpec.tournaments(6))
    assert hit is not None and str(hit[0]) == IUC_GAMMA_HAT_6
