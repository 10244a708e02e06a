"""Social choice functions and their stable CLI tokens.

Every rule maps ``(profile, feasible)`` to a nonempty subset of ``feasible``
and is computed on the profile restricted to ``feasible``.

===========  ============================  ===========  ===============
token        rule                          preferences  majority ties
===========  ============================  ===========  ===============
plurality    scoring (1,0,...,0)           linear       ok
borda        scoring (k-1,...,1,0)         linear       ok
antiplur..   scoring (1,...,1,0)           linear       ok
stv          plurality-loser runoff        linear       ok
nanson       below-average Borda runoff    linear       ok
minimax      smallest worst defeat margin  weak         ok
tc           top cycle / Smith set         weak         ok
gocha        GOCHA / Schwartz set          weak         ok
uc           uncovered set                 weak         tournament only
iuc          iterated uncovered set        weak         tournament only
mc           minimal covering set          weak         tournament only
es           essential set                 weak         ok
omni         omninomination                linear       ok
===========  ============================  ===========  ===============
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import majority, scoring
from .majority import (
    essential_set,
    gocha,
    iterated_uc,
    minimal_covering,
    minimax,
    top_cycle,
    uncovered_set,
)
from .scoring import (
    ANTIPLURALITY,
    BORDA,
    PLURALITY,
    ScoreFamily,
    omninomination,
    runoff_choice,
    score_vector,
    scores,
    scoring_choice,
)


@dataclass(frozen=True)
class SCF:
    token: str
    name: str
    fn: Callable
    linear_only: bool = False
    tournament_only: bool = False

    def __call__(self, profile, feasible) -> frozenset:
        return self.fn(profile, feasible)

    def choose_mask(self, profile, mask: int) -> int:
        return profile.universe.mask(self.fn(profile, mask))


def scoring_scf(family: ScoreFamily, token=None) -> SCF:
    return SCF(token or family.name, f"scoring rule ({family.name})",
               lambda p, A: scoring_choice(p, A, family), linear_only=True)


def _runoff(policy):
    return lambda p, A: runoff_choice(p, A, policy)


REGISTRY = {
    "plurality": scoring_scf(PLURALITY, "plurality"),
    "borda": scoring_scf(BORDA, "borda"),
    "antiplurality": scoring_scf(ANTIPLURALITY, "antiplurality"),
    "stv": SCF("stv", "plurality-loser runoff", _runoff("plurality_loser"), linear_only=True),
    "nanson": SCF("nanson", "Nanson runoff", _runoff("below_average_borda"), linear_only=True),
    "minimax": SCF("minimax", "minimax", minimax),
    "tc": SCF("tc", "top cycle", top_cycle),
    "gocha": SCF("gocha", "GOCHA", gocha),
    "uc": SCF("uc", "uncovered set", uncovered_set, tournament_only=True),
    "iuc": SCF("iuc", "iterated uncovered set", iterated_uc, tournament_only=True),
    "mc": SCF("mc", "minimal covering set", minimal_covering, tournament_only=True),
    "es": SCF("es", "essential set", essential_set),
    "omni": SCF("omni", "omninomination", omninomination, linear_only=True),
}

ALIASES = {
    "top_cycle": "tc",
    "smith": "tc",
    "schwartz": "gocha",
    "uncovered_set": "uc",
    "iterated_uc": "iuc",
    "minimal_covering": "mc",
    "essential_set": "es",
    "omninomination": "omni",
}


def get_scf(scf) -> SCF:
    """Look up a rule by token or alias; SCF objects and plain callables pass through."""
    if isinstance(scf, SCF):
        return scf
    if callable(scf):
        # user callables always see a frozenset of names, never a bitmask
        def fn(profile, feasible, _f=scf):
            u = profile.universe
            return frozenset(_f(profile, u.members(u.mask(feasible))))

        return SCF(getattr(scf, "__name__", "custom"), "custom", fn)
    token = ALIASES.get(scf, scf)
    try:
        return REGISTRY[token]
    except KeyError:
        raise KeyError(f"unknown SCF {scf!r}; choose from {', '.join(REGISTRY)}") from None


__all__ = [
    "SCF", "REGISTRY", "get_scf", "scoring_scf", "ScoreFamily", "score_vector",
    "PLURALITY", "BORDA", "ANTIPLURALITY", "scores", "scoring_choice", "runoff_choice",
    "omninomination", "minimax", "top_cycle", "gocha", "uncovered_set", "iterated_uc",
    "minimal_covering", "essential_set", "majority", "scoring",
]
