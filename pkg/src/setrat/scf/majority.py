"""Majority-margin based rules: minimax and the tournament solutions.

The ``*_local`` functions take a margin matrix (numpy, square, skew-symmetric)
and return a bitmask over its row indices.  They are memoized on the matrix
bytes: all of them are neutral, so equal matrices give equal answers.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .. import kernels
from ..errors import InternalError, NotATournament
from ..lp import essential_support
from ..prefs import canonical_order, margins, submasks

_CACHE = 1 << 16


def _bits(flags) -> int:
    out = 0
    for i, f in enumerate(flags):
        if f:
            out |= 1 << i
    return out


def _indices(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _closure(rel: np.ndarray) -> np.ndarray:
    reach = rel.copy()
    for z in range(reach.shape[0]):
        reach |= reach[:, z : z + 1] & reach[z : z + 1, :]
    return reach


def _key(M):
    M = np.ascontiguousarray(M, dtype=np.int64)
    return M.shape[0], M.tobytes()


def _unkey(k, raw):
    return np.frombuffer(raw, dtype=np.int64).reshape(k, k)


@lru_cache(maxsize=_CACHE)
def _minimax(k, raw):
    M = _unkey(k, raw)
    if k == 1:
        return 1
    off = np.where(np.eye(k, dtype=bool), np.iinfo(np.int64).min, M)
    worst = off.max(axis=0)
    return _bits(worst == worst.min())


@lru_cache(maxsize=_CACHE)
def _top_cycle(k, raw):
    reach = _closure(_unkey(k, raw) >= 0)
    return _bits(reach.all(axis=1))


@lru_cache(maxsize=_CACHE)
def _gocha(k, raw):
    reach = _closure(_unkey(k, raw) > 0)
    # x survives iff everything that reaches x is reached back by x
    return _bits(~np.any(reach.T & ~reach, axis=1))


@lru_cache(maxsize=_CACHE)
def _uncovered(k, raw):
    M = _unkey(k, raw)
    beats = M > 0
    covered = np.zeros(k, dtype=bool)
    for x in range(k):
        for y in range(k):
            if beats[x, y] and not np.any(beats[y] & ~beats[x]):
                covered[y] = True
    return _bits(~covered)


def _sub(M, mask):
    idx = _indices(mask)
    return M[np.ix_(idx, idx)], idx


def _lift(local, idx):
    return sum(1 << idx[i] for i in _indices(local))


@lru_cache(maxsize=_CACHE)
def _iterated_uc(k, raw):
    M = _unkey(k, raw)
    current = (1 << k) - 1
    while True:
        sub, idx = _sub(M, current)
        nxt = _lift(_uncovered(*_key(sub)), idx)
        if nxt == current:
            return current
        current = nxt


@lru_cache(maxsize=_CACHE)
def _minimal_covering(k, raw):
    M = _unkey(k, raw)
    full = (1 << k) - 1
    uc = np.zeros(1 << k, dtype=np.int64)
    for X in submasks(full):
        sub, idx = _sub(M, X)
        uc[X] = _lift(_uncovered(*_key(sub)), idx)
    order = canonical_order(k)
    stable = [int(X) for X, ok in zip(order, kernels.stable_mask(uc, order, full)) if ok]
    minimal = [X for X in stable if not any(Y != X and Y & ~X == 0 for Y in stable)]
    if len(minimal) != 1:
        raise InternalError(f"uncovered-set-stable sets: {len(minimal)} minimal ones, expected 1")
    return minimal[0]


@lru_cache(maxsize=_CACHE)
def _essential(k, raw):
    return _bits(i in essential_support(_unkey(k, raw)) for i in range(k))


def _require_tournament(mm):
    tie = mm.first_tie()
    if tie is not None:
        raise NotATournament(tie)


def minimax_local(M) -> int:
    return _minimax(*_key(M))


def top_cycle_local(M) -> int:
    return _top_cycle(*_key(M))


def gocha_local(M) -> int:
    return _gocha(*_key(M))


def uncovered_local(M) -> int:
    return _uncovered(*_key(M))


def iterated_uc_local(M) -> int:
    return _iterated_uc(*_key(M))


def minimal_covering_local(M) -> int:
    return _minimal_covering(*_key(M))


def essential_local(M) -> int:
    return _essential(*_key(M))


def _apply(local_fn, tournament_only):
    def rule(profile, feasible):
        mm = margins(profile, feasible)
        if tournament_only:
            _require_tournament(mm)
        local = local_fn(mm.m)
        return frozenset(a for i, a in enumerate(mm.alternatives) if local >> i & 1)

    return rule


minimax = _apply(minimax_local, False)
minimax.__doc__ = "Alternatives whose largest defeat margin is smallest; weak Condorcet extension."
top_cycle = _apply(top_cycle_local, False)
top_cycle.__doc__ = "Smallest set whose members strictly beat every outsider (Smith set)."
gocha = _apply(gocha_local, False)
gocha.__doc__ = "Union of the minimal sets undominated under strict majority (Schwartz set)."
uncovered_set = _apply(uncovered_local, True)
uncovered_set.__doc__ = "Alternatives covered by no other; needs a tournament."
iterated_uc = _apply(iterated_uc_local, True)
iterated_uc.__doc__ = "Fixed point of repeatedly taking the uncovered set; needs a tournament."
minimal_covering = _apply(minimal_covering_local, True)
minimal_covering.__doc__ = "Unique minimal uncovered-set-stable set; needs a tournament."
essential_set = _apply(essential_local, False)
essential_set.__doc__ = "Support of all maximal lotteries of the margin game."
