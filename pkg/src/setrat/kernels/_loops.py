"""Scalar-loop kernels over bitset choice arrays.

Written in the numba-compatible subset of Python; ``_numba`` compiles them.
Conventions shared with ``_numpy``:

* ``choice`` is an int64 array of length ``2**k``; ``choice[A]`` is the chosen
  mask of feasible set ``A`` (index 0 unused).
* ``order`` lists the nonempty masks in canonical (size, names) order.
* Every checker returns an integer triple ``(A, B, x)``; ``A == -1`` means the
  condition holds.  Unused slots are -1.  ``x`` is a bit index or a mask,
  depending on the axiom.
"""

import numpy as np


def check_alpha(choice, order):
    k = 0
    while (1 << k) < choice.shape[0]:
        k += 1
    for A in order:
        for B in order:
            su = choice[A | B]
            both = choice[A] & choice[B]
            inter = A & B
            for x in range(k):
                bit = 1 << x
                if inter & bit and su & bit and not both & bit:
                    return A, B, x
    return -1, -1, -1


def check_gamma(choice, order):
    k = 0
    while (1 << k) < choice.shape[0]:
        k += 1
    for A in order:
        for B in order:
            both = choice[A] & choice[B]
            su = choice[A | B]
            for x in range(k):
                bit = 1 << x
                if both & bit and not su & bit:
                    return A, B, x
    return -1, -1, -1


def check_alpha_hat_ssp(choice, order):
    for A in order:
        sa = choice[A]
        for B in order:
            if sa & ~B == 0 and B & ~A == 0 and choice[B] != sa:
                return A, B, -1
    return -1, -1, -1


def check_alpha_hat_def(choice, order):
    for A in order:
        for B in order:
            X = choice[A | B]
            if X & ~(A & B) == 0 and (choice[A] != X or choice[B] != X):
                return A, B, X
    return -1, -1, -1


def check_gamma_hat(choice, order):
    for A in order:
        X = choice[A]
        for B in order:
            if choice[B] == X and choice[A | B] != X:
                return A, B, X
    return -1, -1, -1


def check_warp(choice, order):
    for A in order:
        sa = choice[A]
        for B in order:
            if B & ~A == 0:
                meet = sa & B
                if meet != 0 and meet != choice[B]:
                    return A, B, -1
    return -1, -1, -1


def check_path_independence(choice, order):
    for A in order:
        for B in order:
            if choice[A | B] != choice[choice[A] | choice[B]]:
                return A, B, -1
    return -1, -1, -1


def check_aizerman(choice, order):
    for A in order:
        sa = choice[A]
        for B in order:
            if sa & ~B == 0 and B & ~A == 0 and choice[B] & ~sa != 0:
                return A, B, -1
    return -1, -1, -1


def check_generalized_condorcet(choice, order):
    k = 0
    while (1 << k) < choice.shape[0]:
        k += 1
    for A in order:
        if A & (A - 1) == 0:
            continue
        for x in range(k):
            bit = 1 << x
            if not A & bit:
                continue
            wins_all = True
            for y in range(k):
                other = 1 << y
                if y != x and A & other and choice[bit | other] != bit:
                    wins_all = False
                    break
            if wins_all and choice[A] != bit:
                return A, -1, x
    return -1, -1, -1


def stable_mask(choice, order, feasible):
    """Flag, per position of ``order``, whether that set is stable in ``feasible``."""
    out = np.zeros(order.shape[0], dtype=np.bool_)
    k = 0
    while (1 << k) < choice.shape[0]:
        k += 1
    for i in range(order.shape[0]):
        X = order[i]
        if X & ~feasible != 0 or choice[X] != X:
            continue
        ok = True
        outside = feasible & ~X
        for a in range(k):
            bit = 1 << a
            if outside & bit and choice[X | bit] & bit:
                ok = False
                break
        out[i] = ok
    return out


def margin_matrix(ranks, mult):
    """Net majority margins from per-entry class ranks (lower rank is better)."""
    e, k = ranks.shape
    m = np.zeros((k, k), dtype=np.int64)
    for r in range(e):
        w = mult[r]
        for a in range(k):
            ra = ranks[r, a]
            for b in range(a + 1, k):
                rb = ranks[r, b]
                if ra < rb:
                    m[a, b] += w
                    m[b, a] -= w
                elif rb < ra:
                    m[a, b] -= w
                    m[b, a] += w
    return m


KERNELS = (
    "check_alpha",
    "check_gamma",
    "check_alpha_hat_ssp",
    "check_alpha_hat_def",
    "check_gamma_hat",
    "check_warp",
    "check_path_independence",
    "check_aizerman",
    "check_generalized_condorcet",
    "stable_mask",
    "margin_matrix",
)
