"""Vectorized numpy kernels, used when numba is unavailable or disabled.

Each function loops over the outer set ``A`` in canonical order and
vectorizes the inner scan over ``B``, so the first violation found is the
same one the scalar kernels report.
"""

import numpy as np

_NONE = (-1, -1, -1)


def _first(flags):
    hits = np.flatnonzero(flags)
    return int(hits[0]) if hits.size else -1


def _lowest_bit(v):
    v = int(v)
    return (v & -v).bit_length() - 1


def check_alpha(choice, order):
    S_B = choice[order]
    for A in order:
        bad = (A & order) & choice[A | order] & ~(choice[A] & S_B)
        i = _first(bad)
        if i >= 0:
            return int(A), int(order[i]), _lowest_bit(bad[i])
    return _NONE


def check_gamma(choice, order):
    S_B = choice[order]
    for A in order:
        bad = choice[A] & S_B & ~choice[A | order]
        i = _first(bad)
        if i >= 0:
            return int(A), int(order[i]), _lowest_bit(bad[i])
    return _NONE


def check_alpha_hat_ssp(choice, order):
    S_B = choice[order]
    for A in order:
        sa = choice[A]
        bad = ((sa & ~order) == 0) & ((order & ~A) == 0) & (S_B != sa)
        i = _first(bad)
        if i >= 0:
            return int(A), int(order[i]), -1
    return _NONE


def check_alpha_hat_def(choice, order):
    S_B = choice[order]
    for A in order:
        X = choice[A | order]
        bad = ((X & ~(A & order)) == 0) & ((choice[A] != X) | (S_B != X))
        i = _first(bad)
        if i >= 0:
            return int(A), int(order[i]), int(X[i])
    return _NONE


def check_gamma_hat(choice, order):
    S_B = choice[order]
    for A in order:
        X = choice[A]
        bad = (S_B == X) & (choice[A | order] != X)
        i = _first(bad)
        if i >= 0:
            return int(A), int(order[i]), int(X)
    return _NONE


def check_warp(choice, order):
    S_B = choice[order]
    for A in order:
        meet = choice[A] & order
        bad = ((order & ~A) == 0) & (meet != 0) & (meet != S_B)
        i = _first(bad)
        if i >= 0:
            return int(A), int(order[i]), -1
    return _NONE


def check_path_independence(choice, order):
    S_B = choice[order]
    for A in order:
        bad = choice[A | order] != choice[choice[A] | S_B]
        i = _first(bad)
        if i >= 0:
            return int(A), int(order[i]), -1
    return _NONE


def check_aizerman(choice, order):
    S_B = choice[order]
    for A in order:
        sa = choice[A]
        bad = ((sa & ~order) == 0) & ((order & ~A) == 0) & ((S_B & ~sa) != 0)
        i = _first(bad)
        if i >= 0:
            return int(A), int(order[i]), -1
    return _NONE


def check_generalized_condorcet(choice, order):
    k = choice.shape[0].bit_length() - 1
    bits = np.left_shift(1, np.arange(k, dtype=np.int64))
    # pairwise_wins[x]: mask of y (plus x itself) with S({x,y}) == {x}
    pairwise_wins = np.array(
        [bits[x] | np.bitwise_or.reduce(np.where(choice[bits[x] | bits] == bits[x], bits, 0))
         for x in range(k)],
        dtype=np.int64,
    ) if k else np.zeros(0, dtype=np.int64)
    for A in order:
        if A & (A - 1) == 0:
            continue
        inside = (A & bits) != 0
        covered = (A & ~pairwise_wins) == 0
        bad = inside & covered & (choice[A] != bits)
        x = _first(bad)
        if x >= 0:
            return int(A), -1, x
    return _NONE


def stable_mask(choice, order, feasible):
    k = choice.shape[0].bit_length() - 1
    ok = ((order & ~feasible) == 0) & (choice[order] == order)
    outside = feasible & ~order
    for a in range(k):
        bit = 1 << a
        ok &= ~(((outside & bit) != 0) & ((choice[order | bit] & bit) != 0))
    return ok


def margin_matrix(ranks, mult):
    ranks = np.asarray(ranks, dtype=np.int64)
    diff = np.sign(ranks[:, None, :] - ranks[:, :, None])
    return np.einsum("e,eab->ab", np.asarray(mult, dtype=np.int64), diff).astype(np.int64)
