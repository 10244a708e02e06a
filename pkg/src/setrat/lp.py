"""Exact rational linear programming and maximal lotteries.

A dense two-phase tableau simplex over :class:`fractions.Fraction` with
Bland's rule (lowest-index entering column, lowest-index leaving basic
variable on ratio ties), so it always terminates and is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import InternalError
from .prefs import MarginMatrix

SENSES = ("<=", ">=", "=")


def _q(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or strings")
    return Fraction(v)


@dataclass(frozen=True)
class LinearProgram:
    """``maximize (or minimize) c.x`` subject to ``A x (sense) b`` and variable bounds.

    ``bounds[j] = (lo, hi)``; ``None`` means unbounded on that side.  The
    default bound of every variable is ``(0, None)``.
    """

    objective: Sequence
    A: Sequence[Sequence]
    senses: Sequence[str]
    b: Sequence
    bounds: Sequence | None = None
    maximize: bool = True

    def __post_init__(self):
        n = len(self.objective)
        if len(self.A) != len(self.b) or len(self.A) != len(self.senses):
            raise ValueError("constraint rows, senses and right-hand sides differ in length")
        if any(len(row) != n for row in self.A):
            raise ValueError("constraint row length differs from number of variables")
        if any(s not in SENSES for s in self.senses):
            raise ValueError(f"senses must be among {SENSES}")
        if self.bounds is not None and len(self.bounds) != n:
            raise ValueError("bounds length differs from number of variables")


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple = field(default=())
    value: Fraction | None = None


class _Tableau:
    """Rows ``T[i]`` hold constraint coefficients with the rhs in the last column."""

    def __init__(self, rows, rhs, basis):
        self.T = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.basis = list(basis)

    def pivot(self, r, c):
        T = self.T
        pr = T[r]
        inv = 1 / pr[c]
        if inv != 1:
            T[r] = pr = [v * inv for v in pr]
        for i, row in enumerate(T):
            if i != r:
                f = row[c]
                if f:
                    T[i] = [v - f * p for v, p in zip(row, pr)]
        self.basis[r] = c

    def reduced_costs(self, cost, columns):
        # maximize cost.x ; reduced cost d_j = c_j - c_B B^-1 a_j
        cb = [cost[j] for j in self.basis]
        out = {}
        for j in columns:
            d = cost[j]
            for cbi, row in zip(cb, self.T):
                if cbi and row[j]:
                    d -= cbi * row[j]
            out[j] = d
        return out

    def optimize(self, cost, allowed):
        """Primal simplex with Bland's rule; returns False if unbounded."""
        allowed = sorted(allowed)
        while True:
            basic = set(self.basis)
            d = self.reduced_costs(cost, [j for j in allowed if j not in basic])
            entering = next((j for j in allowed if d.get(j, 0) > 0), None)
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.T):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)


def _standard_form(lp: LinearProgram):
    """Map to ``max c'.y, A'y (sense) b', y >= 0``; returns the recovery map too."""
    n = len(lp.objective)
    bounds = lp.bounds or [(0, None)] * n
    c = [_q(v) for v in lp.objective]
    if not lp.maximize:
        c = [-v for v in c]
    rows = [[_q(v) for v in r] for r in lp.A]
    senses = list(lp.senses)
    rhs = [_q(v) for v in lp.b]
    # each original x_j = shift_j + sum(coef * y_col)
    recover = []
    cols = []  # per new column: (orig j, coef)
    shift = []
    extra = []
    for j, (lo, hi) in enumerate(bounds):
        lo = None if lo is None else _q(lo)
        hi = None if hi is None else _q(hi)
        if lo is not None:
            shift.append(lo)
            cols.append((j, Fraction(1)))
            recover.append([len(cols) - 1])
            if hi is not None:
                extra.append((len(cols) - 1, hi - lo))
        elif hi is not None:
            shift.append(hi)
            cols.append((j, Fraction(-1)))
            recover.append([len(cols) - 1])
        else:
            shift.append(Fraction(0))
            cols.append((j, Fraction(1)))
            cols.append((j, Fraction(-1)))
            recover.append([len(cols) - 2, len(cols) - 1])
    new_rows = []
    new_rhs = []
    for row, b in zip(rows, rhs):
        new_rows.append([row[j] * s for j, s in cols])
        new_rhs.append(b - sum(row[j] * shift[j] for j in range(n)))
    for col, width in extra:
        r = [Fraction(0)] * len(cols)
        r[col] = Fraction(1)
        new_rows.append(r)
        senses.append("<=")
        new_rhs.append(width)
    new_c = [c[j] * s for j, s in cols]
    offset = sum(c[j] * shift[j] for j in range(n))
    return new_c, new_rows, senses, new_rhs, cols, shift, offset


def simplex_solve(lp: LinearProgram) -> LPResult:
    """Solve ``lp`` exactly.  Deterministic: identical inputs give identical outputs."""
    c, rows, senses, rhs, cols, shift, offset = _standard_form(lp)
    nv = len(c)
    m = len(rows)
    # normalize rhs >= 0
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
            senses[i] = {"<=": ">=", ">=": "<=", "=": "="}[senses[i]]
    n_slack = sum(s != "=" for s in senses)
    n_art = sum(s != "<=" for s in senses)
    width = nv + n_slack + n_art
    full = []
    basis = []
    artificial = []
    s_col = nv
    a_col = nv + n_slack
    for i in range(m):
        r = rows[i] + [Fraction(0)] * (n_slack + n_art)
        if senses[i] == "<=":
            r[s_col] = Fraction(1)
            basis.append(s_col)
            s_col += 1
        else:
            if senses[i] == ">=":
                r[s_col] = Fraction(-1)
                s_col += 1
            r[a_col] = Fraction(1)
            basis.append(a_col)
            artificial.append(a_col)
            a_col += 1
        full.append(r)
    tab = _Tableau(full, rhs, basis)

    if artificial:
        phase1 = [Fraction(0)] * width
        for j in artificial:
            phase1[j] = Fraction(-1)
        tab.optimize(phase1, range(width))
        infeas = sum(row[-1] for row, bj in zip(tab.T, tab.basis) if bj in artificial)
        if infeas != 0:
            return LPResult("infeasible")
        # drive remaining (zero-level) artificials out of the basis
        art = set(artificial)
        i = 0
        while i < len(tab.T):
            if tab.basis[i] in art:
                col = next((j for j in range(nv + n_slack) if tab.T[i][j] != 0), None)
                if col is None:
                    del tab.T[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, col)
            i += 1
        for row in tab.T:
            for j in artificial:
                row[j] = Fraction(0)

    cost = c + [Fraction(0)] * (width - nv)
    if not tab.optimize(cost, range(nv + n_slack)):
        return LPResult("unbounded")
    y = [Fraction(0)] * width
    for row, bj in zip(tab.T, tab.basis):
        y[bj] = row[-1]
    x = list(shift)
    for (j, s), val in zip(cols, y[:nv]):
        x[j] += s * val
    value = sum(_q(cj) * xj for cj, xj in zip(lp.objective, x))
    return LPResult("optimal", tuple(x), value)


# -- maximal lotteries -------------------------------------------------------


def _matrix(m):
    if isinstance(m, MarginMatrix):
        return m.alternatives, m.m
    arr = np.asarray(m, dtype=np.int64)
    return tuple(range(arr.shape[0])), arr


def _lottery_lp(M, objective):
    k = M.shape[0]
    A = [[1] * k] + [[int(M[i, j]) for i in range(k)] for j in range(k)]
    senses = ["="] + [">="] * k
    b = [1] + [0] * k
    return LinearProgram(objective, A, senses, b)


def is_maximal_lottery(M, p) -> bool:
    """``p >= 0``, ``sum(p) == 1`` and ``p^T M >= 0``, all exact."""
    k = M.shape[0]
    if any(v < 0 for v in p) or sum(p) != 1:
        return False
    return all(sum(p[i] * int(M[i, j]) for i in range(k)) >= 0 for j in range(k))


@lru_cache(maxsize=65536)
def _maximal_lottery_cached(k, raw):
    M = np.frombuffer(raw, dtype=np.int64).reshape(k, k)
    res = simplex_solve(_lottery_lp(M, [0] * k))
    if res.status != "optimal" or not is_maximal_lottery(M, res.x):
        raise InternalError(f"maximal lottery LP failed: {res.status}")
    return res.x


def maximal_lottery(m) -> dict:
    """An optimal mixed strategy of the symmetric zero-sum game with payoffs ``m``.

    Returns ``{alternative: Fraction}``.
    """
    names, M = _matrix(m)
    _check_skew(M)
    M = np.ascontiguousarray(M, dtype=np.int64)
    return dict(zip(names, _maximal_lottery_cached(M.shape[0], M.tobytes())))


@lru_cache(maxsize=65536)
def _support_cached(k, raw):
    M = np.frombuffer(raw, dtype=np.int64).reshape(k, k)
    found = set()
    for a in range(k):
        if a in found:
            continue
        obj = [0] * k
        obj[a] = 1
        res = simplex_solve(_lottery_lp(M, obj))
        if res.status != "optimal" or not is_maximal_lottery(M, res.x):
            raise InternalError(f"support LP failed for index {a}: {res.status}")
        if res.value > 0:
            found.update(i for i, v in enumerate(res.x) if v > 0)
    return frozenset(found)


def essential_support(m) -> frozenset:
    """Alternatives with positive probability in some maximal lottery.

    One maximising LP per alternative not yet covered: maximize ``p_a`` over the
    optimal-strategy polytope.  Any positive coordinate of an optimal point is
    itself covered, so it is skipped.
    """
    names, M = _matrix(m)
    _check_skew(M)
    M = np.ascontiguousarray(M, dtype=np.int64)
    return frozenset(names[i] for i in _support_cached(M.shape[0], M.tobytes()))


def _check_skew(M):
    if M.ndim != 2 or M.shape[0] != M.shape[1] or not np.array_equal(M, -M.T):
        raise ValueError("margin matrix must be square and skew-symmetric")


def format_lottery(p: dict) -> str:
    return " ".join(f"p({a})={v}" for a, v in p.items())
