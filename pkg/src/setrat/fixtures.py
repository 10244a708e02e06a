"""Worked examples shipped with the package: two profiles and three choice tables."""

from .choice import parse_table
from .prefs import parse_profile

TABLE1_PROF = """\
# Condorcet paradox: three voters, cyclic majority a > b > c > a
1: a > b > c
1: c > a > b
1: b > c > a
"""

TABLE2_PROF = """\
# six voters; a is the unique weak Condorcet winner, a and b tie
3: a > c > b
2: b > a > c
1: c > b > a
"""

FIG1_CT = """\
# satisfies alpha_hat and gamma_hat, violates alpha
{a} -> {a}
{b} -> {b}
{c} -> {c}
{a,b} -> {a}
{a,c} -> {c}
{b,c} -> {b}
{a,b,c} -> {a,b,c}
"""

FIG2_CT = """\
# rationalizable (a over c over b), violates alpha_hat
{a} -> {a}
{b} -> {b}
{c} -> {c}
{a,b} -> {a,b}
{a,c} -> {a}
{b,c} -> {c}
{a,b,c} -> {a}
"""

GAMMA_CT = """\
# satisfies gamma, violates gamma_hat
{a} -> {a}
{b} -> {b}
{c} -> {c}
{a,b} -> {a}
{a,c} -> {a}
{b,c} -> {b}
{a,b,c} -> {a,b,c}
"""

FILES = {
    "table1": ("table1.prof", TABLE1_PROF),
    "table2": ("table2.prof", TABLE2_PROF),
    "fig1": ("fig1.ct", FIG1_CT),
    "fig2": ("fig2.ct", FIG2_CT),
    "gamma_table": ("gamma_table.ct", GAMMA_CT),
}


def table1():
    return parse_profile(TABLE1_PROF)


def table2():
    return parse_profile(TABLE2_PROF)


def fig1():
    return parse_table(FIG1_CT)


def fig2():
    return parse_table(FIG2_CT)


def gamma_table():
    return parse_table(GAMMA_CT)
