"""Command-line interface.

Exit codes: 0 success or all checks hold, 1 a violation was found, 2 usage
or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import repro
from .axioms import AXIOMS, check_axiom, stable_sets
from .choice import (
    base_relation_alts,
    base_relation_sets,
    export_dot,
    induce_table,
    parse_table,
    revealed_relation_alts,
    revealed_relation_sets,
    serialize_table,
)
from .errors import SetratError
from .prefs import fmt_set, format_profile, parse_profile
from .scf import REGISTRY, get_scf
from .search import MODES, GeneratorSpec, search_counterexample

RELATIONS = {
    "base-sets": base_relation_sets,
    "revealed-sets": revealed_relation_sets,
    "base-alts": base_relation_alts,
    "revealed-alts": revealed_relation_alts,
}


class UsageError(Exception):
    pass


class _Once(argparse.Action):
    """Store a value but refuse a second occurrence of the flag."""

    def __call__(self, parser, namespace, values, option_string=None):
        if getattr(namespace, f"_seen_{self.dest}", False):
            parser.error(f"{option_string} given more than once")
        setattr(namespace, f"_seen_{self.dest}", True)
        setattr(namespace, self.dest, values)


def _csv(text):
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected a comma-separated list")
    return items


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="setrat",
        description="Consistency checks for choice tables and social choice rules.",
        epilog="exit status: 0 ok or all checks hold, 1 violation found, 2 usage or input error",
    )
    sub = p.add_subparsers(dest="command", required=True)
    scf_help = "rule token: " + ", ".join(REGISTRY)

    e = sub.add_parser("eval", help="evaluate a rule on one feasible set")
    e.add_argument("--scf", required=True, action=_Once, help=scf_help)
    e.add_argument("--profile", required=True, action=_Once, type=Path)
    e.add_argument("--set", dest="feasible", required=True, action=_Once, type=_csv)

    t = sub.add_parser("table", help="print the choice table a rule induces on a profile")
    t.add_argument("--scf", required=True, action=_Once, help=scf_help)
    t.add_argument("--profile", required=True, action=_Once, type=Path)
    t.add_argument("--out", action=_Once, type=Path)

    a = sub.add_parser("axioms", help="check consistency axioms")
    a.add_argument("--check", required=True, action=_Once, type=_csv, help=", ".join(AXIOMS))
    _table_source(a, scf_help)
    a.add_argument("--json", action="store_true", help="machine-readable output")

    s = sub.add_parser("stable", help="enumerate stable sets of a table in one feasible set")
    s.add_argument("--input", required=True, action=_Once, type=Path)
    s.add_argument("--set", dest="feasible", required=True, action=_Once, type=_csv)

    q = sub.add_parser("search", help="search profiles for an axiom violation")
    q.add_argument("--scf", required=True, action=_Once, help=scf_help)
    q.add_argument("--axiom", required=True, action=_Once, help=", ".join(AXIOMS) + ", self_stable")
    q.add_argument("--voters", type=int, action=_Once, default=None)
    q.add_argument("--alts", type=int, required=True, action=_Once)
    q.add_argument("--linear", action="store_true")
    q.add_argument("--mode", choices=MODES, default="exhaustive", action=_Once)
    q.add_argument("--count", type=int, action=_Once)
    q.add_argument("--seed", type=int, action=_Once)

    r = sub.add_parser("repro", help="write a bundled example and re-run its checks")
    r.add_argument("name", choices=repro.NAMES + ("all",))
    r.add_argument("--out-dir", type=Path, default=Path("."), action=_Once)

    d = sub.add_parser("dot", help="export a relation as a DOT digraph")
    _table_source(d, scf_help)
    d.add_argument("--relation", choices=tuple(RELATIONS), default="revealed-sets", action=_Once)
    d.add_argument("--out", type=Path, action=_Once)
    return p


def _table_source(p, scf_help):
    p.add_argument("--input", type=Path, action=_Once, help="choice table (.ct)")
    p.add_argument("--scf", action=_Once, help=scf_help)
    p.add_argument("--profile", type=Path, action=_Once, help="profile (.prof)")


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_table(args):
    if args.input is not None:
        if args.scf is not None or args.profile is not None:
            raise UsageError("give either --input or --scf with --profile, not both")
        return parse_table(_read(args.input))
    if args.scf is None or args.profile is None:
        raise UsageError("need --input FILE.ct, or --scf ID together with --profile FILE")
    return induce_table(get_scf(args.scf), parse_profile(_read(args.profile)))


def _eval(args, out):
    profile = parse_profile(_read(args.profile))
    chosen = get_scf(args.scf)(profile, args.feasible)
    out.append(fmt_set(chosen))
    return 0


def _table(args, out):
    table = induce_table(get_scf(args.scf), parse_profile(_read(args.profile)))
    text = serialize_table(table)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        out.append(text.rstrip("\n"))
    return 0


def _axioms(args, out):
    unknown = [c for c in args.check if c not in AXIOMS]
    if unknown:
        raise UsageError(f"unknown axiom {unknown[0]!r}; choose from {', '.join(AXIOMS)}")
    table = _load_table(args)
    verdicts = [check_axiom(table, c) for c in args.check]
    if args.json:
        out.append(json.dumps([v.to_dict() for v in verdicts], indent=2))
    else:
        out.extend(v.report_line() for v in verdicts)
    return 0 if all(v.holds for v in verdicts) else 1


def _stable(args, out):
    report = stable_sets(parse_table(_read(args.input)), args.feasible)
    out.append(report.describe())
    return 0


def _search(args, out):
    if args.axiom not in AXIOMS + ("self_stable",):
        raise UsageError(f"unknown axiom {args.axiom!r}")
    get_scf(args.scf)
    if args.mode == "random" and (args.seed is None or args.count is None):
        raise UsageError("random mode needs --count and --seed")
    if args.mode != "tournament" and args.voters is None:
        raise UsageError("--voters is required")
    try:
        gen = GeneratorSpec(args.mode, args.voters or 0, args.alts, args.linear, args.count, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    found = search_counterexample(args.scf, args.axiom, gen)
    if found is None:
        out.append("no counterexample in space")
        return 0
    profile, witness = found
    out.append(f"# counterexample: scf={args.scf} axiom={args.axiom}")
    out.append(format_profile(profile).rstrip("\n"))
    out.append(f"# witness: {witness.describe()}")
    return 1


def _repro(args, out):
    names = repro.NAMES if args.name == "all" else (args.name,)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    all_ok = True
    for name in names:
        path = repro.write_fixture(name, args.out_dir)
        out.append(f"== {name} (wrote {path})")
        for label, ok, detail in repro.run(name):
            all_ok &= ok
            out.append(f"{'PASS' if ok else 'FAIL'} {label}" + (f"  [{detail}]" if detail else ""))
    out.append("PASS" if all_ok else "FAIL")
    return 0 if all_ok else 1


def _dot(args, out):
    text = export_dot(RELATIONS[args.relation](_load_table(args)))
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        out.append(text.rstrip("\n"))
    return 0


COMMANDS = {
    "eval": _eval,
    "table": _table,
    "axioms": _axioms,
    "stable": _stable,
    "search": _search,
    "repro": _repro,
    "dot": _dot,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out: list[str] = []
    try:
        code = COMMANDS[args.command](args, out)
    except (UsageError, SetratError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        if out:
            print("\n".join(out))
        print(f"setrat {args.command}: error: {msg}", file=sys.stderr)
        return 2
    if out:
        print("\n".join(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
