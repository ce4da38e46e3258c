"""Command-line entry point: ``wadgeposet <verb> ...``.

Posets are given as JSON files, ``-`` for stdin, ``fixture:NAME`` or a family
truncation ``P:n:M`` / ``Q:n:M``. Results go to stdout as JSON unless
``--out`` names a file. Exit status: 0 found/true, 1 none/false, 2 error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import classes, families, game, hom, poset, scott
from .errors import BudgetExceeded, WadgeError

DEFAULT_BUDGET = 10**8

_FAMILY = re.compile(r"^([PQ]):(\d+):(\d+)$")


class UsageError(Exception):
    pass


def read_poset(spec: str) -> poset.ColoredPoset:
    if spec.startswith("fixture:"):
        return families.fixture(spec.split(":", 1)[1])
    m = _FAMILY.match(spec)
    if m and not Path(spec).exists():
        return families.FamilySpec(m[1], int(m[2]), int(m[3])).build()
    return poset.poset_from_dict(_read_json(spec))


def _read_json(spec: str):
    try:
        text = sys.stdin.read() if spec == "-" else Path(spec).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{spec}: invalid JSON ({exc})") from None


def read_family(spec: str) -> scott.SetFamily:
    """A SetFamily JSON file, or any poset (whose family is built)."""
    if spec.startswith("fixture:") or _FAMILY.match(spec):
        return scott.build_A(read_poset(spec))
    d = _read_json(spec)
    if isinstance(d, dict) and "members" in d:
        return scott.SetFamily.from_json(d)
    return scott.build_A(poset.poset_from_dict(d))


class Output:
    def __init__(self, args):
        self.path = getattr(args, "out", None)
        self.pretty = getattr(args, "pretty", False)

    def json(self, obj) -> None:
        self.text(json.dumps(obj, indent=2 if self.pretty else None, ensure_ascii=False))

    def text(self, s: str) -> None:
        if self.path:
            Path(self.path).write_text(s + "\n")
        else:
            print(s)


# -- verbs -------------------------------------------------------------------

def cmd_validate(args, out):
    P = read_poset(args.poset)
    check = {
        "shrub": classes.is_shrub,
        "embeddable": classes.is_embeddable,
        "finite_branching": classes.is_finite_branching,
    }[args.cls]
    rep = check(P)
    out.json(rep.to_json())
    return 0 if rep.holds else 1


def _hom_json(res: hom.SearchResult, P, Q) -> dict:
    d = res.to_json()
    if res.hom is not None:
        d["names"] = {P.label_of(p): Q.label_of(q) for p, q in enumerate(res.hom.map)}
    return d


def cmd_hom(args, out):
    P, Q = read_poset(args.source), read_poset(args.target)
    res = hom.search_hom(P, Q, args.mode, args.budget, prune=not args.no_prune)
    out.json(_hom_json(res, P, Q))
    return 0 if res.found else 1


def cmd_compare(args, out):
    P, Q = read_poset(args.left), read_poset(args.right)
    v = hom.compare(P, Q, args.budget)
    out.json(v.to_json())
    return 0


def cmd_matrix(args, out):
    ps = [read_poset(s) for s in args.posets]
    table = hom.matrix(ps, args.budget)
    if args.pretty:
        out.text(hom.matrix_to_text(ps, table))
    else:
        out.json(hom.matrix_to_json(ps, table))
    return 2 if any(isinstance(c, BudgetExceeded) for row in table for c in row) else 0


def cmd_build_set(args, out):
    out.json(scott.build_A(read_poset(args.poset)).to_json())
    return 0


def _load_hom(spec, P, Q) -> hom.Homomorphism:
    h = hom.Homomorphism.from_json(_read_json(spec), P, Q)
    if not hom.verify_hom(h):
        raise UsageError(f"{spec} is not a homomorphism")
    return h


def cmd_reduce(args, out):
    P, Q = read_poset(args.source), read_poset(args.target)
    if args.hom:
        h = _load_hom(args.hom, P, Q)
    else:
        h = hom.find_hom(P, Q, budget=args.budget)
        if h is None:
            out.json({"found": False})
            return 1
    out.json(scott.build_reduction(P, Q, h).to_json())
    return 0


def cmd_verify_reduction(args, out):
    P, Q = read_poset(args.source), read_poset(args.target)
    f = scott.MonotoneMap.from_json(_read_json(args.map))
    bad = f.monotonicity_violation()
    if bad is not None:
        out.json({"holds": False, "reason": "not monotone", "counterexample": [poset.bits(x) for x in bad]})
        return 1
    c = scott.verify_reduction(P, Q, f)
    d = {"holds": c.holds}
    if not c.holds:
        d["reason"] = c.reason
        if c.witness is not None:
            d["counterexample"] = poset.bits(c.witness)
    out.json(d)
    return 0 if c.holds else 1


def cmd_extract_hom(args, out):
    P, Q = read_poset(args.source), read_poset(args.target)
    f = scott.MonotoneMap.from_json(_read_json(args.map))
    h = scott.extract_hom(P, Q, f)
    c = hom.verify_hom(h)
    out.json({"hom": h.to_json(), "verified": c.holds})
    return 0 if c.holds else 1


def cmd_rank(args, out):
    A = read_family(args.family)
    out.json({"universe": A.universe, "rank": scott.alternation_rank(A, args.method)})
    return 0


def cmd_approx(args, out):
    A = read_family(args.family)
    c = scott.is_approximable(A, args.complement)
    d = {"holds": c.holds, "complement": args.complement}
    if not c.holds:
        d["witness"] = "TOP" if c.witness is scott.TOP else poset.bits(c.witness)
    out.json(d)
    return 0 if c.holds else 1


def cmd_gen(args, out):
    P = families.FamilySpec(args.family, args.n, args.branches).build()
    out.json(poset.poset_to_dict(P))
    return 0


def cmd_fixture(args, out):
    if args.list or not args.name:
        out.json(families.fixture_names())
        return 0
    out.json(poset.poset_to_dict(families.fixture(args.name)))
    return 0


def cmd_play(args, out):
    P, Q = read_poset(args.source), read_poset(args.target)
    tau = None
    if args.strategy:
        tau = game.Strategy.from_json(_read_json(args.strategy), P, Q)
    if args.script is not None:
        if tau is None:
            tau = game.machine_strategy(P, Q)
        moves = [P.index(x) for x in args.script.split(",") if x]
        s = game.play_vs_strategy(P, Q, tau, moves)
        d = game.run_to_json(s)
        d["winner"] = game.judge(s)
        out.json(d)
        return 0 if d["winner"] == "II" else 1
    s = game.repl(P, Q, args.role, strategy=tau)
    if s is None:
        return 1
    if args.out:
        out.json(game.run_to_json(s))
    return 0


def cmd_export_dot(args, out):
    out.text(poset.to_dot(read_poset(args.poset)))
    return 0


def cmd_oracle(args, out):
    P, Q = read_poset(args.source), read_poset(args.target)
    f = scott.brute_force_reduction_exists(P, Q, args.budget, unrestricted=args.unrestricted)
    if f is None:
        out.json({"found": False})
        return 1
    out.json({"found": True, "map": f.to_json()})
    return 0


EXPERIMENTS = {
    # family, default truncation, expected verdict of row i against column j > i
    "illfounded": ("P", 6, "strictly_greater"),
    "antichain": ("Q", 8, "incomparable"),
}


def experiment(kind: str, nmax: int, branches: int | None = None, budget: int | None = None):
    """Build the family members ``1..nmax``, compare them pairwise and check
    the off-diagonal pattern. Returns ``(posets, table, report)``."""
    fam, default_M, expected = EXPERIMENTS[kind]
    M = branches or default_M
    ps = [families.FamilySpec(fam, i, M).build() for i in range(1, nmax + 1)]
    table = hom.matrix(ps, budget)
    mirror = {"strictly_greater": "strictly_less"}.get(expected, expected)
    ok = True
    for i in range(nmax):
        for j in range(nmax):
            c = table[i][j]
            want = "equivalent" if i == j else expected if i < j else mirror
            ok &= not isinstance(c, BudgetExceeded) and c.verdict == want
    report = hom.matrix_to_json(ps, table)
    report.update({"experiment": kind, "branches": M, "expected_off_diagonal": expected, "pass": bool(ok)})
    return ps, table, report


def cmd_experiment(args, out):
    if args.nmax < 1:
        raise UsageError("--nmax must be at least 1")
    ps, table, rep = experiment(args.kind, args.nmax, args.branches, args.budget)
    if args.pretty:
        out.text(hom.matrix_to_text(ps, table) + f"\npattern {'matches' if rep['pass'] else 'differs'}")
    else:
        out.json(rep)
    return 0 if rep["pass"] else 1


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result to this file instead of stdout")
    common.add_argument("--pretty", action="store_true", help="indented JSON / text tables")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--seed", type=int, help="reserved; nothing is randomized")

    ap = argparse.ArgumentParser(prog="wadgeposet", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    p = verb("validate", cmd_validate, "class membership report")
    p.add_argument("poset")
    p.add_argument("--class", dest="cls", default="embeddable", choices=["shrub", "embeddable", "finite_branching"])

    p = verb("hom", cmd_hom, "search a homomorphism SOURCE -> TARGET")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--mode", default="plain", choices=hom.MODES)
    p.add_argument("--no-prune", action="store_true", help="disable the strength filter")

    p = verb("compare", cmd_compare, "homomorphisms both ways")
    p.add_argument("left")
    p.add_argument("right")

    p = verb("matrix", cmd_matrix, "pairwise comparison table")
    p.add_argument("posets", nargs="+")

    p = verb("build-set", cmd_build_set, "the family of labels of color-1 elements")
    p.add_argument("poset")

    p = verb("reduce", cmd_reduce, "monotone reduction induced by a homomorphism")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--hom", help="homomorphism JSON; searched for when omitted")

    for name, fn, help in (
        ("verify-reduction", cmd_verify_reduction, "check a monotone map is a reduction"),
        ("extract-hom", cmd_extract_hom, "homomorphism read off a reduction"),
    ):
        p = verb(name, fn, help)
        p.add_argument("source")
        p.add_argument("target")
        p.add_argument("map")

    p = verb("rank", cmd_rank, "alternation rank of a family (or of a poset's family)")
    p.add_argument("family")
    p.add_argument("--method", default="auto", choices=scott.RANK_METHODS)

    p = verb("approx", cmd_approx, "finite approximability of a family")
    p.add_argument("family")
    p.add_argument("--complement", action="store_true")

    p = verb("gen", cmd_gen, "generate a family truncation")
    p.add_argument("family", choices=["P", "Q"])
    p.add_argument("n", type=int)
    p.add_argument("--branches", type=int, required=True)

    p = verb("fixture", cmd_fixture, "print a named fixture")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")

    p = verb("play", cmd_play, "play the reduction game")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--role", default="I", choices=["I", "II"], help="the human's side")
    p.add_argument("--strategy", help="strategy JSON for the machine's II")
    p.add_argument("--script", help="comma-separated moves of I; plays non-interactively")

    p = verb("export-dot", cmd_export_dot, "Hasse diagram in DOT")
    p.add_argument("poset")

    p = verb("oracle", cmd_oracle, "brute-force search for a reduction")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--unrestricted", action="store_true", help="allow every subset as a value")

    p = verb("experiment", cmd_experiment, "comparison matrix of a family")
    p.add_argument("kind", choices=sorted(EXPERIMENTS))
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--branches", type=int)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = Output(args)
    try:
        return args.fn(args, out)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget_exceeded", "nodes": exc.nodes}), file=sys.stderr)
        return 2
    except (WadgeError, UsageError, ValueError, KeyError, IndexError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"wadgeposet: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
