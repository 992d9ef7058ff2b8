"""Command-line front end.

Ideals are named ``KIND:ARGS``::

    power:3,2   sqfree:3,2   box:3,2   std:3,2   trivial:3,2
    tree:5:1,3,3            (n' followed by a Pruefer sequence)
    @path/to/ideal.json     (JSON form {"variables": [...], "generators": [...]})

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import determinantal, polarize, tangent, trees
from .errors import PolhilbError
from .monomials import MonomialIdeal
from .verify import default_jobs, verify_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class NamedIdeal:
    ideal: MonomialIdeal
    kind: str
    n: int | None = None
    d: int | None = None
    tree: trees.LabeledTree | None = None
    spec: polarize.DepolarizationSpec | None = None


_BUILDERS = {
    "power": polarize.power_ideal,
    "sqfree": polarize.sqfree_power_ideal,
    "box": polarize.box_polarization,
    "std": polarize.standard_polarization,
    "trivial": polarize.trivial_polarization,
}


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def parse_ideal(name: str) -> NamedIdeal:
    if name.startswith("@"):
        path = Path(name[1:])
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read ideal from {path}: {exc}") from exc
        return NamedIdeal(MonomialIdeal.from_json(data), "json")
    kind, _, rest = name.partition(":")
    if kind == "tree":
        size, _, seq = rest.partition(":")
        try:
            n = int(size)
        except ValueError as exc:
            raise UsageError(f"bad tree size in {name!r}") from exc
        tree = trees.prufer_decode(_ints(seq), n)
        ti = trees.tree_ideal(tree)
        return NamedIdeal(ti.ideal, "tree", tree=tree, spec=ti.spec)
    if kind not in _BUILDERS:
        raise UsageError(f"unknown ideal {name!r}; kinds: {', '.join(sorted(_BUILDERS))}, tree, @file")
    args = _ints(rest)
    if len(args) != 2:
        raise UsageError(f"{kind} needs two parameters n,d")
    n, d = args
    spec = polarize.DepolarizationSpec.standard(n, d) if kind in ("box", "std", "trivial") else None
    return NamedIdeal(_BUILDERS[kind](n, d), kind, n=n, d=d, spec=spec)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def cmd_ideal(args) -> int:
    named = parse_ideal(args.ideal)
    ideal = named.ideal
    names = [g.format(ideal.universe) for g in ideal.generators]
    text = "\n".join(f"{k:>4}  {g}" for k, g in enumerate(names))
    text += f"\n{len(ideal)} generators in {ideal.nvars} variables"
    _emit(args, ideal.to_json(), text)
    return EXIT_OK


def _hypotheses(named: NamedIdeal) -> bool:
    """Whether ``Hom(I, S/I)_0`` is the Hilbert-scheme tangent space by the depth criterion."""
    if named.kind in ("box", "std", "trivial") and named.n >= 2 and named.d >= 2:
        target = polarize.power_ideal(named.n, named.d)
        try:
            return polarize.is_polarization(named.ideal, target, named.spec).ok
        except PolhilbError:
            return False
    return False


def cmd_tangent(args) -> int:
    named = parse_ideal(args.ideal)
    ideal = named.ideal
    report: dict = {"ideal": args.ideal, "dimension": tangent.tangent_dimension(ideal)}
    report["hilbertSchemeHypotheses"] = _hypotheses(named)
    if args.variable_subspace:
        report["variableSubspaceDim"] = tangent.variable_deformation_dim(ideal)
    status = EXIT_OK
    if args.verify_formula:
        if args.verify_formula == "box":
            if named.kind != "box":
                raise UsageError("--verify-formula box needs a box:n,d ideal")
            report["formulaValue"] = tangent.determinantal_component_dim(named.n, named.d)
        else:
            if named.kind != "tree":
                raise UsageError("--verify-formula tree needs a tree:n:seq ideal")
            report["formulaValue"] = trees.predicted_tangent_dim(named.tree)
        report["match"] = report["formulaValue"] == report["dimension"]
        status = EXIT_OK if report["match"] else EXIT_FAIL
    if args.basis:
        basis = tangent.deformation_basis(ideal)
        report["basis"] = [v.to_json(ideal) for v in basis]
    lines = [f"{k}: {v}" for k, v in report.items() if k != "basis"]
    if args.basis:
        for idx, v in enumerate(tangent.deformation_basis(ideal)):
            lines.append(f"basis[{idx}]:")
            lines.extend("    " + line for line in v.format(ideal) if not line.endswith("-> 0"))
    _emit(args, report, "\n".join(lines))
    return status


def cmd_component(args) -> int:
    formula = tangent.determinantal_component_dim(args.n, args.d)
    computed = tangent.tangent_dimension(polarize.box_polarization(args.n, args.d))
    report = {"n": args.n, "d": args.d, "formulaValue": formula, "boxTangentDimension": computed,
              "match": formula == computed}
    _emit(args, report, "\n".join(f"{k}: {v}" for k, v in report.items()))
    return EXIT_OK if report["match"] else EXIT_FAIL


def cmd_trees(args) -> int:
    n = args.n
    if n < 3:
        raise UsageError("--n must be at least 3")
    if args.sample is not None:
        rng = random.Random(args.seed)
        selected = [trees.random_tree(n, rng) for _ in range(args.sample)]
    else:
        selected = list(trees.all_trees(n))
    rows = []
    for tree in selected:
        row: dict = {"prufer": list(trees.prufer_encode(tree))}
        if args.enumerate:
            row["edges"] = [list(e) for e in tree.edges]
        if args.index or args.verify:
            row["index"] = trees.tree_index(tree).index
            row["predicted"] = trees.predicted_tangent_dim(tree)
        if args.verify:
            row["computed"] = tangent.tangent_dimension(trees.tree_ideal(tree).ideal)
            row["match"] = row["computed"] == row["predicted"]
        rows.append(row)
    ok = all(r.get("match", True) for r in rows)
    text = "\n".join(
        "  ".join(f"{k}={v}" for k, v in r.items()) for r in rows
    ) + f"\n{len(rows)} trees" + (f", all match: {ok}" if args.verify else "")
    _emit(args, {"n": n, "rows": rows, "passed": ok}, text)
    return EXIT_OK if ok else EXIT_FAIL


def _report_text(report: determinantal.CheckReport) -> str:
    lines = [f"degree {r.degree}: computed={r.computed} expected={r.expected} {'ok' if r.match else 'MISMATCH'}"
             for r in report.rows]
    for k, v in report.details.items():
        lines.append(f"{k}: {v}")
    lines.append(f"overall: {'PASS' if report.ok else 'FAIL'}")
    return "\n".join(lines)


def cmd_groebner(args) -> int:
    report = determinantal.verify_initial_ideal(args.n, args.d, args.max_degree)
    _emit(args, report.to_json(), _report_text(report))
    return EXIT_OK if report.ok else EXIT_FAIL


def _parameters(text: str) -> list[Fraction]:
    try:
        values = [Fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad parameters {text!r}") from exc
    if len(values) != 3:
        raise UsageError("--t takes three comma-separated values")
    return values


def cmd_flat(args) -> int:
    report = determinantal.verify_flat_family(args.d, _parameters(args.t), args.max_degree)
    _emit(args, report.to_json(), _report_text(report))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify_all(args) -> int:
    report = verify_all(args.profile, args.seed, args.jobs, args.exhaustive_7,
                        command=" ".join(["verify-all"] + args.raw_argv))
    _emit(args, report.to_json(), report.format())
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="worker processes (default: $POLHILB_JOBS or 1)")

    parser = argparse.ArgumentParser(prog="polhilb", parents=[common],
                                     description="Polarizations of m^d and their Hilbert-scheme tangent spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideal", parents=[common], help="print a named ideal")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("tangent", parents=[common], help="tangent-space dimension of an ideal")
    p.add_argument("ideal")
    p.add_argument("--basis", action="store_true", help="emit a basis of Hom(I, S/I)_0")
    p.add_argument("--variable-subspace", action="store_true", help="also compute the variable-deformation rank")
    p.add_argument("--verify-formula", choices=("box", "tree"))
    p.set_defaults(func=cmd_tangent)

    p = sub.add_parser("component", parents=[common], help="determinantal component dimension vs box tangent space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_component)

    p = sub.add_parser("trees", parents=[common], help="labeled spanning trees and tree polarizations")
    p.add_argument("--n", type=int, required=True, help="number of vertices n'")
    p.add_argument("--enumerate", action="store_true", help="include edge lists")
    p.add_argument("--index", action="store_true", help="include i(T) and the predicted dimension")
    p.add_argument("--verify", action="store_true", help="compare the solver with the formula")
    p.add_argument("--sample", type=int, help="random sample size instead of all trees")
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("groebner-check", parents=[common], help="initial ideal of the minors of M_nd")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-degree", type=int)
    p.set_defaults(func=cmd_groebner)

    p = sub.add_parser("flat-check", parents=[common], help="graded dimensions of the lifted P_3d family")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", required=True, help="three parameters, e.g. 1,1/2,-2")
    p.add_argument("--max-degree", type=int, default=6)
    p.set_defaults(func=cmd_flat)

    p = sub.add_parser("verify-all", parents=[common], help="run every acceptance check")
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    p.add_argument("--exhaustive-7", action="store_true", help="add the 16807-tree sweep for n'=7")
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.json = getattr(args, "json", False)
    args.seed = getattr(args, "seed", 0)
    args.jobs = getattr(args, "jobs", None) or default_jobs()
    args.raw_argv = argv[1:] if argv and argv[0] == args.command else argv
    try:
        return args.func(args)
    except (UsageError, PolhilbError) as exc:
        print(f"polhilb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
