"""Command-line front end.

Instances travel as JSON problem files::

    {
      "constraints": [{"name": "OR2", "arity": 2, "table": "0111"}],
      "variables": ["x", "y"],
      "applications": [{"constraint": "OR2", "args": ["x", "y"]}],
      "constants_allowed": false
    }

Application arguments are variable names or the literal tokens "$0"/"$1".
Graphs are ``{"n": 3, "edges": [[0, 1], [1, 2]]}`` with 0-based vertices;
colored graphs additionally carry a ``"colors"`` list.

Exit status: 0 = decided (either verdict), 2 = input error, 3 = resource
cap exceeded, 4 = oracle cross-check mismatch.  Verdicts are single stable
tokens on stdout; diagnostics go to stderr as ``error <code>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .core import (
    Const,
    Constraint,
    ConstraintApplication,
    Instance,
    Var,
    classify_set,
    constraint_flags,
)
from .equiv import equivalent, equivalent_bruteforce
from .errors import (
    BoolcspError,
    OracleMismatchError,
    PreconditionError,
    ResourceCapError,
    StructureError,
)
from .graph import ColoredGraph
from .iso import isomorphic, isomorphic_bruteforce, normal_form, encode_graph
from .reductions import (
    GraphInput,
    gi_to_or2,
    gi_to_xor3,
    satne1_to_equiv,
    satne01_to_equiv,
    unsat_to_equiv,
)
from .sat import count_models, sat_not_all_one, sat_not_all_zero, sat_nontrivial, solve, solve_bruteforce

ENV_CAP = "BOOLCSP_RESOURCE_CAP"


def _cap_override() -> int | None:
    raw = os.environ.get(ENV_CAP)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise StructureError(f"{ENV_CAP} must be an integer, got {raw!r}") from exc


# -- problem files ---------------------------------------------------------


def parse_problem(data: dict) -> Instance:
    try:
        raw_constraints = data["constraints"]
        raw_variables = data["variables"]
        raw_apps = data["applications"]
    except (KeyError, TypeError) as exc:
        raise StructureError(f"problem file missing field: {exc}") from exc
    constants_allowed = bool(data.get("constants_allowed", False))
    constraints = []
    for rc in raw_constraints:
        try:
            name, arity, table = rc["name"], int(rc["arity"]), rc["table"]
        except (KeyError, TypeError, ValueError) as exc:
            raise StructureError(f"bad constraint entry: {rc!r}") from exc
        constraints.append(Constraint(name, arity, tuple(int(b) for b in table)))
    by_name = {c.name: c for c in constraints}
    variables = tuple(str(v) for v in raw_variables)
    for v in variables:
        if v.startswith("$"):
            raise StructureError(f"variable name {v!r} clashes with constant tokens")
    var_index = {v: i for i, v in enumerate(variables)}
    apps = []
    for ra in raw_apps:
        try:
            cname, rargs = ra["constraint"], ra["args"]
        except (KeyError, TypeError) as exc:
            raise StructureError(f"bad application entry: {ra!r}") from exc
        if cname not in by_name:
            raise StructureError(f"application references unknown constraint {cname!r}")
        args = []
        for tok in rargs:
            if tok == "$0":
                args.append(Const(0))
            elif tok == "$1":
                args.append(Const(1))
            elif tok in var_index:
                args.append(Var(var_index[tok]))
            else:
                raise StructureError(f"unknown argument token {tok!r}")
        apps.append(ConstraintApplication(by_name[cname], tuple(args)))
    return Instance(tuple(constraints), variables, tuple(apps), constants_allowed)


def serialize_problem(instance: Instance) -> dict:
    def arg_token(a) -> str:
        return instance.variables[a.index] if isinstance(a, Var) else f"${a.bit}"

    return {
        "constraints": [
            {"name": c.name, "arity": c.arity, "table": "".join(map(str, c.table))}
            for c in instance.constraint_set
        ],
        "variables": list(instance.variables),
        "applications": [
            {
                "constraint": app.constraint.name,
                "args": [arg_token(a) for a in app.args],
            }
            for app in instance.applications
        ],
        "constants_allowed": instance.constants_allowed,
    }


def load_problem(path: str) -> Instance:
    return parse_problem(_load_json(path))


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise StructureError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise StructureError(f"{path} is not valid JSON: {exc}") from exc


def _dump_json(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def parse_graph(data: dict) -> GraphInput:
    try:
        n = int(data["n"])
        edges = tuple((int(u), int(v)) for u, v in data["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"bad graph file: {exc}") from exc
    return GraphInput(n, edges)


def load_graph(path: str) -> GraphInput:
    return parse_graph(_load_json(path))


def serialize_colored_graph(graph: ColoredGraph) -> dict:
    return {
        "n": graph.n,
        "edges": [list(e) for e in sorted(graph.edges)],
        "colors": list(graph.colors),
    }


# -- universe alignment ----------------------------------------------------


def align_universes(left: Instance, right: Instance) -> tuple[Instance, Instance]:
    """Re-declare both instances over the union of their variable lists and
    the union of their constraint sets (clashing names must agree)."""
    merged: dict[str, Constraint] = {}
    for c in left.constraint_set + right.constraint_set:
        if c.name in merged and merged[c.name] != c:
            raise StructureError(f"constraint {c.name!r} declared with two tables")
        merged.setdefault(c.name, c)
    constraints = tuple(merged.values())
    variables = list(left.variables)
    for v in right.variables:
        if v not in variables:
            variables.append(v)
    constants = left.constants_allowed or right.constants_allowed

    def remap(instance: Instance) -> Instance:
        index = {v: i for i, v in enumerate(variables)}
        apps = tuple(
            ConstraintApplication(
                app.constraint,
                tuple(
                    Var(index[instance.variables[a.index]])
                    if isinstance(a, Var)
                    else a
                    for a in app.args
                ),
            )
            for app in instance.applications
        )
        return Instance(constraints, tuple(variables), apps, constants)

    return remap(left), remap(right)


# -- commands --------------------------------------------------------------


def _bool_token(value: bool) -> str:
    return "true" if value else "false"


def _cmd_classify(args) -> int:
    instance = load_problem(args.file)
    report = classify_set(instance.constraint_set)
    flag_names = (
        "zero_valid",
        "one_valid",
        "horn",
        "anti_horn",
        "bijunctive",
        "affine",
        "complementive",
    )
    for name, flags in report.per_constraint:
        row = " ".join(f"{f}={_bool_token(getattr(flags, f))}" for f in flag_names)
        print(f"constraint {name}: {row}")
    row = " ".join(f"{f}={_bool_token(getattr(report, f))}" for f in flag_names)
    print(f"set: {row} schaefer={_bool_token(report.schaefer)}")
    return 0


def _cmd_sat(args) -> int:
    instance = load_problem(args.file)
    cap = _cap_override()
    if args.method == "bruteforce":
        result = solve_bruteforce(instance, cap=cap)
    else:
        result = solve(instance, backtracking_cap=cap)
    print(result.status)
    print(f"method {result.method}")
    if result.witness is not None:
        bits = " ".join(f"{v}={result.witness[v]}" for v in instance.variables)
        print(f"witness {bits}")
    return 0


def _cmd_count(args) -> int:
    instance = load_problem(args.file)
    print(count_models(instance, cap=_cap_override()))
    return 0


def _cmd_satvariant(args) -> int:
    instance = load_problem(args.file)
    decide = {
        "ne0": sat_not_all_zero,
        "ne1": sat_not_all_one,
        "ne01": sat_nontrivial,
    }[args.kind]
    print("yes" if decide(instance) else "no")
    return 0


def _cmd_equiv(args) -> int:
    left, right = align_universes(load_problem(args.a), load_problem(args.b))
    verdict = equivalent(left, right)
    if args.oracle:
        check = equivalent_bruteforce(left, right, cap=_cap_override())
        if check != verdict:
            raise OracleMismatchError(
                f"equivalent={verdict} but brute force says {check}"
            )
    print("equivalent" if verdict else "not-equivalent")
    return 0


def _cmd_iso(args) -> int:
    left = load_problem(args.a)
    right = load_problem(args.b)
    if args.pad_variables:
        left, right = align_universes(left, right)
    result = isomorphic(left, right, counting_cap=_cap_override())
    if args.oracle:
        check = isomorphic_bruteforce(left, right, cap=_cap_override())
        if (check is not None) != result.isomorphic:
            raise OracleMismatchError(
                f"isomorphic={result.isomorphic} but brute force says"
                f" {check is not None}"
            )
    if result.isomorphic:
        print("isomorphic")
        cycles = result.permutation.cycles(left.variables)
        if cycles:
            print("pi " + "".join("(" + " ".join(c) + ")" for c in cycles))
        else:
            print("pi ()")
    else:
        print("not-isomorphic")
        print(f"reason {result.reason}")
    return 0


def _pick(instance: Instance, name: str | None, flag: str, description: str) -> Constraint:
    if name is not None:
        for c in instance.constraint_set:
            if c.name == name:
                return c
        raise StructureError(f"no constraint named {name!r} in the file")
    for c in instance.constraint_set:
        if not getattr(constraint_flags(c), flag):
            return c
    raise PreconditionError(f"no {description} constraint in the set")


def _cmd_reduce(args) -> int:
    kind = args.kind
    if kind == "gi-or2":
        (path,) = args.inputs
        instance = gi_to_or2(load_graph(path))
        _dump_json(serialize_problem(instance), args.output)
        return 0
    if kind == "gi-xor3":
        left_path, right_path = args.inputs
        pair = gi_to_xor3(load_graph(left_path), load_graph(right_path))
        if pair is None:
            print("not-isomorphic: pre-check")
            return 0
        left, right = pair
        _dump_json(
            {"left": serialize_problem(left), "right": serialize_problem(right)},
            args.output,
        )
        return 0
    (path,) = args.inputs
    instance = load_problem(path)
    if kind == "unsat-equiv":
        c0 = _pick(instance, args.c0, "zero_valid", "non-0-valid")
        c1 = _pick(instance, args.c1, "one_valid", "non-1-valid")
        left, right = unsat_to_equiv(instance, c0, c1)
    elif kind == "ne1-equiv":
        c = _pick(instance, args.constraint, "zero_valid", "non-0-valid")
        left, right = satne1_to_equiv(instance, c)
    elif kind == "ne01-equiv":
        left, right = satne01_to_equiv(instance)
    else:  # pragma: no cover - argparse restricts choices
        raise StructureError(f"unknown reduction kind {kind!r}")
    _dump_json(
        {"left": serialize_problem(left), "right": serialize_problem(right)},
        args.output,
    )
    return 0


def _cmd_encode_graph(args) -> int:
    instance = load_problem(args.file)
    graph = encode_graph(normal_form(instance))
    _dump_json(serialize_colored_graph(graph), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolcsp",
        description="Decision procedures for Boolean constraint satisfaction",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="property flags of the constraint set")
    p.add_argument("file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("sat", help="decide satisfiability")
    p.add_argument("file")
    p.add_argument("--method", choices=("auto", "bruteforce"), default="auto")
    p.set_defaults(func=_cmd_sat)

    p = sub.add_parser("count", help="exact model count")
    p.add_argument("file")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("satvariant", help="nontrivial-assignment variants")
    p.add_argument("file")
    p.add_argument("--kind", choices=("ne0", "ne1", "ne01"), required=True)
    p.set_defaults(func=_cmd_satvariant)

    p = sub.add_parser("equiv", help="decide equivalence of two instances")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--oracle", action="store_true", help="cross-check by enumeration")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("iso", help="decide isomorphism of two instances")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--oracle", action="store_true", help="cross-check by permutation search")
    p.add_argument(
        "--pad-variables",
        action="store_true",
        help="extend both universes to their union before deciding",
    )
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("reduce", help="materialize a reduction")
    p.add_argument(
        "--kind",
        choices=("unsat-equiv", "ne1-equiv", "ne01-equiv", "gi-or2", "gi-xor3"),
        required=True,
    )
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    p.add_argument("--c0", default=None, help="non-0-valid constraint name (unsat-equiv)")
    p.add_argument("--c1", default=None, help="non-1-valid constraint name (unsat-equiv)")
    p.add_argument("--constraint", default=None, help="witness constraint name (ne1-equiv)")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("encode-graph", help="colored graph of the normal form")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    p.set_defaults(func=_cmd_encode_graph)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    expected = {"gi-xor3": 2}
    if args.command == "reduce":
        want = expected.get(args.kind, 1)
        if len(args.inputs) != want:
            print(
                f"error input: reduce --kind {args.kind} takes {want} input file(s)",
                file=sys.stderr,
            )
            return 2
    try:
        return args.func(args)
    except OracleMismatchError as exc:
        print(f"error oracle-mismatch: {exc}", file=sys.stderr)
        return 4
    except ResourceCapError as exc:
        print(f"error resource-cap: {exc}", file=sys.stderr)
        return 3
    except (StructureError, PreconditionError) as exc:
        print(f"error input: {exc}", file=sys.stderr)
        return 2
    except BoolcspError as exc:
        print(f"error input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
