"""Command-line front end: exact-rational input, deterministic table output.

Rationals travel as ``"p/q"`` strings (or bare integers); floats are rejected
so results stay exact end to end.  Exit codes: 0 success, 1 failed
verification, 2 input error, 3 budget exceeded, 4 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import bounds as bounds_mod
from . import families, oracle, verify
from .errors import BudgetExceeded, CovminError, Inconsistent, InputError
from .lattice import Interval, Lattice
from .linalg import format_rat, parse_rat
from .polytope import Polytope, gauge

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INCONSISTENT = 4

FAMILY_NAMES = ("terminal", "weighted", "cube", "crosspolytope", "segment")


def _reject_floats(node, path="input"):
    if isinstance(node, float):
        raise InputError(
            f"{path} contains float {node!r}; write rationals as 'p/q' strings"
        )
    if isinstance(node, dict):
        for key, value in node.items():
            _reject_floats(value, f"{path}.{key}")
    elif isinstance(node, list):
        for pos, value in enumerate(node):
            _reject_floats(value, f"{path}[{pos}]")


def _parse_json(text: str, what: str):
    try:
        node = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"malformed JSON in {what} at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    _reject_floats(node, what)
    return node


def _fmt_vec(v) -> str:
    return "(" + ", ".join(format_rat(x) for x in v) + ")"


def _fmt_value(value) -> str:
    if isinstance(value, Interval):
        return f"[{value.lo}, {value.hi}]"
    return format_rat(value)


@dataclass(frozen=True)
class ProblemSpec:
    """Lossless description of one request: body, lattice, indices, tolerance."""

    body: dict
    lattice: list | None = None
    index: tuple[int, int] | None = None
    tolerance: str = "1/10000"
    flags: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "body": self.body,
            "lattice": self.lattice,
            "index": list(self.index) if self.index else None,
            "tolerance": self.tolerance,
            "flags": self.flags,
        }
        return json.dumps(payload, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "ProblemSpec":
        node = _parse_json(text, "problem spec")
        index = node.get("index")
        return ProblemSpec(
            body=node["body"],
            lattice=node.get("lattice"),
            index=tuple(index) if index else None,
            tolerance=node.get("tolerance", "1/10000"),
            flags=node.get("flags") or {},
        )


def _body_from_spec(spec: dict) -> Polytope:
    if "vertices" in spec:
        vertices = spec["vertices"]
        if not isinstance(vertices, list) or not vertices:
            raise InputError("body.vertices must be a nonempty list of points")
        return Polytope([[parse_rat(x) for x in point] for point in vertices])
    if "family" in spec:
        return _family_body(spec["family"], spec.get("params") or {})
    raise InputError("body needs either 'vertices' or 'family'")


def _family_body(name: str, params: dict) -> Polytope:
    if name == "terminal":
        return families.terminal_simplex(int(params["d"]))
    if name == "weighted":
        return families.weighted_simplex(families.weights(
            [parse_rat(x) for x in params["omega"]]
        ))
    if name == "cube":
        return families.cube(int(params["d"]), parse_rat(params.get("r", 1)))
    if name == "crosspolytope":
        return families.crosspolytope(int(params["d"]))
    if name == "segment":
        return families.segment(parse_rat(params["a"]), parse_rat(params["b"]))
    raise InputError(f"unknown family {name!r}; choose from {', '.join(FAMILY_NAMES)}")


def _spec_from_args(args) -> ProblemSpec:
    if getattr(args, "body", None):
        body = _parse_json(args.body, "--body")
        if "vertices" not in body and "family" not in body:
            raise InputError("--body needs 'vertices' or 'family'")
    elif getattr(args, "family", None):
        params: dict = {}
        if args.family == "weighted":
            if not args.omega:
                raise InputError("--family weighted needs --omega")
            params["omega"] = [s.strip() for s in args.omega.split(",")]
        elif args.family == "segment":
            if args.a is None or args.b is None:
                raise InputError("--family segment needs --a and --b")
            params["a"], params["b"] = args.a, args.b
        else:
            if args.d is None:
                raise InputError(f"--family {args.family} needs --d")
            params["d"] = args.d
            if args.family == "cube" and args.r is not None:
                params["r"] = args.r
        body = {"family": args.family, "params": params}
    else:
        raise InputError("provide --body or --family")
    lattice = None
    raw = getattr(args, "lattice", None) or getattr(args, "basis", None)
    if raw:
        node = _parse_json(raw, "--lattice")
        lattice = node["basis"] if isinstance(node, dict) else node
    index = _parse_index_range(args.i) if getattr(args, "i", None) else None
    return ProblemSpec(
        body=body,
        lattice=lattice,
        index=index,
        tolerance=getattr(args, "tol", None) or "1/10000",
        flags={"center": bool(getattr(args, "center", False))},
    )


def _parse_index_range(text: str) -> tuple[int, int]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    value = int(text)
    return value, value


def _materialize(spec: ProblemSpec) -> tuple[Polytope, Lattice | None]:
    body = _body_from_spec(spec.body)
    lattice = None
    if spec.lattice is not None:
        lattice = Lattice([[parse_rat(x) for x in row] for row in spec.lattice])
    if spec.flags.get("center"):
        from .polytope import center_translate

        body, _ = center_translate(body)
    return body, lattice


def _tol(spec: ProblemSpec) -> Fraction:
    value = parse_rat(spec.tolerance)
    if value <= 0:
        raise InputError("tolerance must be positive")
    return value


def _budget_kwargs() -> dict:
    raw = os.environ.get("COVMIN_BUDGET")
    if not raw:
        return {}
    try:
        return {"cell_cap": int(raw)}
    except ValueError:
        raise InputError(f"COVMIN_BUDGET must be an integer, got {raw!r}") from None


# -- subcommand handlers -------------------------------------------------------


def _cmd_gauge(args, out) -> int:
    spec = _spec_from_args(args)
    body, _ = _materialize(spec)
    point = [parse_rat(x) for x in args.point.split(",")]
    print(f"gauge = {format_rat(gauge(body, point))}", file=out)
    return EXIT_OK


def _cmd_width(args, out) -> int:
    spec = _spec_from_args(args)
    body, lattice = _materialize(spec)
    budget = _budget_kwargs()
    kwargs = {"enum_cap": budget["cell_cap"]} if budget else {}
    value, witness = oracle.lattice_width(body, lattice, **kwargs)
    print(f"width = {format_rat(value)}", file=out)
    print(f"witness = {_fmt_vec(witness)}", file=out)
    return EXIT_OK


def _cmd_covering_radius(args, out) -> int:
    spec = _spec_from_args(args)
    body, lattice = _materialize(spec)
    cert = oracle.covering_radius(body, lattice, _tol(spec), **_budget_kwargs())
    print(f"covering radius in [{cert.interval.lo}, {cert.interval.hi}]", file=out)
    print(f"tolerance = {cert.tolerance}", file=out)
    print(f"cells explored = {cert.cells_explored}", file=out)
    print(f"deep point = {_fmt_vec(cert.deep_point)}", file=out)
    print(f"translation = {_fmt_vec(cert.translation)}", file=out)
    return EXIT_OK


def _cmd_minima(args, out) -> int:
    spec = _spec_from_args(args)
    body, lattice = _materialize(spec)
    lo_i, hi_i = spec.index or (1, body.ambient_dim)
    tol = _tol(spec)
    extra = []
    for raw in args.projection or ():
        rows_node = _parse_json(raw, "--projection")
        extra.append([[parse_rat(x) for x in row] for row in rows_node])
    rows = [("i", "lower", "upper", "status", "lower witness", "upper witness")]
    for i in range(lo_i, hi_i + 1):
        extras_for_i = tuple(m for m in extra if len(m) == i)
        s = oracle.minima_sandwich(body, lattice, i, tol, jobs=args.jobs,
                                   extra_projections=extras_for_i)
        status = "exact" if s.is_exact else "certified"
        rows.append((str(i), format_rat(s.lower), format_rat(s.upper), status,
                     str(s.lb_witness), s.ub_witness))
    _print_table(rows, out)
    return EXIT_OK


def _cmd_bounds(args, out) -> int:
    spec = _spec_from_args(args)
    body, lattice = _materialize(spec)
    lo_i, hi_i = spec.index or (1, body.ambient_dim)
    tol = _tol(spec)
    Kt = body if lattice is None or lattice.is_identity() else Polytope(
        [lattice.coefficients(v) for v in body.vertices]
    )
    rows = [("i", "method", "value", "witness")]
    for i in range(lo_i, hi_i + 1):
        for report in oracle.upper_bound_reports(Kt, i, tol):
            rows.append((str(i), report.method, _fmt_value(report.value),
                         str(report.witness)))
    _print_table(rows, out)
    return EXIT_OK


def _cmd_family(args, out) -> int:
    spec = _spec_from_args(args)
    body, _ = _materialize(spec)
    print(f"vertices ({len(body.vertices)}):", file=out)
    for v in body.vertices:
        print(f"  {_fmt_vec(v)}", file=out)
    table = _family_table(spec.body)
    if table is not None:
        rows = [("i", "value", "provenance")]
        for i, entry in enumerate(table):
            tag = " (conjectured)" if entry.conjectured else ""
            rows.append((str(i), format_rat(entry.lo) if entry.is_exact
                         else f"[{entry.lo}, {entry.hi}]", entry.provenance + tag))
        _print_table(rows, out)
    return EXIT_OK


def _family_table(body_spec: dict):
    if "family" not in body_spec:
        return None
    name = body_spec["family"]
    params = body_spec.get("params") or {}
    if name == "terminal":
        return families.weighted_minima_table(
            families.weights([1] * (int(params["d"]) + 1))
        )
    if name == "weighted":
        return families.weighted_minima_table(
            families.weights([parse_rat(x) for x in params["omega"]])
        )
    if name == "cube":
        d = int(params["d"])
        r = parse_rat(params.get("r", 1))
        return families.box_minima_table([(-r, r)] * d)
    if name == "crosspolytope":
        return families.crosspolytope_table(int(params["d"]))
    if name == "segment":
        a, b = parse_rat(params["a"]), parse_rat(params["b"])
        if a <= 0 <= b:
            return families.segment_sum_table([(a, b)])
    return None


def _cmd_table(args, out) -> int:
    d_lo, d_hi = _parse_index_range(args.d_range)
    i_lo, i_hi = _parse_index_range(args.i)
    rows = bounds_mod.bound_table(range(d_lo, d_hi + 1), range(i_lo, i_hi + 1))
    header = ("d", "i", "projection", "intersection", "chain", "conjectured")
    if args.csv:
        print(",".join(header), file=out)
        for row in rows:
            print(",".join(format_rat(x) if isinstance(x, Fraction) else str(x)
                           for x in row), file=out)
    else:
        text_rows = [header] + [
            tuple(format_rat(x) if isinstance(x, Fraction) else str(x) for x in row)
            for row in rows
        ]
        _print_table(text_rows, out)
    if args.plot_data:
        with open(args.plot_data, "w", encoding="utf-8") as handle:
            for d, i, proj, inter, chain, conj in rows:
                for method, value in (
                    ("projection", proj), ("intersection", inter),
                    ("chain", chain), ("conjectured", conj),
                ):
                    handle.write(f"{d} {i} {method} {format_rat(value)}\n")
        print(f"plot data written to {args.plot_data}", file=out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    tol = parse_rat(args.tol) if args.tol else verify.DEFAULT_TOL
    results = verify.run_suite(args.suite, tol)
    failed = 0
    for result in results:
        print(str(result), file=out)
        if not result.passed:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
    return EXIT_OK if failed == 0 else EXIT_FAILED_CHECK


def _print_table(rows, out) -> None:
    widths = [max(len(row[col]) for row in rows) for col in range(len(rows[0]))]
    for row in rows:
        line = "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        print(line, file=out)


# -- parser ---------------------------------------------------------------------


def _add_body_options(sub):
    sub.add_argument("--body", help="polytope as JSON: {\"vertices\": [[\"p/q\", ...], ...]}")
    sub.add_argument("--family", choices=FAMILY_NAMES, help="named family")
    sub.add_argument("--d", type=int, help="family dimension")
    sub.add_argument("--omega", help="weights for --family weighted, e.g. 1/2,1,1")
    sub.add_argument("--r", help="cube radius (default 1)")
    sub.add_argument("--a", help="segment left endpoint")
    sub.add_argument("--b", help="segment right endpoint")
    sub.add_argument("--lattice", help="lattice basis as JSON: {\"basis\": [[...], ...]}")
    sub.add_argument("--basis", help="alternative basis fixing the coordinate subspaces")
    sub.add_argument("--tol", help="certification tolerance (default 1/10000)")
    sub.add_argument("--center", action="store_true",
                     help="translate by minus the vertex centroid first")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covmin",
        description="Exact covering minima of rational polytopes.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("gauge", help="evaluate the gauge of a point")
    _add_body_options(p)
    p.add_argument("--point", required=True, help="comma separated rationals")
    p.set_defaults(handler=_cmd_gauge)

    p = subs.add_parser("width", help="exact lattice width and witness")
    _add_body_options(p)
    p.set_defaults(handler=_cmd_width)

    p = subs.add_parser("covering-radius", help="certified covering radius")
    _add_body_options(p)
    p.set_defaults(handler=_cmd_covering_radius)

    p = subs.add_parser("minima", help="certified covering minima sandwich")
    _add_body_options(p)
    p.add_argument("--i", help="index or range, e.g. 2 or 1..3")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel covering-radius subcalls (results identical)")
    p.add_argument("--projection", action="append",
                   help="extra rank-i projection as a JSON matrix of rational "
                        "rows; strengthens the lower bound (repeatable)")
    p.set_defaults(handler=_cmd_minima)

    p = subs.add_parser("bounds", help="upper bound reports per mechanism")
    _add_body_options(p)
    p.add_argument("--i", help="index or range")
    p.set_defaults(handler=_cmd_bounds)

    p = subs.add_parser("family", help="family vertices and closed-form table")
    _add_body_options(p)
    p.set_defaults(handler=_cmd_family)

    p = subs.add_parser("table", help="terminal simplex bound comparison table")
    p.add_argument("--d", dest="d_range", required=True, help="dimension range, e.g. 3..4")
    p.add_argument("--i", required=True, help="index range, e.g. 2..3")
    p.add_argument("--csv", action="store_true", help="emit CSV")
    p.add_argument("--plot-data", help="write (d, i, method, bound) rows to this file")
    p.set_defaults(handler=_cmd_table)

    p = subs.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=verify.SUITES)
    p.add_argument("--tol", help="certification tolerance (default 1/10000)")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return args.handler(args, out)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except Inconsistent as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except CovminError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KeyError, ValueError, TypeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
