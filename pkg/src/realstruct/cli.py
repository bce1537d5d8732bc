"""Command-line front end.

Exit codes: 0 success, 1 parse or usage error, 2 the input is well formed but
violates a mathematical requirement (not an involution, action not free, ...).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Sequence

from . import bc as bcmod
from . import groups as grp
from . import hyperelliptic as hyp
from . import torus
from . import triangle as tri
from .linalg import format_rational
from .serialize import (
    ParseError,
    dumps,
    envelope,
    hyper_params_from_json,
    loads,
    rational_list,
    torus_from_json,
    torus_to_json,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


def parse_range(text: str) -> list[int]:
    """"4" -> [4]; "2..6" -> [2, 3, 4, 5, 6]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo_i, hi_i + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected N or A..B") from None


# ---------------------------------------------------------------------------
# torus


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_torus(args) -> tuple[Any, Any, list]:
    if args.action == "random":
        rng = random.Random(args.seed)
        inv = None
        if args.r is not None:
            inv = torus.TorusClassInvariant(args.n, args.r, not args.nonsplit)
            if inv not in torus.realizable_invariants(args.n):
                raise torus.InvalidStructure(f"invariant (n={args.n}, r={args.r}, splits={inv.splits}) is not realizable")
        struct, inv = torus.random_structure(args.n, rng, invariant=inv, origin_denominator=args.origin_denominator)
        return {"n": args.n, "seed": args.seed}, torus_to_json(struct), []
    raw = loads(_read_input(args.file))
    struct = torus_from_json(raw)
    inv = torus.class_invariant(struct)
    top = torus.real_part(struct)
    result = {
        "n": inv.n,
        "r": inv.r,
        "splits": inv.splits,
        "components": top.component_count,
        "component_dimension": top.component_dimension,
    }
    if args.action == "classify":
        nf = torus.normal_form(struct)
        result["normal_form"] = {
            "s": nf.s.tolist(),
            "b": rational_list(nf.b),
            "basis": nf.basis.tolist(),
            "origin": rational_list(nf.origin),
            "shift": list(nf.shift),
        }
        if inv.n == 1:
            result["nu"] = top.component_count
    return raw, result, []


# ---------------------------------------------------------------------------
# triangle


def _report_json(rep: tri.TriangleReport) -> dict:
    return {
        "order": rep.order,
        "genus": rep.genus,
        "mult": list(rep.multiplicities),
        "is_real": rep.is_real,
        "aut_equals_deck": rep.aut_equals_deck,
    }


def _warnings(rep: tri.TriangleReport) -> list[dict]:
    return [{"code": "genus-at-most-one", "message": w} for w in rep.warnings]


def _entry_json(e: tri.CatalogEntry) -> tuple[dict, list]:
    rep = tri.report(e.datum)
    out = {"name": e.name, "family": e.family, "params": list(e.params), **_report_json(rep),
           "expected_genus": e.expected_genus, "expected_real": e.expected_real}
    if e.full_group is not None:
        fg = e.full_group
        out["full_group"] = {"group": fg.group, "order": fg.order, "mult": list(fg.multiplicities),
                             "genus": format_rational(fg.genus), "aut_equals_deck": fg.aut_equals_deck}
    return out, _warnings(rep)


def cmd_triangle(args):
    if args.action == "check":
        td = tri.datum_from_expression(args.group, args.a, args.c)
        rep = tri.report(td)
        inputs = {"group": args.group, "a": args.a, "c": args.c}
        return inputs, _report_json(rep), _warnings(rep)
    if args.action == "harnack":
        return {"g": args.g, "t": args.t}, {"g": args.g, "t": args.t, "allowed": tri.harnack_check(args.g, args.t)}, []
    # catalog
    if args.family == "metacyclic":
        entries = [tri.metacyclic_family(args.r, args.m)]
        inputs = {"family": args.family, "r": args.r, "m": args.m}
    else:
        if args.n is not None and args.range is not None:
            raise UsageError("give either --n or --range")
        values = [args.n] if args.n is not None else parse_range(args.range or ("3..10" if args.family == "fermat" else "2..20"))
        build = tri.FAMILIES[args.family]
        entries = [build(v) for v in values]
        inputs = {"family": args.family, "values": values}
    rows, warnings = [], []
    for e in entries:
        row, w = _entry_json(e)
        rows.append(row)
        warnings.extend(w)
    return inputs, {"entries": rows}, warnings


def _triangle_table(result: dict) -> str:
    cols = ["name", "order", "mult", "genus", "is_real", "aut_equals_deck"]
    rows = [[str(e[c]) if c != "mult" else ",".join(map(str, e[c])) for c in cols] for e in result["entries"]]
    return _align(cols, rows)


def _align(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(x) for x in col) for col in zip(header, *rows)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in [list(header), *rows])


# ---------------------------------------------------------------------------
# hyperelliptic


def _load_params(text: str | None) -> dict:
    if text is None:
        return {}
    if text.startswith("@"):
        text = _read_input(text[1:])
    return hyper_params_from_json(loads(text))


def _real_part_json(action: hyp.SurfaceGroupAction) -> dict:
    rep = hyp.real_part(action)
    ext = hyp.extended_group(action)
    return {
        **rep.topology.to_json(),
        "lifts": [
            {"lift": lr.lift.to_json(), "class_size": lr.class_size, "circles_E": lr.circles_E,
             "circles_F": lr.circles_F}
            for lr in rep.lifts
        ],
        "components": [
            {"lift": c.lift, "circle_E": c.circle_E.to_json(), "circle_F": c.circle_F.to_json(),
             "orbit_size": c.orbit_size, "stabilizer_order": c.stabilizer_order, "kind": c.kind}
            for c in rep.components
        ],
        "extended_group": {
            "order": ext.order,
            "type": ext.isomorphism_type,
            "case": ext.lemma_case,
            "sigma_acts": "trivially" if ext.acts_trivially else ("by inversion" if ext.acts_by_inversion else "other"),
        },
    }


def _record_json(rec: hyp.SweepRecord) -> dict:
    return {
        "type": "structure",
        "family": rec.family,
        "eta": [rational_list(v) for v in rec.eta],
        "epsilon": rational_list(rec.epsilon) if rec.epsilon is not None else None,
        "sigma": rec.sigma.to_json(),
        "tori": rec.topology.tori,
        "klein": rec.topology.klein,
        "valid": rec.topology.is_valid,
        "case": rec.lemma_case,
        "extended_group": rec.extended_type,
    }


def _sweep_family_records(k: int, denominator: int) -> list[dict]:
    return [_record_json(r) for r in hyp.sweep_family(k, denominator)]


def cmd_hyper(args):
    if args.action == "real-part":
        params = _load_params(args.params)
        action = hyp.bdf_family(args.family, params.get("eta"), params.get("epsilon"))
        sigma = params.get("sigma", hyp.DEFAULT_SIGMA[args.family])
        real = hyp.attach_real_structure(action, sigma)
        result = _real_part_json(real)
        warnings = []
        if result["extended_group"]["case"] is None:
            warnings.append({"code": "extension-unmatched",
                             "message": "extended group matches none of the expected extensions"})
        return {"family": args.family, "params": args.params}, result, warnings
    families = parse_range(args.family_range)
    for k in families:
        if k not in hyp.FAMILY_ORDER:
            raise UsageError(f"family must be in 1..7, got {k}")
    if args.denominator < 1:
        raise UsageError("denominator must be positive")
    if args.workers > 1 and len(families) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            per_family = list(pool.map(_sweep_family_records, families, [args.denominator] * len(families)))
    else:
        per_family = [_sweep_family_records(k, args.denominator) for k in families]
    records = []
    for k, recs in zip(families, per_family):
        if args.sample is not None and args.sample < len(recs):
            recs = random.Random(args.seed).sample(recs, args.sample)
        records.extend(recs)
        topologies: dict[str, int] = {}
        for r in recs:
            key = f"{r['tori']}T+{r['klein']}K"
            topologies[key] = topologies.get(key, 0) + 1
        records.append({"type": "summary", "family": k, "structures": len(recs), "topologies": topologies,
                        "all_valid": all(r["valid"] for r in recs)})
    return {"families": families, "denominator": args.denominator}, records, []


# ---------------------------------------------------------------------------
# Blanchard-Calabi


def cmd_bc(args):
    if args.action == "invariants":
        if args.deg_w is not None:
            if args.d is not None or args.theta:
                raise UsageError("--deg-w describes a general bundle; do not combine with --d/--theta")
            bundle = bcmod.GeneralW(args.deg_w, args.trivial)
        else:
            if args.d is None:
                raise UsageError("give --d (W = L + L) or --deg-w (general W)")
            if args.trivial:
                raise UsageError("--trivial applies to --deg-w; for W = L + L use --d 0")
            bundle = bcmod.SplitLL(args.d, args.theta)
        data = bcmod.BCData(args.g, bundle)
        inv = bcmod.invariants(data)
        inputs = {"g": args.g, "d": args.d, "theta": args.theta, "deg_w": args.deg_w, "trivial": args.trivial}
        return inputs, {"g": args.g, "deg_w": data.deg_w, **inv.to_json()}, [w.to_json() for w in inv.warnings]
    ds = parse_range(args.d_range)
    rows = bcmod.unboundedness_table(args.g, ds)
    warnings = [{"code": "deformation-closed-form-discrepancy",
                 "message": "cohomological column is 8d+1-g; printed closed form is 4d+1-g"}]
    return {"g": args.g, "d": ds}, {"g": args.g, "rows": [r.to_json() for r in rows]}, warnings


def _bc_table(result: dict) -> str:
    rows = [bcmod.TableRow(r["d"], r["def_dim_cohomological"], r["def_dim_as_printed"]) for r in result["rows"]]
    return bcmod.format_table(rows)


# ---------------------------------------------------------------------------
# parser


def _common(parser: argparse.ArgumentParser) -> None:
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table", help="aligned text table")
    parser.add_argument("--output", metavar="FILE", help="write to FILE instead of stdout")
    parser.add_argument("--sorted", action="store_true", help="sort streamed records")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized subcommands")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="realstruct", description="Real structures on tori, curves and surfaces.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p_torus = sub.add_parser("torus", help="real structures on complex tori")
    ts = p_torus.add_subparsers(dest="action", parser_class=_Parser, required=True)
    for name, help_ in (("classify", "invariant and normal form"), ("real-part", "topology of the real part")):
        p = ts.add_parser(name, help=help_)
        p.add_argument("file", nargs="?", default="-", help="structure JSON {n, s, b}; '-' for stdin")
        _common(p)
    p = ts.add_parser("random", help="emit a random structure JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--nonsplit", action="store_true")
    p.add_argument("--origin-denominator", type=int, default=0)
    _common(p)

    p_tri = sub.add_parser("triangle", help="triangle curves")
    trs = p_tri.add_subparsers(dest="action", parser_class=_Parser, required=True)
    p = trs.add_parser("check", help="report on a group with a generating pair")
    p.add_argument("--group", required=True, help='constructor expression, e.g. "metacyclic(3,4)"')
    p.add_argument("--a", help="word for a in the group's generators")
    p.add_argument("--c", help="word for c in the group's generators")
    _common(p)
    p = trs.add_parser("catalog", help="catalog families")
    p.add_argument("--family", choices=sorted(tri.FAMILIES), required=True)
    p.add_argument("--n", type=int, help="single parameter")
    p.add_argument("--range", help="parameter range A..B")
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--m", type=int, default=4)
    _common(p)
    p = trs.add_parser("harnack", help="Harnack bound on the number of ovals")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    _common(p)

    p_hyp = sub.add_parser("hyper", help="real hyperelliptic surfaces")
    hs = p_hyp.add_subparsers(dest="action", parser_class=_Parser, required=True)
    p = hs.add_parser("real-part", help="topology of the real part")
    p.add_argument("--family", type=int, required=True, choices=range(1, 8))
    p.add_argument("--params", help="JSON {eta, epsilon, sigma} or @file")
    _common(p)
    p = hs.add_parser("sweep", help="enumerate real structures and their topologies")
    p.add_argument("--family", dest="family_range", default="1..7")
    p.add_argument("--denominator", type=int, default=12)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--sample", type=int, help="keep a seeded random sample of records per family")
    _common(p)

    p_bc = sub.add_parser("bc", help="Blanchard-Calabi threefolds")
    bs = p_bc.add_subparsers(dest="action", parser_class=_Parser, required=True)
    p = bs.add_parser("invariants", help="cohomology counts, Kähler test and deformation dimensions")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--theta", action="store_true")
    p.add_argument("--deg-w", type=int)
    p.add_argument("--trivial", action="store_true")
    _common(p)
    p = bs.add_parser("table", help="deformation dimensions over a range of degrees")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--d", dest="d_range", required=True, help="degree range A..B")
    _common(p)
    return parser


HANDLERS = {"torus": cmd_torus, "triangle": cmd_triangle, "hyper": cmd_hyper, "bc": cmd_bc}
TOPICS = {
    "torus": ["real-tori", "integral-involutions"],
    "triangle": ["triangle-curves", "riemann-hurwitz"],
    "hyper": ["real-hyperelliptic-surfaces"],
    "bc": ["blanchard-calabi"],
}
DOMAIN_ERRORS = (torus.InvalidStructure, tri.TriangleError, grp.GroupError, hyp.HyperellipticError, bcmod.BCError)
USAGE_ERRORS = (UsageError, ParseError, grp.GroupParseError)


def render(args, argv: list[str], inputs, result, warnings) -> str:
    if args.command == "hyper" and args.action == "sweep":
        lines = [json.dumps(r, sort_keys=True) for r in result]
        if args.sorted:
            lines.sort()
        return "\n".join(lines) + "\n"
    if args.fmt == "table":
        if args.command == "triangle" and args.action == "catalog":
            return _triangle_table(result) + "\n"
        if args.command == "bc" and args.action == "table":
            return _bc_table(result) + "\n"
        raise UsageError("--table is available for 'triangle catalog' and 'bc table'")
    if args.command == "torus" and args.action == "random":
        return dumps(result) + "\n"
    return dumps(envelope(argv, inputs, result, warnings, TOPICS[args.command])) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        inputs, result, warnings = HANDLERS[args.command](args)
        text = render(args, argv, inputs, result, warnings)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DOMAIN_ERRORS as exc:
        invariant = getattr(exc, "invariant", None)
        label = f" [{invariant}]" if invariant else ""
        print(f"error{label}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for w in warnings:
        print(f"warning: {w['message']}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
