"""Command line front end: one verb per solver operation, JSON out.

Exact rationals are printed as "p/q" strings so reports are bit-stable;
only degcheck reports floating point numbers (12 significant digits).
Exit codes: 0 success, 1 usage or syntax errors, 2 domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .berkspace import Direction, chart
from .errors import IrrationalDirection, NadynError, ParseError
from .respoly import FiniteClass, INFINITY, divisor_classes
from .redux import coeff_reduction, conjugate, intrinsic_data
from .crucial import (
    class_slope_data,
    hyp_res,
    hyp_res_direct,
    min_locus,
    ord_res,
    semistability,
    slope_measured,
    slope_rhs,
)
from .equidist import depth_sequence
from .degeneration import INF_C, degeneration_report
from .parsing import (
    class_json,
    frac_str,
    map_str,
    parse_direction_class,
    parse_map,
    parse_point,
    point_str,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fmt_float(x: float) -> str:
    return format(x, ".12g")


def _fmt_complex(z: complex) -> str:
    if z == INF_C or (abs(z.real) == float("inf")):
        return "inf"
    return f"{_fmt_float(z.real)}{'+' if z.imag >= 0 else '-'}{_fmt_float(abs(z.imag))}j"


def _point_json(point) -> dict:
    return {"a": point.center.to_str(), "s": frac_str(point.exponent)}


def _divisor_json(divisor) -> dict:
    return {
        "parts": [
            {"poly": s.to_str("z"), "multiplicity": i} for s, i in divisor.parts
        ],
        "inf_mult": divisor.inf_mult,
        "deg_h": divisor.total_degree,
    }


def _measure_json(measure) -> dict:
    return {
        "atoms": [
            {**class_json(cls), "mass": frac_str(mass)} for cls, mass in measure.atoms
        ],
        "point_mass": frac_str(measure.point_mass),
    }


def _slope_json(phi, point, cls) -> dict:
    report = slope_rhs(phi, point, Direction(point, cls))
    try:
        measured = slope_measured(phi, point, Direction(point, cls))
    except IrrationalDirection:
        measured = None
    return {
        **class_json(cls),
        "dep": report.dep,
        "fixed": report.fixed,
        "rhs": frac_str(report.rhs),
        "measured": frac_str(measured) if measured is not None else None,
    }


def _cmd_reduce(args) -> dict:
    phi = parse_map(args.map)
    point = parse_point(args.point)
    red = coeff_reduction(conjugate(chart(point), phi))
    out = {
        "map": map_str(phi),
        "point": point_str(point),
        "reduced_num": [frac_str(c) for c in red.reduced_num.coeffs()],
        "reduced_den": [frac_str(c) for c in red.reduced_den.coeffs()],
        "h": red.h.dehom.to_str("z"),
        "h_inf_mult": red.h.inf_mult,
        "deg_h": red.h.degree,
        "tilde_degree": red.tilde_degree,
    }
    if red.fixes_gauss:
        out["tilde"] = {"num": red.tilde_num.to_str("z"), "den": red.tilde_den.to_str("z")}
    else:
        out["image"] = class_json(red.image_class)
    return out


def _cmd_depths(args) -> dict:
    phi = parse_map(args.map)
    point = parse_point(args.point)
    info = intrinsic_data(phi, point)
    out = _divisor_json(info.depths)
    out["classes"] = [
        {**class_json(cls), "depth": dep} for cls, dep in divisor_classes(info.depths)
    ]
    return out


def _cmd_intrinsic(args) -> dict:
    phi = parse_map(args.map)
    point = parse_point(args.point)
    info = intrinsic_data(phi, point)
    out = {
        "fixes_point": info.fixes_point,
        "local_degree": info.local_degree,
        "totally_invariant": info.totally_invariant,
        "depths": _divisor_json(info.depths),
    }
    if info.fixes_point:
        out["tangent"] = {
            "num": info.tangent[0].to_str("z"),
            "den": info.tangent[1].to_str("z"),
        }
    else:
        out["image"] = class_json(info.image_direction)
    return out


def _cmd_ordres(args) -> dict:
    phi = parse_map(args.map)
    point = parse_point(args.point)
    return {"ord_res": frac_str(ord_res(phi, point))}


def _cmd_hypres(args) -> dict:
    phi = parse_map(args.map)
    point = parse_point(args.point)
    out = {
        "ord_res": frac_str(ord_res(phi, point)),
        "hyp_res": frac_str(hyp_res(phi, point)),
    }
    if args.direct:
        out["hyp_res_direct"] = frac_str(hyp_res_direct(phi, point))
    return out


def _cmd_slope(args) -> dict:
    phi = parse_map(args.map)
    point = parse_point(args.point)
    if args.direction is not None:
        cls = parse_direction_class(args.direction)
        return _slope_json(phi, point, cls)
    info = intrinsic_data(phi, point)
    classes = [cls for cls, _, _ in class_slope_data(info)]
    for extra in (FiniteClass(Fraction(0)), FiniteClass(Fraction(1)), INFINITY):
        if extra not in classes:
            classes.append(extra)
    return {"slopes": [_slope_json(phi, point, cls) for cls in classes]}


def _cmd_minlocus(args) -> dict:
    phi = parse_map(args.map)
    start = parse_point(args.start)
    result = min_locus(phi, start)
    return {
        "minimizer": _point_json(result.minimizer),
        "min_hyp_res": frac_str(result.min_hyp_res),
        "ord_res": frac_str(ord_res(phi, result.minimizer)),
        "verdict": result.verdict.value,
        "unique": result.unique,
        "trail": [
            {**_point_json(pt), "class": class_json(cls), "step": frac_str(step)}
            for pt, cls, step in result.trail
        ],
        "zero_slope": [class_json(cls) for cls in result.zero_slope_classes],
    }


def _cmd_semistable(args) -> dict:
    phi = parse_map(args.map)
    point = parse_point(args.point)
    return {"verdict": semistability(phi, point).value}


def _cmd_equidist(args) -> dict:
    phi = parse_map(args.map)
    point = parse_point(args.point)
    report = depth_sequence(phi, point, args.nmax)
    levels = [
        {"n": n, **_measure_json(measure)}
        for n, measure in zip(report.levels, report.measures)
    ]
    return {
        "levels": levels,
        "tv": [frac_str(t) for t in report.tv_steps],
        "predicted": _measure_json(report.predicted) if report.predicted else "unknown",
        "match": report.match if report.match is not None else "n/a",
    }


def _cmd_degcheck(args) -> dict:
    phi = parse_map(args.map)
    t_values = [complex(part) for part in args.t.split(",") if part.strip()]
    if args.hypothesis == "auto":
        hypothesis = None
    else:
        try:
            atoms = json.loads(args.hypothesis)
        except json.JSONDecodeError as exc:
            raise ParseError(f"hypothesis is not valid JSON: {exc}") from exc
        from .equidist import DirectionMeasure
        from .parsing import class_from_json, parse_rational

        hypothesis = DirectionMeasure(
            tuple((class_from_json(atom), parse_rational(atom["mass"])) for atom in atoms)
        )
    report = degeneration_report(
        phi, t_values, args.n, hypothesis=hypothesis, eps=args.eps
    )
    per_t = []
    for entry in report.sampled:
        rows = []
        for row in entry["rows"]:
            rows.append(
                {
                    **class_json(row["cls"]),
                    "predicted": _fmt_float(float(row["predicted"])),
                    "sampled": _fmt_float(row["sampled"]),
                    "per_target": [_fmt_float(m) for m in row["per_target"]],
                    "targets": [_fmt_complex(tg) for tg in row["targets"]],
                }
            )
        per_t.append({"t": _fmt_complex(entry["t"]), "masses": rows})
    return {
        "t": [_fmt_complex(t) for t in report.t_values],
        "per_t": per_t,
        "max_discrepancy": _fmt_float(report.max_discrepancy),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nadyn", description="exact non-archimedean dynamics solver")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, **flags):
        p = sub.add_parser(name)
        p.add_argument("--map", required=True)
        if flags.get("point", True):
            p.add_argument("--point", default="gauss")
        p.add_argument("--json", action="store_true", default=True)
        p.add_argument("--pretty", action="store_true")
        p.set_defaults(fn=fn)
        return p

    add("reduce", _cmd_reduce)
    add("depths", _cmd_depths)
    add("intrinsic", _cmd_intrinsic)
    add("ordres", _cmd_ordres)
    p = add("hypres", _cmd_hypres)
    p.add_argument("--direct", action="store_true")
    p = add("slope", _cmd_slope)
    p.add_argument("--direction")
    p = add("minlocus", _cmd_minlocus, point=False)
    p.add_argument("--start", default="gauss")
    add("semistable", _cmd_semistable)
    p = add("equidist", _cmd_equidist)
    p.add_argument("--nmax", type=int, default=4)
    p = add("degcheck", _cmd_degcheck, point=False)
    p.add_argument("--t", required=True)
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--hypothesis", default="auto")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        out = args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NadynError as exc:
        print(json.dumps({"error": str(exc), "type": type(exc).__name__}))
        return 2
    indent = 2 if args.pretty else None
    print(json.dumps(out, indent=indent))
    return 0


if __name__ == "__main__":
    sys.exit(main())
