"""Command-line interface for the bounds, Swan numbers, sieve values and singular points."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

from .bounds import bounds_report
from .jacobsthal import field_sieve, little_j, fixed_point_j
from .qfield import Disc, Ideal, is_fundamental, nearest_fundamental, singular_points
from .swan import det, emit_generators, is_reduced_mod, swan_number

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARTIAL = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _disc(value: str) -> Disc:
    try:
        d = int(value)
    except ValueError:
        raise UsageError(f"discriminant must be an integer, got {value!r}")
    if not is_fundamental(d):
        near = ", ".join(str(x) for x in nearest_fundamental(d))
        raise UsageError(f"{d} is not a negative fundamental discriminant (nearest: {near})")
    return Disc(d)


def _frac(q: Fraction) -> list[int]:
    return [q.numerator, q.denominator]


def _elem(x) -> dict:
    # (a + b sqrt(d)) / 2
    return {"a": x.a, "b": x.b, "text": str(x)}


def _point(p) -> dict:
    return {"u": _frac(p.u), "v": _frac(p.v), "text": str(p)}


# -- bounds -------------------------------------------------------------------------


def bounds_dict(disc: Disc) -> dict:
    rep = bounds_report(disc)
    return {
        "disc": disc.d,
        "classNumber": disc.class_number,
        "deltaNormSq": rep.delta_norm_sq,
        "J": rep.J,
        "lower": {"value": str(rep.lower), "exact": rep.lower.to_json()},
        "upper": {"value": str(rep.upper), "exact": rep.upper.to_json()},
    }


def cmd_bounds(args, out) -> int:
    disc = _disc(args.disc)
    data = bounds_dict(disc)
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(
            f"disc {disc.d}  class number {data['classNumber']}\n"
            f"|delta|^2 = {data['deltaNormSq']}\n"
            f"J = {data['J']}\n"
            f"{data['lower']['value']} < S < {data['upper']['value']}\n"
        )
    return EXIT_OK


# -- swan ---------------------------------------------------------------------------


def swan_dict(result, with_generators: bool) -> dict:
    data = {
        "disc": result.disc.d,
        "swanSq": result.swan_sq,
        "certified": result.certified,
        "capUsedSq": result.cap_used_sq,
        "minVertexHeightSq": None if result.min_vertex_height_sq is None else _frac(result.min_vertex_height_sq),
        "reason": result.reason,
        "faces": [
            {"lambda": _elem(f.hemi.lam), "mu": _elem(f.hemi.mu), "normMu": f.hemi.norm, "center": _point(f.hemi.center)}
            for f in result.faces
        ],
    }
    if with_generators and result.certified:
        gens = []
        for m in emit_generators(result):
            one = det(m)
            gens.append(
                {
                    "matrix": [[_elem(m[0]), _elem(m[1])], [_elem(m[2]), _elem(m[3])]],
                    "detIsOne": one.a == 2 and one.b == 0,
                    "normMu": m[2].norm,
                    "betaReduced": m[2].norm == 0 or is_reduced_mod(m[0], m[2]),
                }
            )
        data["generators"] = gens
    return data


def cmd_swan(args, out) -> int:
    disc = _disc(args.disc)
    result = swan_number(disc, cap_sq=args.cap_sq, budget_secs=args.budget_secs)
    data = swan_dict(result, args.generators)
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        status = "certified" if result.certified else f"UNCERTIFIED ({result.reason})"
        out.write(f"disc {disc.d}: S^2 = {result.swan_sq} [{status}, cap {result.cap_used_sq}]\n")
        out.write(f"{len(result.faces)} faces over the quarter rectangle\n")
        if args.generators and "generators" in data:
            for g in data["generators"]:
                (a, b), (c, e) = g["matrix"]
                out.write(f"[[{a['text']}, {b['text']}], [{c['text']}, {e['text']}]]  det=1: {g['detIsOne']}\n")
    if args.svg:
        from .svg import render

        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(render(result, singular_points(disc)))
    return EXIT_OK if result.certified else EXIT_PARTIAL


# -- bounds table over a range of discriminants ---------------------------------------


@dataclass
class Fig6Row:
    disc: int
    classNumber: int
    deltaNormSq: int
    J: int
    lowerVal: str
    upperVal: str
    swanSq: int | None
    logLower: str
    logUpper: str
    logSwan: str | None


def _log12(x: float) -> str:
    return f"{x:.12g}"


def fig6_row(disc: Disc, rep, swan_sq: int | None) -> Fig6Row:
    return Fig6Row(
        disc=disc.d,
        classNumber=disc.class_number,
        deltaNormSq=rep.delta_norm_sq,
        J=rep.J,
        lowerVal=str(rep.lower),
        upperVal=str(rep.upper),
        swanSq=swan_sq,
        logLower=_log12(math.log(float(rep.lower))),
        logUpper=_log12(math.log(float(rep.upper))),
        logSwan=None if swan_sq is None else _log12(math.log(swan_sq) / 2),
    )


def figure6_rows(max_abs: int, swan_upto: int, budget_secs=None, workers: int = 1):
    """Rows in discriminant order, and whether every requested Swan number was certified."""
    discs = [Disc(-n) for n in range(3, max_abs) if is_fundamental(-n)]
    reports = [bounds_report(disc) for disc in discs]

    def swan(job):
        disc, rep = job
        if disc.abs > swan_upto:
            return None, True
        res = swan_number(disc, budget_secs=budget_secs, max_cap_sq=math.floor(rep.upper.a))
        return (res.swan_sq, True) if res.certified else (None, False)

    with ThreadPoolExecutor(max(1, workers)) as ex:
        swans = list(ex.map(swan, zip(discs, reports)))
    rows = [fig6_row(disc, rep, s) for disc, rep, (s, _) in zip(discs, reports, swans)]
    return rows, all(ok for _, ok in swans)


def rows_to_csv(rows: list[Fig6Row]) -> str:
    buf = io.StringIO()
    names = [f.name for f in fields(Fig6Row)]
    w = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if v is None else v) for k, v in asdict(r).items()})
    return buf.getvalue()


def cmd_figure6(args, out) -> int:
    if args.max_abs_disc < 3:
        raise UsageError("--max-abs-disc must be at least 3")
    rows, complete = figure6_rows(args.max_abs_disc, args.swan_upto, args.budget_secs, args.workers)
    text = rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK if complete else EXIT_PARTIAL


# -- jacobsthal -------------------------------------------------------------------------


def _parse_ideal(text: str, disc: Disc) -> Ideal:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"ideal must be given as 'a,b', got {text!r}")
    if a < 1 or (b * b - disc.d) % (4 * a):
        raise UsageError(f"({a}, {b}) is not a normal form: need b^2 = d mod 4a")
    return Ideal.make(a, b, disc.d)


def cmd_jacobsthal(args, out) -> int:
    disc = _disc(args.disc)
    if args.which == "little":
        ideal = _parse_ideal(args.ideal, disc)
        w = little_j(ideal)
        data = {
            "value": w.value,
            "residues": [[p, list(c)] for p, c in w.adversary_residues],
            "runStart": w.run_start,
            "runLength": w.run_length,
        }
    elif args.which == "big":
        try:
            x = Fraction(args.x)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--x must be a positive rational, got {args.x!r}")
        if x <= 0:
            raise UsageError("--x must be positive")
        value, pattern = field_sieve(disc).big_j_sq(x * x)
        data = {"x": _frac(x), "value": value, "pattern": [list(e) for e in pattern.entries]}
    else:
        data = {"J": fixed_point_j(disc)}
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        for k, v in data.items():
            out.write(f"{k}: {v}\n")
    return EXIT_OK


# -- singular points -----------------------------------------------------------------------


def cmd_singular(args, out) -> int:
    disc = _disc(args.disc)
    pts = singular_points(disc)
    if args.format == "json":
        out.write(json.dumps([_point(p) for p in pts], indent=2) + "\n")
    else:
        for p in pts:
            out.write(str(p) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bianchi", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, disc=True):
        if disc:
            sp.add_argument("--disc", required=True, help="negative fundamental discriminant")
        sp.add_argument("--format", choices=["text", "json"], default="text")

    sp = sub.add_parser("bounds", help="lower and upper bounds for Swan's number")
    common(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("swan", help="compute Swan's number")
    common(sp)
    sp.add_argument("--cap-sq", type=int, default=None, help="initial norm cap for candidates")
    sp.add_argument("--budget-secs", type=float, default=None)
    sp.add_argument("--svg", default=None, help="write a drawing of the floor to this path")
    sp.add_argument("--generators", action="store_true", help="list generators with determinant audit")
    sp.set_defaults(func=cmd_swan)

    sp = sub.add_parser("figure6", help="bounds and Swan numbers as CSV")
    sp.add_argument("--max-abs-disc", type=int, default=400)
    sp.add_argument("--swan-upto", type=int, default=0)
    sp.add_argument("--budget-secs", type=float, default=None, help="time budget per Swan computation")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_figure6)

    sp = sub.add_parser("jacobsthal", help="sieve values")
    common(sp)
    jsub = sp.add_subparsers(dest="which", required=True, parser_class=_Parser)
    lp = jsub.add_parser("little")
    lp.add_argument("--ideal", required=True, help="normal form 'a,b' of the ideal")
    bp = jsub.add_parser("big")
    bp.add_argument("--x", required=True)
    jsub.add_parser("fixedpoint")
    sp.set_defaults(func=cmd_jacobsthal)

    sp = sub.add_parser("singular", help="singular points modulo translation")
    common(sp)
    sp.set_defaults(func=cmd_singular)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as e:
        print(f"bianchi: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
