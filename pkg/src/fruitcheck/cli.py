"""Command-line entry point: ``fruitcheck {field,obstruct,search,density,curve} ...``.

Exit status: 0 success, 1 usage error, 2 domain error, 3 search refused by the
cost cap.  With ``--json`` exactly one JSON document goes to stdout; integers in
it are decimal strings.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import curves, density, obstruction, search
from .config import GlobalConfig, OutputMode
from .errors import CostCapExceeded, DomainError
from .quad_field import (
    DEFAULT_PRECISION,
    QuadField,
    parse_field,
    parse_quadint,
    prime_above_two,
    splitting_of_two,
    t_k_nonempty,
)

log = logging.getLogger("fruitcheck")

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_COST = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit_json(doc, out):
    out.write(json.dumps(doc, indent=2) + "\n")


def _opt_str(v):
    return None if v is None else str(v)


# --- field ----------------------------------------------------------------


def field_report(field: QuadField, precision: int) -> dict:
    prime = prime_above_two(field, precision)
    return {
        "field": field.label(),
        "basis_kind": field.basis_kind.value,
        "field_discriminant": str(field.field_discriminant),
        "split_type": prime.split_type.value,
        "tk_nonempty": t_k_nonempty(field),
        "canonical_root": _opt_str(prime.canonical_root),
        "precision": str(precision),
    }


def cmd_field(args, out) -> int:
    field = parse_field(args.t)
    if not field.is_rational:
        splitting_of_two(field.t)
    doc = field_report(field, args.precision)
    if args.json:
        _emit_json(doc, out)
    else:
        for key, val in doc.items():
            out.write(f"{key}: {val}\n")
    return EXIT_OK


# --- obstruct ---------------------------------------------------------------


def obstruction_doc(rep: obstruction.ObstructionReport) -> dict:
    p = rep.params
    return {
        "field": rep.field.label(),
        "a": str(p.a),
        "b": str(p.b),
        "r": str(p.r),
        "d": str(p.d),
        "c": str(p.c),
        "tk_nonempty": rep.tk_nonempty,
        "c_mod4": _opt_str(rep.c_residue_mod4),
        "locally_obstructed": rep.locally_obstructed,
        "hypotheses": rep.hypothesis.as_dict(),
        "verdict": rep.verdict.value,
    }


def hypothesis_warning(hyp: obstruction.HypothesisReport) -> str:
    return (
        "warning: stated hypotheses (d odd, r >= 2) are "
        f"{'met' if hyp.statement_satisfied else 'not met'} but the hypotheses the "
        f"proof uses (d >= 2, r odd) are {'met' if hyp.proof_effective else 'not met'}"
    )


def cmd_obstruct(args, out) -> int:
    field = parse_field(args.field)
    params = obstruction.FruitParams(
        parse_quadint(args.a, field), parse_quadint(args.b, field), args.r, args.d
    )
    rep = obstruction.decide(field, params, branch=args.branch)
    doc = obstruction_doc(rep)
    if args.json:
        _emit_json(doc, out)
        return EXIT_OK
    for key in ("field", "a", "b", "r", "d", "c", "tk_nonempty", "c_mod4", "locally_obstructed"):
        out.write(f"{key}: {doc[key]}\n")
    for key, val in doc["hypotheses"].items():
        out.write(f"  {key}: {val}\n")
    if rep.hypothesis.mismatch:
        out.write(hypothesis_warning(rep.hypothesis) + "\n")
    out.write(f"verdict: {doc['verdict']}\n")
    return EXIT_OK


# --- search -----------------------------------------------------------------


def _resolve_c(args, field):
    derived = args.b is not None or args.r is not None
    if derived:
        if args.b is None or args.r is None:
            raise DomainError("--b and --r must be given together")
        if args.c is not None:
            raise DomainError("give either --c or --b/--r, not both")
        return obstruction.compute_c(parse_quadint(args.b, field), args.r, args.d)
    if args.c is None:
        raise DomainError("one of --c or --b/--r is required")
    return parse_quadint(args.c, field)


def cmd_search(args, out, config: GlobalConfig) -> int:
    field = parse_field(args.field)
    a = parse_quadint(args.a, field)
    c = _resolve_c(args, field)
    hits = search.enumerate_solutions(
        field, a, c, args.d, search.SearchBox(args.bound), args.even_x, config, workers=args.workers
    )
    if args.json:
        _emit_json([w.as_dict() for w in hits], out)
    else:
        for w in hits:
            out.write(f"{w}\n")
        log.info("%d witness(es) in box B=%d", len(hits), args.bound)
    return EXIT_OK


# --- density ----------------------------------------------------------------


def cmd_density(args, out, config: GlobalConfig) -> int:
    q = density.ResidueClassQuery(args.residue, args.modulus, args.limit)
    seg = config.sieve_segment_bits
    if args.plot:
        series = density.density_series(q.r, q.N, _plot_grid(args.limit), segment=seg)
        rep = series[-1]
        from .plotting import plot_density_convergence, write_series_csv

        fig = plot_density_convergence(series, args.plot)
        table = write_series_csv(series, Path(args.plot).with_suffix(".csv"))
        log.info("wrote %s and %s", fig, table)
    else:
        rep = density.density_report(q, segment=seg)
    doc = rep.as_dict()
    if args.json:
        _emit_json(doc, out)
    else:
        for key, val in doc.items():
            out.write(f"{key}: {val}\n")
    return EXIT_OK


def _plot_grid(limit: int) -> list[int]:
    from .plotting import decade_grid

    return decade_grid(limit, start=10 if limit > 10 else 2)


# --- curve ------------------------------------------------------------------


def curve_doc(alpha, points, torsion) -> dict:
    cu = curves.curve_from_alpha(alpha)
    audit = curves.audit_alpha(alpha)
    doc = {"field": alpha.field.label(), "alpha": str(alpha)}
    doc.update({k: str(v) for k, v in cu.coefficients().items()})
    doc.update({"b2": str(cu.b2), "b4": str(cu.b4), "b6": str(cu.b6), "b8": str(cu.b8)})
    doc.update(
        {
            "delta": str(cu.delta),
            "valid": audit.valid,
            "paper_poly_at_alpha": str(audit.paper_poly_at_alpha),
            "discriminant_discrepancy": audit.discrepancy,
            "b_identity_holds": cu.b_identity_holds(),
            "points": None if points is None else [{"x": str(p.x), "y": str(p.y)} for p in points],
            "torsion_candidates": None if torsion is None else [t.as_dict() for t in torsion],
        }
    )
    return doc


def cmd_curve(args, out, config: GlobalConfig) -> int:
    field = parse_field(args.field)
    alpha = parse_quadint(args.alpha, field)
    cu = curves.curve_from_alpha(alpha)
    wants_points = args.bound is not None
    if (wants_points or args.torsion) and not curves.is_valid_alpha(alpha):
        raise DomainError(f"E_alpha is singular for alpha = {alpha} (delta = 0)")
    points = curves.integral_point_search(cu, args.bound, args.even_x, config) if wants_points else None
    torsion = curves.torsion_candidates_over_Q(cu) if args.torsion else None
    doc = curve_doc(alpha, points, torsion)
    if args.json:
        _emit_json(doc, out)
        return EXIT_OK
    for key, val in doc.items():
        if key in ("points", "torsion_candidates"):
            continue
        out.write(f"{key}: {val}\n")
    if doc["discriminant_discrepancy"]:
        out.write(f"note: standard delta {doc['delta']} differs from printed polynomial {doc['paper_poly_at_alpha']}\n")
    if points is not None:
        out.write(f"points ({len(points)}):\n")
        for p in points:
            out.write(f"  {p}\n")
    if torsion is not None:
        out.write(f"torsion candidates ({len(torsion)}):\n")
        for t in torsion:
            mark = " even-numerator" if t.even_x_numerator else ""
            out.write(f"  x={t.x} y={t.y} order={t.order}{mark}\n")
    return EXIT_OK


# --- wiring -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fruitcheck", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("field", help="splitting of 2 and the 2-adic root of t")
    p.add_argument("--t", "--field", dest="t", required=True, help="square-free t, or Q")
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="bits of the 2-adic root")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("obstruct", help="decide the mod P^2 obstruction")
    p.add_argument("--field", required=True, help="square-free t, or Q")
    p.add_argument("--a", required=True, help="element as u,v")
    p.add_argument("--b", required=True, help="element as u,v")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--branch", type=int, choices=(0, 1), default=0, help="which prime above 2")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("search", help="exhaustive box search for witnesses")
    p.add_argument("--field", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--c")
    p.add_argument("--b")
    p.add_argument("--r", type=int)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--even-x", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("density", help="square-free density in a residue class")
    p.add_argument("--residue", type=int, required=True)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--plot", metavar="PNG", help="also write a convergence figure and a CSV beside it")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("curve", help="E_alpha: invariants, integral points, torsion candidates")
    p.add_argument("--field", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--bound", type=int)
    p.add_argument("--even-x", action="store_true")
    p.add_argument("--torsion", action="store_true")
    p.add_argument("--json", action="store_true")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s: %(message)s")
    try:
        mode = OutputMode.JSON if getattr(args, "json", False) else OutputMode.HUMAN
        config = GlobalConfig.from_env(output_mode=mode)
        if args.command == "field":
            return cmd_field(args, out)
        if args.command == "obstruct":
            return cmd_obstruct(args, out)
        if args.command == "search":
            return cmd_search(args, out, config)
        if args.command == "density":
            return cmd_density(args, out, config)
        return cmd_curve(args, out, config)
    except CostCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COST
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
