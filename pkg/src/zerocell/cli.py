"""Command-line front end.

Commands: zero-cell, half-sphere, limit, solid-angle, sylvester, value,
tables, simulate, verify.  Exit codes: 0 success, 1 statistical or identity
failure, 2 usage error.  Output is plain text (no color), so NO_COLOR needs
no special handling.  Given identical arguments (and seed), every command
prints identical bytes, except for the wall-clock ``seconds`` field of
simulation reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import arrays, formulas, montecarlo, tables, verify
from .piring import PiNumber, format_pi, pi_number_to_json

__all__ = ["main", "build_parser", "VALUE_REGISTRY"]

USAGE_ERROR = 2
CHECK_FAILURE = 1

FORMATS = ("exact", "latex", "json", "csv", "float")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None,
                        help="output format (default: exact; simulate: json)")
    common.add_argument("--out", metavar="PATH", default=None,
                        help="write output to PATH instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="random seed (simulate)")
    common.add_argument("--trials", type=int, default=10000,
                        help="number of Monte Carlo trials (simulate)")
    common.add_argument("--threads", type=int, default=1,
                        help="worker processes for simulation trials")

    parser = argparse.ArgumentParser(
        prog="zerocell",
        description="Exact face statistics of the Poisson zero cell and of "
                    "random spherical hulls on the half-sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zero-cell", parents=[common],
                       help="expected f-vector of the Poisson zero cell")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--table", action="store_true",
                   help="print the reference table for d = 1..10")

    p = sub.add_parser("half-sphere", parents=[common],
                       help="expected f-vector of the hull of n points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)

    p = sub.add_parser("limit", parents=[common],
                       help="large-sample limit of the half-sphere f-vector")
    p.add_argument("--dim", type=int, required=True)

    p = sub.add_parser("solid-angle", parents=[common],
                       help="expected solid angle of the cone of n points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)

    p = sub.add_parser("sylvester", parents=[common],
                       help="probability that d+2 points span a simplex")
    p.add_argument("--dim", type=int, required=True)

    p = sub.add_parser("value", parents=[common],
                       help="evaluate a registered quantity exactly")
    p.add_argument("quantity", nargs="?", default=None)
    p.add_argument("params", nargs="*")

    p = sub.add_parser("tables", parents=[common],
                       help="regenerate one of the five reference tables")
    p.add_argument("--which", type=int, required=True, choices=(1, 2, 3, 4, 5))

    p = sub.add_parser("simulate", parents=[common],
                       help="Monte Carlo check of a closed form")
    p.add_argument("estimator", choices=("fvector", "sylvester", "angle"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--dim", type=int, required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="run the exact identity suite")
    p.add_argument("--max-n", type=int, default=12)

    return parser


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_values(values: list[PiNumber], fmt: str, labels: list[str] | None = None) -> str:
    fmt = fmt or "exact"
    if fmt == "exact":
        return ", ".join(format_pi(v) for v in values) + "\n"
    if fmt == "float":
        return ", ".join(f"{v.eval_float():.15g}" for v in values) + "\n"
    if fmt == "latex":
        return "$" + ",\\; ".join(tables.latex_pi(v) for v in values) + "$\n"
    if fmt == "csv":
        return ",".join(f'"{format_pi(v)}"' for v in values) + "\n"
    if fmt == "json":
        payload = [
            {
                "label": labels[i] if labels else i,
                "exact": pi_number_to_json(v),
                "text": format_pi(v),
                "float": v.eval_float(),
            }
            for i, v in enumerate(values)
        ]
        return json.dumps(payload, indent=2) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


# -- the value registry ---------------------------------------------------------

def _int_args(params, count, what):
    if len(params) != count:
        raise UsageError(f"{what} takes {count} integer argument(s)")
    try:
        return [int(p) for p in params]
    except ValueError as exc:
        raise UsageError(f"{what}: {exc}") from exc


def _value_a(params):
    n, k = _int_args(params, 2, "A")
    return arrays.a_value(n, k)


def _value_b(params):
    n, k = _int_args(params, 2, "B")
    return arrays.b_value(n, k)


def _value_i(params):
    n, k = _int_args(params, 2, "I")
    return arrays.i_tilde_bb(n, k)


def _value_j(params):
    n, k = _int_args(params, 2, "J")
    return arrays.j_tilde_bb(n, k)


def _value_j_recursive(params):
    n, k = _int_args(params, 2, "Jrec")
    return arrays.j_tilde_recursive(n, k)


def _value_sin_moment(params):
    (m,) = _int_args(params, 1, "sin-moment")
    return arrays.sin_moment(m)


def _value_zero_cell(params):
    d, ell = _int_args(params, 2, "zero-cell-f")
    entries = formulas.zero_cell_f_vector(d).entries
    if not 0 <= ell < d:
        raise UsageError("face dimension out of range")
    return entries[ell]


def _value_half_sphere(params):
    n, d, k = _int_args(params, 3, "half-sphere-f")
    values = formulas.half_sphere_f_vector(n, d)
    if not 0 <= k < d:
        raise UsageError("face dimension out of range")
    return values[k]


def _value_limit(params):
    d, k = _int_args(params, 2, "limit-f")
    values = formulas.limit_f_vector(d)
    if not 0 <= k < d:
        raise UsageError("face dimension out of range")
    return values[k]


def _value_solid_angle(params):
    n, d = _int_args(params, 2, "solid-angle")
    return formulas.expected_solid_angle(n, d)


def _value_edges(params):
    n, d = _int_args(params, 2, "edges")
    return formulas.expected_edges(n, d)


def _value_sylvester(params):
    (d,) = _int_args(params, 1, "sylvester")
    return formulas.sylvester_probability(d)


def _value_intrinsic(params):
    if len(params) not in (2, 3):
        raise UsageError("intrinsic-volume takes d, l and optionally gamma")
    try:
        d, ell = int(params[0]), int(params[1])
        gamma = Fraction(params[2]) if len(params) == 3 else Fraction(1)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"intrinsic-volume: {exc}") from exc
    return formulas.zero_cell_intrinsic_volume(d, ell, gamma)


def _value_grassmann(params):
    k, d = _int_args(params, 2, "grassmann")
    return formulas.grassmann_constant(k, d)


def _value_c_star(params):
    (d,) = _int_args(params, 1, "c-star")
    return formulas.c_star(d)


def _value_cover_efron(params):
    k, d = _int_args(params, 2, "cover-efron")
    return PiNumber.from_rational(formulas.cover_efron_limit(k, d))


def _value_facets(params):
    n, d = _int_args(params, 2, "facet-integral")
    return formulas.barany_expected_facets(n, d)


VALUE_REGISTRY = {
    "A": ("A n k", _value_a),
    "B": ("B n k", _value_b),
    "I": ("I n k (external angle sum)", _value_i),
    "J": ("J n k (internal angle sum)", _value_j),
    "Jrec": ("Jrec n k (internal angles, recursive route)", _value_j_recursive),
    "sin-moment": ("sin-moment m", _value_sin_moment),
    "zero-cell-f": ("zero-cell-f d l", _value_zero_cell),
    "half-sphere-f": ("half-sphere-f n d k", _value_half_sphere),
    "limit-f": ("limit-f d k", _value_limit),
    "edges": ("edges n d", _value_edges),
    "facet-integral": ("facet-integral n d", _value_facets),
    "solid-angle": ("solid-angle n d", _value_solid_angle),
    "sylvester": ("sylvester d", _value_sylvester),
    "intrinsic-volume": ("intrinsic-volume d l [gamma]", _value_intrinsic),
    "grassmann": ("grassmann k d", _value_grassmann),
    "c-star": ("c-star d", _value_c_star),
    "cover-efron": ("cover-efron k d", _value_cover_efron),
}


# -- command handlers ------------------------------------------------------------

def _cmd_zero_cell(args) -> int:
    if args.table:
        _emit(tables.render_table(1, args.format or "exact"), args)
        return 0
    if args.dim is None:
        raise UsageError("zero-cell needs --dim or --table")
    if not 1 <= args.dim <= 30:
        raise UsageError("dimension must be in 1..30")
    fv = formulas.zero_cell_f_vector(args.dim)
    labels = [f"f_{ell}" for ell in range(args.dim)]
    _emit(_render_values(list(fv.entries), args.format, labels), args)
    return 0


def _cmd_half_sphere(args) -> int:
    values = formulas.half_sphere_f_vector(args.n, args.dim)
    labels = [f"f_{k}" for k in range(args.dim)]
    _emit(_render_values(values, args.format, labels), args)
    return 0


def _cmd_limit(args) -> int:
    values = formulas.limit_f_vector(args.dim)
    labels = [f"f_{k}" for k in range(args.dim)]
    _emit(_render_values(values, args.format, labels), args)
    return 0


def _cmd_solid_angle(args) -> int:
    value = formulas.expected_solid_angle(args.n, args.dim)
    _emit(_render_values([value], args.format, ["alpha"]), args)
    return 0


def _cmd_sylvester(args) -> int:
    value = formulas.sylvester_probability(args.dim)
    _emit(_render_values([value], args.format, ["P"]), args)
    return 0


def _cmd_value(args) -> int:
    if args.quantity is None or args.quantity not in VALUE_REGISTRY:
        listing = "\n".join(f"  {usage}" for usage, _ in VALUE_REGISTRY.values())
        prefix = "" if args.quantity is None else f"unknown quantity {args.quantity!r}\n"
        raise UsageError(f"{prefix}registered quantities:\n{listing}")
    _, handler = VALUE_REGISTRY[args.quantity]
    try:
        value = handler(args.params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(_render_values([value], args.format, [args.quantity]), args)
    return 0


def _cmd_tables(args) -> int:
    _emit(tables.render_table(args.which, args.format or "exact"), args)
    return 0


def _cmd_simulate(args) -> int:
    if args.format not in (None, "json"):
        raise UsageError("simulate reports are JSON only")
    trials = args.trials
    if trials < 100:
        raise UsageError("simulate needs --trials >= 100")
    if args.estimator == "fvector":
        if args.n is None:
            raise UsageError("fvector needs --n")
        report = montecarlo.estimate_f_vector(args.n, args.dim, trials,
                                              args.seed, workers=args.threads)
    elif args.estimator == "sylvester":
        report = montecarlo.estimate_sylvester(args.dim, trials, args.seed,
                                               workers=args.threads)
    else:
        if args.n is None:
            raise UsageError("angle needs --n")
        report = montecarlo.estimate_solid_angle(args.n, args.dim, trials,
                                                 args.seed, workers=args.threads)
    _emit(json.dumps(report.to_json_dict(), indent=2) + "\n", args)
    return CHECK_FAILURE if report.max_abs_z > 4 else 0


def _cmd_verify(args) -> int:
    if not 1 <= args.max_n <= 20:
        raise UsageError("--max-n must be in 1..20")
    results = verify.run_verification(args.max_n)
    lines = []
    all_ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        extra = f" ({res.checks} checks)" if res.passed else f" ({res.detail})"
        lines.append(f"{res.name}: {status}{extra}")
        all_ok &= res.passed
    lines.append("all identities hold" if all_ok else "identity failures detected")
    _emit("\n".join(lines) + "\n", args)
    return 0 if all_ok else CHECK_FAILURE


_HANDLERS = {
    "zero-cell": _cmd_zero_cell,
    "half-sphere": _cmd_half_sphere,
    "limit": _cmd_limit,
    "solid-angle": _cmd_solid_angle,
    "sylvester": _cmd_sylvester,
    "value": _cmd_value,
    "tables": _cmd_tables,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
