"""Command-line interface: fit, compare, curve, simulate, stats.

Exit codes: 0 success, 1 input/domain error, 2 fit failure.
"""

import argparse
import json
import sys

import numpy as np

from . import claims, fitting
from .errors import DataError, DomainError, ExpocurveError, FitFailureError
from .exposure import curve_to_distribution, sample as draw_sample
from .families import FAMILY_NAMES, get_family
from .mbbefd import swiss_re_params

__all__ = ["main"]


def _parse_params(pairs, spec):
    theta = {}
    for item in pairs or []:
        if "=" not in item:
            raise DomainError(f"--param expects name=value, got {item!r}")
        name, _, value = item.partition("=")
        name = name.strip()
        if name not in spec.param_names:
            raise DomainError(
                f"unknown parameter {name!r} for family {spec.name!r}; "
                f"expected one of {', '.join(spec.param_names)}"
            )
        try:
            theta[name] = float(value)
        except ValueError:
            raise DomainError(f"parameter {name!r} has non-numeric value {value!r}") from None
    missing = [p for p in spec.param_names if p not in theta]
    if missing:
        raise DomainError(f"missing parameters for {spec.name!r}: {', '.join(missing)}")
    return theta


def _write(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_fit(args) -> int:
    spec = get_family(args.family)
    sample = claims.load_claims(args.input, schema=args.schema)
    try:
        result = fitting.fit(spec, sample.z_values, mode=args.mode)
    except FitFailureError as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        return 2
    _write(_json_dumps(result.to_dict()), args.out)
    return 0


def cmd_compare(args) -> int:
    specs = [get_family(name) for name in args.family]
    modes = args.mode or ["standard", "extended"]
    sample = claims.load_claims(args.input, schema=args.schema)
    table = fitting.compare(specs, sample.z_values, modes=modes)
    if args.format == "json":
        _write(_json_dumps(table.to_json_obj()), args.out)
    else:
        _write(table.to_csv(), args.out)
    return 0


def cmd_curve(args) -> int:
    from .mbbefd import MbbefdParams, mbbefd_curve

    if args.swiss_re is not None:
        curve = mbbefd_curve(swiss_re_params(args.swiss_re))
    else:
        if not args.family:
            raise DomainError("curve needs --family with --param values, or --swiss-re")
        spec = get_family(args.family)
        theta = _parse_params(args.param, spec)
        if spec.name == "mbbefd":
            # the degenerate identity case (g=1 or b=0) is allowed for curve output
            curve = mbbefd_curve(MbbefdParams(**theta))
        else:
            spec.check_domain(theta)
            curve = spec.curve(theta)
    dist = curve_to_distribution(curve)
    grid = args.grid
    z = np.arange(grid) / grid
    gv = np.asarray(curve.g(z), dtype=float)
    fv = np.asarray(dist.cdf(z), dtype=float)
    dv = np.asarray(dist.pdf(z), dtype=float)
    lines = ["z,G,F,f"]
    for zi, gi, fi, di in zip(z, gv, fv, dv):
        lines.append(",".join(repr(float(v)) for v in (zi, gi, fi, di)))
    lines.append(f"# p={float(dist.point_mass_p)!r},mean={float(dist.mean)!r}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def cmd_simulate(args) -> int:
    spec = get_family(args.family)
    theta = _parse_params(args.param, spec)
    spec.check_domain(theta)
    dist = spec.make_distribution(theta)
    z = draw_sample(dist, args.n, args.seed) if args.n > 0 else np.empty(0)
    if args.out:
        claims.save_sample(z, args.out)
    else:
        sys.stdout.write("z\n" + "".join(repr(float(v)) + "\n" for v in z))
    return 0


def cmd_stats(args) -> int:
    sample = claims.load_claims(args.input, schema=args.schema)
    stats = fitting.empirical_stats(sample.z_values, bins=args.bins)
    obj = {
        "n": stats.n,
        "point_mass_at_1": stats.point_mass_at_1,
        "mean": stats.mean,
        "dropped_zero": sample.n_dropped_zero,
        "histogram": {
            "edges": stats.hist_edges.tolist(),
            "counts": stats.hist_counts.tolist(),
        },
        "kde": {
            "grid": stats.kde_grid.tolist(),
            "values": stats.kde_values.tolist(),
            "bandwidth": stats.bandwidth,
        },
    }
    _write(_json_dumps(obj), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expocurve",
        description="Exposure-curve distributions for censored losses: fit, compare, simulate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common_io(p):
        p.add_argument("--input", required=True, help="input CSV path")
        p.add_argument("--schema", choices=["z", "raw"], default="z")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p_fit = sub.add_parser("fit", help="maximum-likelihood fit of one family")
    p_fit.add_argument("--family", required=True)
    p_fit.add_argument("--mode", choices=["standard", "extended"], default="standard")
    add_common_io(p_fit)
    p_fit.set_defaults(func=cmd_fit)

    p_cmp = sub.add_parser("compare", help="fit several families and rank by AIC")
    p_cmp.add_argument("--family", action="append", required=True,
                       help="repeatable; one of " + ", ".join(FAMILY_NAMES))
    p_cmp.add_argument("--mode", action="append", choices=["standard", "extended"],
                       help="repeatable; default both")
    p_cmp.add_argument("--format", choices=["csv", "json"], default="csv")
    add_common_io(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    p_curve = sub.add_parser("curve", help="tabulate z, G, F, f for plotting")
    p_curve.add_argument("--family", default=None)
    p_curve.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    p_curve.add_argument("--swiss-re", type=float, default=None, dest="swiss_re",
                         help="Swiss Re / Lloyd's parameter c (implies mbbefd)")
    p_curve.add_argument("--grid", type=int, default=101)
    p_curve.add_argument("--out", default=None)
    p_curve.set_defaults(func=cmd_curve)

    p_sim = sub.add_parser("simulate", help="draw a reproducible sample to a z-schema CSV")
    p_sim.add_argument("--family", required=True)
    p_sim.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", default=None)
    p_sim.set_defaults(func=cmd_simulate)

    p_stats = sub.add_parser("stats", help="empirical statistics of a sample")
    p_stats.add_argument("--bins", type=int, default=50)
    add_common_io(p_stats)
    p_stats.set_defaults(func=cmd_stats)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "grid", 2) < 2:
        print("--grid must be >= 2", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (DataError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FitFailureError as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        return 2
    except ExpocurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
