"""Command-line interface

Run `tgrf --help` (or `python -m tgrf --help`) for the list of subcommands.

"""

import argparse
import json
import logging
import sys

from ..utilities import format_float, parse_float, parse_float_list, parse_window


def _add_model_arguments(parser):
    parser.add_argument("--d", type=int, required=True, choices=(1, 2, 3), help="spatial dimension")
    parser.add_argument("--lambda", dest="lam", type=parse_float, default=0.5, help="correlation length λ")
    parser.add_argument("--nu", type=parse_float, required=True, help="smoothness ν")
    parser.add_argument("--h", type=parse_float, required=True, help="grid spacing (accepts 1/800 or 2**-8)")
    parser.add_argument("--e0", type=parse_float, default=0.5, help="half-width of the sampling domain")


def _add_scheme_arguments(parser):
    parser.add_argument("--scheme", choices=("classical", "bspline", "expsmooth"), required=True)
    parser.add_argument("--p", type=int, default=None, help="B-spline smoothness (default ⌈ν + d/2⌉)")
    parser.add_argument("--kappa", type=parse_float, default=None, help="cutoff outer radius (default 2γ - 2e0√d)")
    parser.add_argument("--r0", type=parse_float, default=None, help="exponential cutoff inner radius (default 2e0√d)")


def _add_size_arguments(parser):
    size = parser.add_mutually_exclusive_group(required=True)
    size.add_argument("--gamma", type=parse_float, help="torus half-width γ (rounded up to a grid step)")
    size.add_argument("--n", type=int, help="even number of points per axis")


def _model(args):
    from ..covariance import CovarianceModel
    return CovarianceModel(lam=args.lam, nu=args.nu, d=args.d)


def _descriptor(args):
    from ..torus import SchemeDescriptor
    return SchemeDescriptor(args.scheme, p=args.p, kappa=args.kappa, inner_radius=args.r0)


def _grid(args):
    from ..torus import TorusGrid
    if args.n is not None:
        return TorusGrid(d=args.d, n_per_axis=args.n, h=args.h, e0=args.e0)
    return TorusGrid.from_gamma(args.d, args.gamma, args.h, args.e0)


def _emit(data, out=None):
    text = json.dumps(data, indent=4, separators=(",", ": "))
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
        print(f"Wrote {out}")
    else:
        print(text)


def cmd_factorize(args):
    from ..torus import factorize, save_factor
    model, grid = _model(args), _grid(args)
    scheme = _descriptor(args).scheme_for(grid, model)
    factor = factorize(model, grid, scheme)
    save_factor(factor, args.out)
    _emit({
        "file": str(args.out),
        "grid": grid.to_dict(),
        "scheme": scheme.to_dict(),
        "min_eig": factor.min_eig,
        "max_eig": factor.max_eig,
        "is_pd": factor.is_pd,
        "checksum": factor.checksum,
    })
    return 0 if factor.is_pd else 1


def cmd_sample(args):
    from ..torus import load_factor, save_samples
    from ..sampler import RngStream, draw
    factor = load_factor(args.factor)
    batch = draw(factor, RngStream(args.seed, args.stream), args.count, restrict=not args.full,
                 show_progress=args.progress)
    if args.csv:
        batch.to_csv(args.out)
    else:
        save_samples(batch, args.out)
    print(f"Wrote {batch.count} realizations on {batch.values.shape[1]} points to {args.out}")
    return 0


def cmd_min_gamma(args):
    from .min_gamma import min_gamma
    bounds = (args.nmin, args.nmax) if args.nmin is not None and args.nmax is not None else None
    result = min_gamma(
        _model(args), args.h, _descriptor(args), bounds=bounds, e0=args.e0,
        max_cells=args.max_cells, nmax_cap=args.nmax_cap,
    )
    _emit(result.to_dict(), args.out)
    return 0


def _sweep(args, kind):
    from .config import SweepConfig
    from .sweeps import fig2_sweep, fig3_sweep
    if args.config:
        config = SweepConfig.from_json_file(args.config)
    else:
        factory = SweepConfig.fig2 if kind == "fig2" else SweepConfig.fig3
        extra = {"full_sweep": args.full} if kind == "fig2" else {}
        config = factory(args.d, **extra)
    if args.h_list:
        config.h_list = parse_float_list(args.h_list)
    if args.nu_list:
        config.nu_list = parse_float_list(args.nu_list)
    if args.output:
        config.output = args.output
    if args.svg:
        config.svg = args.svg
    if args.workers:
        config.workers = args.workers
    config.validate()
    sweep = fig2_sweep if kind == "fig2" else fig3_sweep
    table = sweep(config, show_progress=args.progress)
    if config.output:
        print(f"Wrote {config.output}")
    else:
        print(table.to_csv(index=False, float_format=format_float), end="")
    return 0 if (table["status"] == "ok").all() else 1


def cmd_fig2(args):
    return _sweep(args, "fig2")


def cmd_fig3(args):
    return _sweep(args, "fig3")


def cmd_eig_decay(args):
    from .decay_report import eig_decay_report
    model, grid = _model(args), _grid(args)
    scheme = _descriptor(args).scheme_for(grid, model)
    window = parse_window(args.window) if args.window else None
    table, fit = eig_decay_report(model, grid, scheme, window=window, output=args.out)
    if not args.out:
        print(table.to_csv(index=False, float_format=format_float), end="")
    summary = fit.to_dict()
    summary["expected_exponent"] = fit.expected_exponent(model.nu, model.d)
    if args.trend_h:
        from .decay_report import classical_prefactor_trend
        trend, slope, intercept = classical_prefactor_trend(model, parse_float_list(args.trend_h), gamma=grid.gamma)
        summary["classical_prefactor_trend"] = {
            "rows": trend.to_dict(orient="records"),
            "slope": slope,
            "intercept": intercept,
        }
    _emit(summary)
    return 0


def cmd_validate(args):
    from ..torus import load_factor
    from ..sampler import validation_report
    factor = load_factor(args.factor)
    report = validation_report(factor, args.count, seed=args.seed, stream_id=args.stream)
    _emit(report, args.out)
    return 0 if report["passed"] else 1


def build_parser():
    from ..__about__ import __version__
    parser = argparse.ArgumentParser(
        prog="tgrf",
        description="Exact sampling of Matérn Gaussian random fields by classical and smooth periodization",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (-v info, -vv debug)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser("factorize", help="build and store a spectral factor")
    _add_model_arguments(p)
    _add_scheme_arguments(p)
    _add_size_arguments(p)
    p.add_argument("--out", required=True, help="output .tgrf file")
    p.set_defaults(func=cmd_factorize)

    p = subparsers.add_parser("sample", help="draw realizations from a stored factor")
    p.add_argument("--factor", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--csv", action="store_true", help="write CSV instead of the binary container")
    p.add_argument("--full", action="store_true", help="keep the whole torus, not just the sampling domain")
    p.add_argument("--progress", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = subparsers.add_parser("min-gamma", help="smallest torus giving a positive semidefinite embedding")
    _add_model_arguments(p)
    _add_scheme_arguments(p)
    p.add_argument("--nmin", type=int, default=None)
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--nmax-cap", type=int, default=None)
    p.add_argument("--max-cells", type=int, default=None)
    p.add_argument("--out", default=None, help="JSON output file (default: stdout)")
    p.set_defaults(func=cmd_min_gamma)

    for name, func, help_text in (
        ("fig2", cmd_fig2, "extension ratio against h, classical and smooth"),
        ("fig3", cmd_fig3, "minimal γ against ν for both smooth cutoffs"),
    ):
        p = subparsers.add_parser(name, help=help_text)
        source = p.add_mutually_exclusive_group(required=True)
        source.add_argument("--config", help="JSON sweep configuration")
        source.add_argument("--d", type=int, choices=(1, 2, 3), help="use the default sweep for this dimension")
        p.add_argument("--h-list", default=None, help="comma-separated spacings, e.g. 2**-6,2**-7")
        p.add_argument("--nu-list", default=None, help="comma-separated smoothness values")
        p.add_argument("--output", default=None, help="CSV output (overrides the configuration)")
        p.add_argument("--svg", default=None, help="SVG plot output")
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--progress", action="store_true")
        if name == "fig2":
            p.add_argument("--full", action="store_true", help="include the finest d=3 spacing")
        p.set_defaults(func=func)

    p = subparsers.add_parser("eig-decay", help="sorted eigenvalues and their decay exponent")
    _add_model_arguments(p)
    _add_scheme_arguments(p)
    _add_size_arguments(p)
    p.add_argument("--window", default=None, help="index window 'a,b' (default N^d/64,N^d/4)")
    p.add_argument("--trend-h", default=None,
                   help="comma-separated spacings for the classical prefactor trend against (log(λ/h))^ν")
    p.add_argument("--out", default=None, help="CSV output; the fit goes to the matching .json")
    p.set_defaults(func=cmd_eig_decay)

    p = subparsers.add_parser("validate", help="statistical report on samples from a stored factor")
    p.add_argument("--factor", required=True)
    p.add_argument("--count", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--out", default=None, help="JSON output file (default: stdout)")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
