# -*- coding: utf-8 -*-

"""
Command line driver. Every subcommand prints one JSON record on standard
output (logs go to standard error) and returns an exit code:

- 0: success
- 1: a verification failed
- 2: usage error or bad input
"""

import sys
import logging
import argparse
import typing as T

from .algebra import SpherePoint, resultant
from .context import DEFAULT_SEED, RunConfig
from .exc import GreenlemError
from .green import DEFAULT_TOL, green
from .logger import logger, setup_logging
from .measure import BURN_IN, DEFAULT_COUNT, energy, sample
from .render import (
    BAND_EPS,
    INTERIOR_TOL,
    Viewport,
    render_lemniscate,
    render_measure,
    render_potential,
    write_ppm,
)
from .serialize import (
    dumps,
    load_map,
    measure_to_json,
    poly_map,
    read_measure,
    write_json,
    write_measure_csv,
)
from .utils import complex_to_pair, ensure_exact_one_given
from .verify import (
    CHECK_NAMES,
    DEFAULT_DEPTH,
    HIGH_THRESHOLD,
    LOW_THRESHOLD,
    balanced_sample,
    discriminate_polynomial,
    pick_base_point,
    resultant_product,
    run_suite,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


# options whose values may start with "-", e.g. "--poly -1,0,1"
NEGATIVE_VALUE_OPTIONS = ("--poly", "--at", "--base", "--viewport")


def join_option_values(argv: T.Sequence[str]) -> T.List[str]:
    """
    Rewrite ``["--at", "-3,0"]`` as ``["--at=-3,0"]`` for
    :data:`NEGATIVE_VALUE_OPTIONS`. Older argparse releases take ``-3,0``
    for an option and fail with "expected one argument".
    """
    joined: T.List[str] = []
    args = list(argv)
    i = 0
    while i < len(args):
        if args[i] in NEGATIVE_VALUE_OPTIONS and i + 1 < len(args):
            joined.append(f"{args[i]}={args[i + 1]}")
            i += 2
        else:
            joined.append(args[i])
            i += 1
    return joined


def _add_map_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("map")
    group.add_argument("--map", dest="map_path", help="map JSON file")
    group.add_argument(
        "--poly",
        help='polynomial coefficients c0,c1,...,cd, e.g. "-1,0,1" for z^2 - 1',
    )


def _add_seed_arg(parser: argparse.ArgumentParser):
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="64-bit seed")


def _add_sample_args(parser: argparse.ArgumentParser):
    parser.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="tree depth")
    parser.add_argument(
        "--count", type=int, default=DEFAULT_COUNT, help="walk sample size"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greenlem",
        description="Green functions, balanced measures and resultants of "
        "rational maps of the Riemann sphere.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logs")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("resultant", help="homogeneous resultant of the canonical lift")
    _add_map_args(p)
    p.add_argument(
        "--product", action="store_true", help="also compute it from the two fibres"
    )

    p = sub.add_parser("green", help="dynamical Green function at a point")
    _add_map_args(p)
    p.add_argument("--at", required=True, help='"re,im" or "inf"')
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--strict", action="store_true", help="refine the tail constant")

    p = sub.add_parser("sample", help="sample the balanced measure")
    _add_map_args(p)
    p.add_argument("--method", choices=["auto", "tree", "walk"], default="auto")
    _add_sample_args(p)
    p.add_argument("--burn-in", type=int, default=BURN_IN, dest="burn_in")
    p.add_argument("--chains", type=int, default=1)
    p.add_argument("--base", help='base point "re,im" or "inf", default picked')
    _add_seed_arg(p)
    p.add_argument("--out", help="measure JSON file, default standard output")
    p.add_argument(
        "--csv", action="store_true", help="also write re,im,weight next to --out"
    )

    p = sub.add_parser("energy", help="logarithmic energy of a measure file")
    p.add_argument("--in", dest="in_path", required=True, help="measure JSON file")

    p = sub.add_parser("verify", help="check identities")
    p.add_argument("which", nargs="+", choices=("all",) + CHECK_NAMES)
    _add_map_args(p)
    _add_sample_args(p)
    _add_seed_arg(p)

    p = sub.add_parser("render", help="write a PPM image and a sidecar JSON")
    p.add_argument("kind", choices=["potential", "lemniscate", "measure"])
    _add_map_args(p)
    p.add_argument("--viewport", required=True, help="x_min,x_max,y_min,y_max")
    p.add_argument("--size", required=True, help="WxH")
    p.add_argument("--out", required=True, help="PPM file")
    p.add_argument("--tol", type=float, default=INTERIOR_TOL, help="interior threshold")
    p.add_argument("--band-eps", type=float, default=BAND_EPS, dest="band_eps")
    p.add_argument("--in", dest="in_path", help="measure JSON file for kind=measure")
    _add_sample_args(p)
    _add_seed_arg(p)

    p = sub.add_parser("discriminate", help="lemniscate test for polynomial maps")
    _add_map_args(p)
    p.add_argument("--low", type=float, default=LOW_THRESHOLD)
    p.add_argument("--high", type=float, default=HIGH_THRESHOLD)
    _add_sample_args(p)
    _add_seed_arg(p)
    return parser


def _load_map(args: argparse.Namespace):
    which = ensure_exact_one_given(map_path=args.map_path, poly=args.poly)
    if which == "map_path":
        return args.map_path, load_map(args.map_path)
    return f"poly:{args.poly}", poly_map(args.poly)


def _params(args: argparse.Namespace, *names: str) -> T.Dict[str, T.Any]:
    return {name: getattr(args, name) for name in names}


def _emit(data: T.Any):
    sys.stdout.write(dumps(data) + "\n")
    sys.stdout.flush()


def cmd_resultant(args: argparse.Namespace) -> int:
    source, f = _load_map(args)
    config = RunConfig.new("resultant", source, f.to_json(), _params(args, "product"))
    res = resultant(f)
    payload = {
        "res": complex_to_pair(res),
        "abs_res": abs(res),
        "d": f.lift.d,
        "d0": f.lift.d0,
        "d1": f.lift.d1,
    }
    if args.product:
        payload["abs_res_product"] = resultant_product(f)
    _emit(config.record(**payload))
    return EXIT_OK


def cmd_green(args: argparse.Namespace) -> int:
    source, f = _load_map(args)
    config = RunConfig.new(
        "green", source, f.to_json(), _params(args, "at", "tol", "strict")
    )
    result = green(f, SpherePoint.parse(args.at), tol=args.tol, strict=args.strict)
    _emit(config.record(**result.to_json()))
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    source, f = _load_map(args)
    config = RunConfig.new(
        "sample",
        source,
        f.to_json(),
        _params(args, "method", "depth", "count", "burn_in", "chains", "base"),
        seed=args.seed,
        out=args.out,
    )
    base = SpherePoint.parse(args.base) if args.base else pick_base_point(f)
    mu = sample(
        f,
        base,
        method=args.method,
        depth=args.depth,
        count=args.count,
        burn_in=args.burn_in,
        seed=config.seed,
        chains=args.chains,
    )
    record = config.record(**measure_to_json(mu))
    if config.out is None:
        _emit(record)
        return EXIT_OK
    write_json(record, config.out)
    summary = {"out": str(config.out), "n_atoms": mu.size}
    if args.csv:
        write_measure_csv(mu, config.path_csv)
        summary["csv"] = str(config.path_csv)
    _emit(config.record(**summary))
    return EXIT_OK


def cmd_energy(args: argparse.Namespace) -> int:
    mu = read_measure(args.in_path)
    config = RunConfig.new(
        "energy", params={"in": args.in_path, "size": mu.size}, seed=mu.seed
    )
    _emit(config.record(**energy(mu).to_json()))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    source, f = _load_map(args)
    config = RunConfig.new(
        "verify",
        source,
        f.to_json(),
        _params(args, "which", "depth", "count"),
        seed=args.seed,
    )
    reports = run_suite(
        f, which=args.which, depth=args.depth, count=args.count, seed=config.seed
    )
    _emit([config.record(**report.to_json()) for report in reports])
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_render(args: argparse.Namespace) -> int:
    vp = Viewport.parse(args.viewport, args.size)
    params = _params(args, "kind", "viewport", "size", "tol", "band_eps", "depth", "count")
    if args.kind == "measure" and args.in_path:
        mu = read_measure(args.in_path)
        config = RunConfig.new(
            "render", params=dict(params, **{"in": args.in_path}), seed=mu.seed, out=args.out
        )
        image = render_measure(mu, vp)
    else:
        source, f = _load_map(args)
        config = RunConfig.new(
            "render", source, f.to_json(), params, seed=args.seed, out=args.out
        )
        if args.kind == "potential":
            image = render_potential(f, vp, tol=args.tol)
        elif args.kind == "lemniscate":
            image = render_lemniscate(f, vp, band_eps=args.band_eps)
        else:
            mu = balanced_sample(f, depth=args.depth, count=args.count, seed=config.seed)
            image = render_measure(mu, vp)
    write_ppm(image, config.out)
    sidecar = config.record(out=str(config.out), **image.metadata)
    write_json(sidecar, config.path_sidecar_json)
    _emit(sidecar)
    return EXIT_OK


def cmd_discriminate(args: argparse.Namespace) -> int:
    source, f = _load_map(args)
    config = RunConfig.new(
        "discriminate",
        source,
        f.to_json(),
        _params(args, "low", "high", "depth", "count"),
        seed=args.seed,
    )
    result = discriminate_polynomial(
        f,
        low=args.low,
        high=args.high,
        depth=args.depth,
        count=args.count,
        seed=config.seed,
    )
    _emit(config.record(**result.to_json(), agrees_with_degree=result.agrees))
    return EXIT_OK


COMMANDS: T.Dict[str, T.Callable[[argparse.Namespace], int]] = {
    "resultant": cmd_resultant,
    "green": cmd_green,
    "sample": cmd_sample,
    "energy": cmd_energy,
    "verify": cmd_verify,
    "render": cmd_render,
    "discriminate": cmd_discriminate,
}


def main(argv: T.Optional[T.List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(
            join_option_values(sys.argv[1:] if argv is None else argv)
        )
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.verbose:
        setup_logging(logging.DEBUG)
    elif args.quiet:
        setup_logging(logging.WARNING)
    else:
        setup_logging(logging.INFO)
    try:
        return COMMANDS[args.command](args)
    except (GreenlemError, ValueError) as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_USAGE
