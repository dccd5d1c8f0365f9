"""Command-line front end for parameter sweeps and reports.

Subcommands: spectrum | rgrid | rcurve | entropy | dynamics | symcheck |
stages.  Kick strengths are accepted raw or as multiples of pi with a
"pi:" prefix ("pi:16.4"); ranges are "lo:hi" with either component
optionally prefixed ("pi:13:pi:20").  CSV and JSON outputs embed the
full run configuration and a schema tag; records are ordered by grid
index no matter how many workers run, so identical configurations give
identical files.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

import argparse
import concurrent.futures
import json
import math
import sys

import numpy as np

from .dynamics import dynamical_scan
from .errors import NumericalError
from .floquet import KickParams, floquet_operator, generator_factors
from .localization import sphere_averaged_s2, sphere_grid
from .spectral import (DEFAULT_BOUND_TOL, parity_resolved_r, sector_eigenphases,
                       stage_borders, stage_classify)
from .symmetry import verify_symmetries
from .spin import validate_two_j

SCHEMA_PREFIX = "kickedtop"
SCHEMA_VERSION = "v1"


def parse_kappa(text: str) -> float:
    """A kick strength, either a float or 'pi:<float>' for multiples of pi."""
    if text.startswith("pi:"):
        return float(text[3:]) * math.pi
    return float(text)


def parse_range(text: str) -> tuple[float, float]:
    """A 'lo:hi' range whose components may carry the pi: prefix."""
    tokens = text.split(":")
    values = []
    i = 0
    while i < len(tokens):
        if tokens[i] == "pi":
            if i + 1 >= len(tokens):
                raise ValueError(f"dangling 'pi:' in range {text!r}")
            values.append(float(tokens[i + 1]) * math.pi)
            i += 2
        else:
            values.append(float(tokens[i]))
            i += 1
    if len(values) != 2:
        raise ValueError(f"range must have exactly two components, got {text!r}")
    lo, hi = values
    if hi < lo:
        raise ValueError(f"range is empty: {text!r}")
    return lo, hi


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise ValueError("steps must be at least 1")
    return np.linspace(lo, hi, steps)


def _split_product(product: float, ratio: float) -> tuple[float, float]:
    """Kick strengths with kappa_y / kappa_x = ratio at fixed product."""
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    kappa_x = math.sqrt(product / ratio)
    return kappa_x, kappa_x * ratio


def _config_dict(args: argparse.Namespace) -> dict:
    cfg = {}
    for key, value in sorted(vars(args).items()):
        if key == "func":
            continue
        if isinstance(value, (list, tuple)):
            value = list(value)
        cfg[key] = value
    return cfg


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(out: str | None, command: str, config: dict,
               header: list[str], rows: list[list]) -> None:
    lines = [f"# schema: {SCHEMA_PREFIX}.{command}.{SCHEMA_VERSION}",
             f"# config: {json.dumps(config, sort_keys=True)}",
             ",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_json(out: str | None, command: str, config: dict, payload: dict) -> None:
    doc = {"schema": f"{SCHEMA_PREFIX}.{command}.{SCHEMA_VERSION}",
           "config": config, **payload}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _pool_map(fn, items, workers: int) -> list:
    if workers <= 1:
        return [fn(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _warm_cache(two_j: int, delta: float) -> None:
    # build the generator factors once in the main thread so workers only read
    if delta == 0.0:
        generator_factors(two_j, "x")
        generator_factors(two_j, "y")


def cmd_spectrum(args) -> None:
    two_j = validate_two_j(args.two_j)
    lo, hi = parse_range(args.kxky)
    products = _grid(lo, hi, args.steps)
    _warm_cache(two_j, args.delta)

    def point(product: float) -> list:
        kx, ky = _split_product(product, args.ratio)
        params = KickParams(kappa_x=kx, kappa_y=ky, delta=args.delta, variant=args.variant)
        eps_plus, eps_minus = sector_eigenphases(floquet_operator(params, two_j))
        eps = np.sort(np.concatenate([eps_plus, eps_minus]))
        return [product, *eps.tolist()]

    rows = _pool_map(point, products.tolist(), args.workers)
    dim = 2 * (two_j + 1)
    header = ["kxky"] + [f"epsilon_{i}" for i in range(1, dim + 1)]
    _write_csv(args.out, "spectrum", _config_dict(args), header, rows)


def cmd_rgrid(args) -> None:
    two_j = validate_two_j(args.two_j)
    kx_lo, kx_hi = parse_range(args.kx)
    ky_lo, ky_hi = parse_range(args.ky)
    kx_values = _grid(kx_lo, kx_hi, args.steps)
    ky_values = _grid(ky_lo, ky_hi, args.steps)
    points = [(kx, ky) for kx in kx_values for ky in ky_values]
    _warm_cache(two_j, args.delta)

    def point(pair) -> list:
        kx, ky = pair
        params = KickParams(kappa_x=kx, kappa_y=ky, delta=args.delta, variant=args.variant)
        stats = parity_resolved_r(floquet_operator(params, two_j))
        return [kx, ky, stats["r_mean"], stats["r_plus"], stats["r_minus"],
                stage_classify(kx, ky, two_j)]

    rows = _pool_map(point, points, args.workers)
    _write_csv(args.out, "rgrid", _config_dict(args),
               ["kx", "ky", "r_mean", "r_plus", "r_minus", "stage"], rows)


def cmd_rcurve(args) -> None:
    two_j = validate_two_j(args.two_j)
    lo, hi = parse_range(args.kxky)
    products = _grid(lo, hi, args.steps)
    _warm_cache(two_j, args.delta)

    def point(product: float) -> list:
        kx, ky = _split_product(product, args.ratio)
        params = KickParams(kappa_x=kx, kappa_y=ky, delta=args.delta, variant=args.variant)
        operator = floquet_operator(params, two_j)
        stats = parity_resolved_r(operator)
        eps = np.concatenate(sector_eigenphases(operator))
        n_bound = int((np.minimum(np.abs(eps), np.abs(np.pi - np.abs(eps)))
                       <= args.tol_bound).sum())
        return [product, stats["r_mean"], stage_classify(kx, ky, two_j), n_bound]

    rows = _pool_map(point, products.tolist(), args.workers)
    _write_csv(args.out, "rcurve", _config_dict(args),
               ["kxky", "value", "stage", "n_bound"], rows)


def cmd_entropy(args) -> None:
    two_j = validate_two_j(args.two_j)
    lo, hi = parse_range(args.kxky)
    products = _grid(lo, hi, args.steps)
    if np.any(products <= 0):
        raise ValueError("entropy needs strictly positive kick products")
    grid = sphere_grid(args.grid, args.grid)
    _warm_cache(two_j, args.delta)

    def point(product: float) -> list:
        kx, ky = _split_product(product, args.ratio)
        params = KickParams(kappa_x=kx, kappa_y=ky, delta=args.delta, variant=args.variant)
        result = sphere_averaged_s2(floquet_operator(params, two_j), grid)
        return [product, result.s2_mean, stage_classify(kx, ky, two_j), result.baseline]

    rows = _pool_map(point, products.tolist(), args.workers)
    _write_csv(args.out, "entropy", _config_dict(args),
               ["kxky", "value", "stage", "baseline"], rows)


def cmd_dynamics(args) -> None:
    two_j = validate_two_j(args.two_j)
    kappa_y = parse_kappa(args.ky)
    n_x_list = [int(tok) for tok in args.nx.split(",") if tok]
    if not n_x_list:
        raise ValueError("--nx must list at least one integer")
    _warm_cache(two_j, args.delta)

    def column(n_x: int):
        return dynamical_scan(two_j, kappa_y, args.z0, [n_x], args.n_max,
                              delta=args.delta, variant=args.variant)[0]

    columns = _pool_map(column, n_x_list, args.workers)
    j = two_j / 2.0
    rows = []
    for col in columns:
        for n in range(col.series.n.size):
            rows.append([int(col.series.n[n]), col.kappa_x,
                         col.series.jz_mean[n] / j, col.series.jz_std[n] / j])
    _write_csv(args.out, "dynamics", _config_dict(args),
               ["n", "kx", "jz_mean_over_j", "jz_std_over_j"], rows)


def cmd_symcheck(args) -> None:
    two_j = validate_two_j(args.two_j)
    variant = args.variant
    if variant is None:
        variant = "plain" if args.delta > 0 else "sym1"
    params = KickParams(kappa_x=parse_kappa(args.kx), kappa_y=parse_kappa(args.ky),
                        delta=args.delta, variant=variant)
    report = verify_symmetries(floquet_operator(params, two_j))
    config = _config_dict(args)
    config["variant"] = variant
    _write_json(args.out, "symcheck", config, {"report": report.as_dict()})


def cmd_stages(args) -> None:
    two_j = validate_two_j(args.two_j)
    j = two_j / 2.0
    exact = stage_borders(two_j)
    approx = (math.pi * j / 2.0, math.pi * j, 2.0 * math.pi * j)
    rows = [[i + 1, exact[i], approx[i]] for i in range(3)]
    if args.out is None:
        print(f"stage borders for two_j = {two_j} (j = {j:g})")
        print(f"{'border':>6}  {'kxky exact':>14}  {'large-j approx':>16}")
        for i, e, a in rows:
            print(f"{i:>6}  {e:>14.4f}  {a:>16.4f}")
    else:
        _write_csv(args.out, "stages", _config_dict(args),
                   ["border", "kxky_exact", "kxky_approx"], rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kickedtop",
        description="Quasi-energy spectra, chaos diagnostics, and dynamics "
                    "of the twice-kicked coupled top.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, variant_default="plain"):
        p.add_argument("--two-j", dest="two_j", type=int, required=True,
                       help="twice the top spin (integer >= 1)")
        if variant_default is None:
            p.add_argument("--variant", choices=("plain", "sym1", "sym2"), default=None)
        else:
            p.add_argument("--variant", choices=("plain", "sym1", "sym2"),
                           default=variant_default)
        p.add_argument("--delta", type=float, default=0.0,
                       help="chirality-breaking strength in both kicks")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--tol-bound", dest="tol_bound", type=float,
                       default=DEFAULT_BOUND_TOL,
                       help="bound-state detection tolerance in radians")

    p = sub.add_parser("spectrum", help="quasi-energies along a kick-product range")
    common(p)
    p.add_argument("--kxky", required=True, help="product range lo:hi")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--ratio", type=float, default=1.0, help="kappa_y / kappa_x")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("rgrid", help="spacing-ratio statistics over a (kx, ky) grid")
    common(p)
    p.add_argument("--kx", required=True, help="kappa_x range lo:hi")
    p.add_argument("--ky", required=True, help="kappa_y range lo:hi")
    p.add_argument("--steps", type=int, required=True, help="steps per axis")
    p.set_defaults(func=cmd_rgrid)

    p = sub.add_parser("rcurve", help="spacing-ratio statistics along a product range")
    common(p)
    p.add_argument("--kxky", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--ratio", type=float, default=1.0)
    p.set_defaults(func=cmd_rcurve)

    p = sub.add_parser("entropy", help="sphere-averaged Renyi entropy along a product range")
    common(p, variant_default="sym1")
    p.add_argument("--kxky", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--ratio", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=32, help="sphere quadrature size per axis")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("dynamics", help="stroboscopic Jz series at allowed kick strengths")
    common(p)
    p.add_argument("--ky", required=True, help="kappa_y (accepts pi: prefix)")
    p.add_argument("--z0", type=float, default=0.5, help="initial <Jz>/j")
    p.add_argument("--nx", required=True, help="comma-separated n_x ladder indices")
    p.add_argument("--n-max", dest="n_max", type=int, default=500)
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("symcheck", help="symmetry-relation residuals at one point")
    common(p, variant_default=None)
    p.add_argument("--kx", required=True, help="kappa_x (accepts pi: prefix)")
    p.add_argument("--ky", required=True, help="kappa_y (accepts pi: prefix)")
    p.set_defaults(func=cmd_symcheck)

    p = sub.add_parser("stages", help="kick-product borders between the four stages")
    common(p)
    p.set_defaults(func=cmd_stages)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
