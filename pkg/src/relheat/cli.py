"""Command line: polynomial tables, verification suites, evolution data and expansions.

Exit status is 0 on success, 1 on a numerical failure or a failed check and 2
on a usage error.  Options may also be read from a JSON file given with
``--config``; flags on the command line take precedence.
"""

from __future__ import annotations

import json
import logging
import sys
from argparse import ArgumentParser
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import dirac, evolution, expansion, verification
from .grid import Grid, GridFunction
from .polynomials import (
    bessel_carlitz,
    drift_monomial,
    gen_bessel_ab,
    gen_bessel_lk,
    hkdf,
    rhp,
    rnp,
    rodrigues_lk,
)
from .quadrature import QuadratureError, QuadratureSpec
from .stable import SeriesConvergenceError, StableIndex

log = logging.getLogger("relheat")

UNIVARIATE = {
    "bessel": lambda a: bessel_carlitz(a.n),
    "gen_ab": lambda a: gen_bessel_ab(a.n, a.alpha, a.beta),
    "gen_lk": lambda a: gen_bessel_lk(a.n, StableIndex.parse(a.index)),
    "rodrigues": lambda a: rodrigues_lk(a.n, StableIndex.parse(a.index)),
}
BIVARIATE = {"rnp": rnp, "rhp": rhp, "drift": drift_monomial, "hkdf": hkdf}

# figure number -> (equation, default grid)
FIGURES = {
    1: ("sqrt_drift", (-70.0, 20.0, 1801)),
    2: ("rel_heat", (-40.0, 40.0, 1601)),
    3: ("telegrapher", (-40.0, 40.0, 1601)),
}
FIGURE_TIMES = (0, 1, 2)


class UsageError(Exception):
    pass


def _fmt(v: float) -> str:
    return "%.17g" % v


def write_csv(path, columns: dict[str, np.ndarray]):
    names = list(columns)
    rows = zip(*columns.values())
    text = ",".join(names) + "\n" + "".join(",".join(_fmt(v) for v in row) + "\n" for row in rows)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def write_json(path, payload):
    text = json.dumps(payload, separators=(",", ":")) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _grid(args) -> Grid:
    return Grid(args.x_min, args.x_max, args.points)


def _quad(args) -> QuadratureSpec:
    return QuadratureSpec(rel_tol=args.rel_tol, abs_tol=args.abs_tol)


# -- subcommands ------------------------------------------------------------

def cmd_poly(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    if args.family in ("gen_lk", "rodrigues") and not args.index:
        raise UsageError(f"--family {args.family} needs --index l/k")
    if args.family in UNIVARIATE:
        poly = UNIVARIATE[args.family](args)
        write_json(args.out, {"n": args.n, "coefficients": poly.to_strings()})
    else:
        poly = BIVARIATE[args.family](args.n)
        write_json(args.out, {"n": args.n, "vars": list(poly.vars), "terms": poly.to_records()})
    return 0


def cmd_verify(args) -> int:
    names = sorted(verification.SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in names:
        for check in verification.run_suite(name, args.nmax):
            print(f"[{name}] {check.line()}")
            failed += not check.passed
    print(f"{failed} failure(s)")
    return 1 if failed else 0


def _spec(args) -> evolution.SymbolSpec:
    if args.equation == "gen_ab":
        return evolution.SymbolSpec.gen_ab(args.alpha, args.beta)
    if args.equation == "gen_lk":
        if not args.index:
            raise UsageError("--equation gen_lk needs --index l/k")
        return evolution.SymbolSpec.gen_lk(StableIndex.parse(args.index), args.mu)
    return evolution.SymbolSpec(args.equation)


def _initial(args) -> evolution.InitialCondition:
    if args.ic == "gaussian":
        return evolution.InitialCondition.gaussian()
    return evolution.InitialCondition.monomial(args.degree)


def solve(equation: str, t: float, grid: Grid, quad: QuadratureSpec, args=None,
          route: str = "closed") -> GridFunction:
    """One solver call, chosen by equation and route."""
    if equation == "telegrapher":
        return evolution.telegrapher_solve(evolution.InitialCondition.gaussian(), None, t, grid, quad)
    ic = _initial(args) if args is not None else evolution.InitialCondition.gaussian()
    spec = _spec(args) if args is not None else evolution.SymbolSpec(equation)
    if route == "spectral":
        return evolution.evolve_spectral(ic, t, spec, grid, quad)
    if route == "closed" and ic.kind == "gaussian":
        if equation == "sqrt_drift":
            return evolution.evolve_gaussian_drift(t, grid, quad)
        if equation == "rel_heat":
            return evolution.evolve_relheat_gaussian(t, grid, quad)
        if equation == "gen_ab":
            return evolution.evolve_gen_ab_gaussian(spec.alpha, spec.beta, t, grid, quad)
    return evolution.evolve_levy_convolution(ic, t, spec, grid, quad)


def cmd_evolve(args) -> int:
    if args.t < 0:
        raise UsageError("--t must be non-negative")
    if args.equation == "telegrapher" and args.ic != "gaussian":
        raise UsageError("the telegrapher solver takes a Gaussian initial condition")
    if args.ic == "monomial" and args.route == "spectral":
        raise UsageError("a monomial has no Fourier transform; use --route convolution")
    grid = _grid(args)
    f = solve(args.equation, args.t, grid, _quad(args), args, args.route)
    write_csv(args.out, {"x": grid.x, "F": f.samples})
    return 0


def figure_curves(which: int, grid: Grid | None = None, quad: QuadratureSpec | None = None):
    """``{t: samples}`` for one figure; the telegrapher curves are divided by ``F(0, t)``."""
    equation, default = FIGURES[which]
    grid = grid or Grid(*default)
    quad = quad or QuadratureSpec()
    out = {}
    for t in FIGURE_TIMES:
        f = solve(equation, float(t), grid, quad).samples
        if equation == "telegrapher":
            f = f / solve(equation, float(t), Grid(0.0, 1.0, 2), quad).samples[0]
        out[t] = f
    return grid, out


def cmd_figures(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    grid = _grid(args) if args.x_min is not None else None
    grid, curves = figure_curves(args.which, grid, _quad(args))
    for t, samples in curves.items():
        path = out_dir / f"fig{args.which}_t{t}.csv"
        write_csv(path, {"x": grid.x, "F": samples})
        log.info("wrote %s", path)
    return 0


def _expansion_input(spec: str, y: float):
    # "rh:m" selects RH_m(x, -|y|); otherwise comma-separated coefficients c0,c1,...
    if spec.startswith("rh:"):
        return rhp(int(spec[3:])).at(t=-abs(Fraction(str(y))))
    try:
        return [Fraction(c) for c in spec.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot read --f {spec!r}") from exc


def cmd_expand(args) -> int:
    if args.y == 0:
        raise UsageError("--y must be nonzero")
    res = expansion.rhp_coefficients(_expansion_input(args.f, args.y), args.y, args.nmax, _quad(args))
    write_json(args.out, res.to_json())
    return 0


def cmd_dirac(args) -> int:
    if args.check:
        report = {**dirac.pauli_identities(), **dirac.squared_identities()}
        for name, ok in report.items():
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
        return 0 if all(report.values()) else 1
    grid = _grid(args)
    res = dirac.two_component_evolve(evolution.InitialCondition.gaussian(), args.t, grid,
                                     _quad(args), which=args.generator)
    write_csv(args.out, {"x": grid.x, "phi1": res.phi1.samples, "phi2": res.phi2.samples})
    return 0


# -- parser -----------------------------------------------------------------

def _add_grid(p, x_min=-10.0, x_max=10.0, points=401):
    p.add_argument("--x-min", type=float, default=x_min)
    p.add_argument("--x-max", type=float, default=x_max)
    p.add_argument("--points", type=int, default=points)


def _add_common(p):
    p.add_argument("--rel-tol", type=float, default=1e-10)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--out", default="-", help="output file ('-' for standard output)")


def build_parser():
    parser = ArgumentParser(prog="relheat", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with option defaults")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="exact coefficients of a polynomial family")
    p.add_argument("--family", required=True, choices=sorted([*UNIVARIATE, *BIVARIATE]))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="1")
    p.add_argument("--index", help="stable index l/k")
    _add_common(p)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("verify", help="run a named invariant suite")
    p.add_argument("--suite", required=True, choices=["all", *sorted(verification.SUITES)])
    p.add_argument("--nmax", type=int, default=30)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("evolve", help="solve an evolution equation on a grid")
    p.add_argument("--equation", required=True,
                   choices=["sqrt_drift", "rel_heat", "gen_ab", "gen_lk", "telegrapher"])
    p.add_argument("--route", default="closed", choices=["closed", "convolution", "spectral"])
    p.add_argument("--ic", default="gaussian", choices=["gaussian", "monomial"])
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--index", help="stable index l/k")
    p.add_argument("--mu", type=int, default=2)
    _add_grid(p)
    _add_common(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("figures", help="reference curve sets 1-3 as CSV at t = 0, 1, 2")
    p.add_argument("--which", type=int, required=True, choices=sorted(FIGURES))
    _add_grid(p, None, None, None)
    _add_common(p)
    p.set_defaults(func=cmd_figures, out=".")

    p = sub.add_parser("expand", help="coefficients in relativistic heat polynomials")
    p.add_argument("--f", required=True, help="'c0,c1,...' coefficients or 'rh:m'")
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--nmax", type=int, default=6)
    _add_common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("dirac", help="two-component evolution or symbolic checks")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--generator", default="dirac", choices=list(dirac.GENERATORS))
    p.add_argument("--check", action="store_true", help="only run the exact matrix identities")
    _add_grid(p)
    _add_common(p)
    p.set_defaults(func=cmd_dirac)
    return parser, sub


def _load_config(argv):
    pre = ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return {}
    try:
        config = json.loads(Path(known.config).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {known.config}: {exc}") from exc
    if not isinstance(config, dict):
        raise UsageError("config file must hold a JSON object")
    return {key.replace("-", "_"): value for key, value in config.items()}


def parse_args(argv=None):
    parser, sub = build_parser()
    try:
        config = _load_config(argv)
    except UsageError as exc:
        parser.error(str(exc))
    # config values become defaults, so explicit flags still win
    for subparser in sub.choices.values():
        for action in subparser._actions:
            if action.dest in config:
                action.default = config[action.dest]
                action.required = False
    args = parser.parse_args(argv)
    if getattr(args, "x_min", None) is not None:
        if args.x_max is None or args.points is None or args.x_max <= args.x_min or args.points < 2:
            parser.error("grid needs x_min < x_max and at least 2 points")
    return parser, args


def main(argv=None) -> int:
    parser, args = parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (QuadratureError, SeriesConvergenceError, ArithmeticError, ValueError) as exc:
        print(f"relheat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
