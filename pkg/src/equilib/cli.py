"""Command-line front end.

Subcommands: catalog, transform, maxent, simulate, decompose.  All output
is deterministic (randomness only enters through explicit seeds) and
machine readable; see io.py for the file formats.

Exit codes: 0 success, 2 input/precondition error, 3 infeasible problem.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .catalog import (AnalyticPotential, Exponential, Gamma, LinearConstant,
                      Normal, Poisson, UniformLattice)
from .diagnostics import decompose_samples, fit_linear_intensity
from .errors import (EquilibError, MomentRangeError, NonNormalizableError)
from .grid import CONTINUOUS, Grid, build_grid
from .maxent import MaxEntProblem, sample_u_moment, solve_maxent
from .potential import (EquilibriumDensity, causal_intensity, normalize,
                        normalized_potential, potential_of_density,
                        stochastic_intensity)
from .simulate import SimConfig, simulate

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3


def _add_grid_args(parser, required=False):
    parser.add_argument("--lower", type=float, required=required)
    parser.add_argument("--upper", type=float, required=required)
    parser.add_argument("--points", type=int, required=required)
    parser.add_argument("--grid-kind", choices=["continuous", "lattice"],
                        default="continuous")


def _grid_from_args(args) -> Grid | None:
    if args.lower is None and args.upper is None and args.points is None:
        return None
    if args.lower is None or args.upper is None or args.points is None:
        raise io.FormatError("--lower, --upper and --points go together")
    return build_grid(args.grid_kind, args.lower, args.upper, args.points)


# ---------------------------------------------------------------------------
# catalog


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise io.FormatError(
            f"family {args.family!r} needs "
            + ", ".join(f"--{n}" for n in missing))


def _family_from_args(args):
    name = args.family
    if name == "uniform":
        _require(args, "n")
        return UniformLattice(n=args.n)
    if name == "exponential":
        _require(args, "a")
        return Exponential(a=args.a)
    if name == "normal":
        return Normal(mu=args.mu, sigma=args.sigma)
    if name == "linear-constant":
        _require(args, "a", "b")
        return LinearConstant(a=args.a, b=args.b)
    if name == "poisson":
        _require(args, "lam")
        return Poisson(lam=args.lam)
    if name == "gamma":
        _require(args, "alpha", "beta")
        return Gamma(alpha=args.alpha, beta=args.beta)
    raise io.FormatError(f"unknown family {name!r}")


def cmd_catalog(args) -> int:
    family = _family_from_args(args)
    grid = _grid_from_args(args)
    if grid is None:
        grid = family.default_grid()
    x = grid.points
    io.write_table(args.out, {
        "x": x,
        "f": family.density(x),
        "U_tilde": family.normalized_potential(x),
        "E_c": family.intensity(x),
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# transform


def _load_transform_input(args):
    """Return ('potential', spec, grid) or ('density', density)."""
    path = args.infile
    if path.endswith(".json"):
        obj = io.load_spec(path)
        if obj.get("kind") != "potential":
            raise io.FormatError(f"{path}: expected a potential spec")
        spec = io.parse_potential(obj)
        grid = _grid_from_args(args)
        if grid is None:
            grid = getattr(spec, "grid", None)
        if grid is None:
            family = getattr(spec, "family", None)
            if family is None:
                raise io.FormatError("this potential needs explicit grid args")
            grid = family.default_grid()
        return "potential", spec, grid
    table = io.read_table(path)
    if "x" not in table:
        raise io.FormatError(f"{path}: table needs an x column")
    grid = io.grid_from_x(table["x"], kind=None if args.lower is None
                          else args.grid_kind)
    if "f" in table:
        values = np.asarray(table["f"])
        total = grid.quadrature(values)
        if not total > 0:
            raise io.FormatError(f"{path}: density is identically zero")
        density = EquilibriumDensity(grid=grid, values=values / total,
                                     omega=1.0, k=1.0)
        return "density", density, grid
    if "U" in table:
        from .potential import TabulatedPotential
        spec = TabulatedPotential(grid=grid, values=table["U"])
        return "potential", spec, grid
    raise io.FormatError(f"{path}: need either an f or a U column")


def cmd_transform(args) -> int:
    role, obj, grid = _load_transform_input(args)
    x = grid.points
    if args.to == "density":
        if role == "density":
            density = obj
        else:
            density = normalize(obj, grid)
        io.write_table(args.out, {"x": x, "f": density.values})
        return EXIT_OK
    if args.to == "potential":
        if role == "density":
            upot = potential_of_density(obj)
            if upot.mask.all():
                raise io.FormatError("all points masked (density is zero)")
        else:
            upot = normalized_potential(obj, grid)
        io.write_table(args.out, {"x": x, "U_tilde": upot.values,
                                  "mask": upot.mask})
        return EXIT_OK
    # intensity: stochastic from a density, causal from a potential
    if role == "density":
        table = stochastic_intensity(obj)
        if table.mask.all():
            raise io.FormatError("all points masked (density is zero)")
        io.write_table(args.out, {"x": x, "E_s": table.values,
                                  "mask": table.mask})
    else:
        table = causal_intensity(obj, grid)
        io.write_table(args.out, {"x": x, "E_c": table.values,
                                  "mask": table.mask})
    return EXIT_OK


# ---------------------------------------------------------------------------
# maxent


def _potential_from_arg(text: str):
    if text.endswith(".json"):
        return io.parse_potential(io.load_spec(text))
    if text.endswith(".csv"):
        return io.parse_potential({"family": "tabulated", "csv": text})
    return io.parse_polynomial(text)


def _read_samples(path) -> np.ndarray:
    table = io.read_table(path)
    if "x" not in table:
        raise io.FormatError(f"{path}: samples file needs an x column")
    return np.asarray(table["x"])


def cmd_maxent(args) -> int:
    u = _potential_from_arg(args.u)
    grid = _grid_from_args(args)
    if grid is None:
        raise io.FormatError("maxent needs explicit grid args")
    if args.samples is not None:
        samples = np.sort(_read_samples(args.samples))
        target = sample_u_moment(samples, u)
    else:
        target = args.moment
    problem = MaxEntProblem(u=u, grid=grid, target_moment=target,
                            lambda_init=args.lambda_init, tol=args.tol,
                            max_iter=args.max_iter)
    solution = solve_maxent(problem)
    io.dump_json(args.out, {
        "kind": "maxent_solution",
        "lambda": solution.lam,
        "k": solution.k,
        "residual": solution.residual,
        "iterations": solution.iterations,
        "converged": solution.converged,
        "target_moment": target,
    })
    if args.table is not None:
        io.write_table(args.table, {
            "x": grid.points,
            "f": solution.density.values,
            "U_tilde": solution.normalized_potential.values,
        })
    print(f"lambda = {solution.lam:.17g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args) -> int:
    obj = io.load_spec(args.config)
    if obj.get("kind") != "sim_config":
        raise io.FormatError(f"{args.config}: expected a sim_config spec")
    io._check_fields(obj, {"kind", "potential", "grid", "dt", "n_steps",
                           "burn_in", "n_chains", "seed"}, "sim_config")
    try:
        config = SimConfig(
            potential=io.parse_potential(obj["potential"]),
            grid=io.parse_grid(obj["grid"]),
            dt=obj["dt"],
            n_steps=int(obj["n_steps"]),
            burn_in=int(obj["burn_in"]),
            n_chains=int(obj["n_chains"]),
            seed=int(obj["seed"]),
        )
    except KeyError as exc:
        raise io.FormatError(f"sim_config: missing field {exc}") from None
    result = simulate(config)
    io.dump_json(args.out, {
        "kind": "sim_result",
        "tv_distance": result.tv_distance,
        "n_samples_used": result.n_samples_used,
        "seed": result.seed,
        "rng_algorithm": result.rng_algorithm,
    })
    if args.hist is not None:
        io.write_table(args.hist, {"x": config.grid.points,
                                   "f": result.histogram.values})
    print(f"tv_distance = {result.tv_distance:.17g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# decompose


def cmd_decompose(args) -> int:
    samples = _read_samples(args.samples)
    grid = _grid_from_args(args)
    if grid is None:
        raise io.FormatError("decompose needs explicit grid args")
    report = decompose_samples(samples, grid, estimator=args.estimator,
                               bins=args.bins, bandwidth=args.bandwidth)
    slope, intercept = fit_linear_intensity(report)
    io.write_table(args.out, {
        "x": grid.points,
        "f": report.density_estimate.values,
        "U_tilde": report.normalized_potential.values,
        "E_s": report.stochastic_intensity.values,
        "mask": report.mask,
    })
    if args.report is not None:
        io.dump_json(args.report, {
            "kind": "decomposition_report",
            "estimator": report.estimator,
            "n_out_of_range": report.n_out_of_range,
            "trim_interval": list(report.trim_interval),
            "intensity_slope": slope,
            "intensity_intercept": intercept,
        })
    print(f"intensity_slope = {slope:.17g}")
    print(f"intensity_intercept = {intercept:.17g}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equilib",
        description="Potentials, equilibrium densities and intensities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="tabulate a closed-form family")
    p.add_argument("--family", required=True,
                   choices=["uniform", "exponential", "normal",
                            "linear-constant", "poisson", "gamma"])
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--lam", "--lambda", dest="lam", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    _add_grid_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("transform",
                       help="map between potential, density and intensity")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--to", required=True,
                   choices=["density", "potential", "intensity"])
    _add_grid_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("maxent", help="solve the u-moment MaxEnt problem")
    p.add_argument("--u", required=True,
                   help="polynomial expression, .json spec or .csv table")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--moment", type=float)
    group.add_argument("--samples")
    p.add_argument("--lambda-init", type=float, default=0.0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=100)
    _add_grid_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--table")
    p.set_defaults(func=cmd_maxent)

    p = sub.add_parser("simulate",
                       help="verify Boltzmann equilibrium by dynamics")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--hist")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("decompose",
                       help="split samples into stochastic/causal parts")
    p.add_argument("--samples", required=True)
    p.add_argument("--estimator", choices=["kernel", "histogram"],
                   default="kernel")
    p.add_argument("--bins", type=int)
    p.add_argument("--bandwidth", type=float)
    _add_grid_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_decompose)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MomentRangeError, NonNormalizableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (EquilibError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
