"""command line front end

    python -m wolffpot check --config experiment.json --out results/
    python -m wolffpot solve --config experiment.json --out results/ --seed 3
    python -m wolffpot kernel-test --config experiment.json
    python -m wolffpot verify --config experiment.json

Exit codes: 0 success, 1 verification contract not met, 2 a criterion (or a seed potential) is
infinite, 3 the iteration did not converge, 64 the configuration is unusable.
"""
import argparse
import logging
import os
import sys

from . import exceptions, loaders, util
from .config import ExperimentConfig
from .criteria import implication_audit, refinement_trend
from .kernels import RieszKernel, diagnose
from .measures import GridDensity1D
from .solver import lower_bound_ratio, minimality_probe, picard_solve, sandwich_ratios, uniqueness_probe
from .verify import DEFAULT_WINDOW, mesh_study

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INFINITE = 2
EXIT_NOT_CONVERGED = 3
EXIT_CONFIG = 64


def write_json(out_dir, filename, payload):
    path = os.path.join(out_dir, filename)
    with open(path, "w", newline="\n") as fid:
        fid.write(util.dumps(payload))
    logger.info("wrote {:s}".format(path))
    return path


def write_frame(out_dir, filename, frame):
    path = os.path.join(out_dir, filename)
    frame.savetxt(path, overwrite=True)
    logger.info("wrote {:s}".format(path))
    return path


def _header(config):
    return {
        "schema": config.schema,
        "params": config.params.to_dict(),
        "mode": config.mode,
        "seed": config.seed,
    }


def cmd_check(config, out_dir):
    """evaluate the three criteria, exit 2 if any of them is infinite"""
    report = implication_audit(config.sigma, config.mu, config.params, config.mode, config.kernel)
    payload = _header(config)
    payload["criteria"] = report.to_dict()
    factors = config.option("check", "refinement", None)
    if factors and isinstance(config.sigma, GridDensity1D) and isinstance(config.mu, GridDensity1D):
        trend = refinement_trend(config.sigma, config.mu, config.params, config.mode, config.kernel, factors)
        payload["refinement"] = trend.to_dict(orient="list")
    write_json(out_dir, "criteria.json", payload)
    print(report.table())
    return EXIT_OK if report.finite else EXIT_INFINITE


def cmd_solve(config, out_dir):
    """run the iteration, write solve.json and iterations.csv, exit 3 on non-convergence"""
    payload = _header(config)
    try:
        report = picard_solve(config.sigma, config.mu, config.params, config.mode, config.iteration, config.kernel)
    except exceptions.InfiniteSeed as err:
        logger.error(str(err))
        payload["error"] = str(err)
        write_json(out_dir, "solve.json", payload)
        return EXIT_INFINITE
    except exceptions.NotConverged as err:
        logger.error(str(err))
        payload["solve"] = err.report.to_dict()
        write_frame(out_dir, "iterations.csv", err.report.history())
        write_json(out_dir, "solve.json", payload)
        return EXIT_NOT_CONVERGED

    payload["solve"] = report.to_dict()
    payload["lower_bound_ratio"] = lower_bound_ratio(report, config.sigma, config.params)
    payload["sandwich_ratios"] = sandwich_ratios(report, config.sigma, config.params)
    if config.probes is not None:
        payload["probes"] = {"points": config.probes, "u": report.evaluate(config.probes)}
    if config.option("solve", "minimality", False):
        payload["minimality"] = minimality_probe(config.sigma, config.mu, config.params, report.backend,
                                                 cfg=config.iteration).to_dict()
    n_seeds = config.option("solve", "uniqueness_seeds", 0)
    if n_seeds:
        payload["uniqueness"] = uniqueness_probe(config.sigma, config.mu, config.params, report.backend,
                                                 n_seeds=n_seeds, seed=config.seed, cfg=config.iteration).to_dict()
    write_frame(out_dir, "iterations.csv", report.history())
    write_json(out_dir, "solve.json", payload)
    print("converged in {:d} iterations, ||u||_L^{:g} = {:.12g}, residual {:.3e}".format(
        report.iterations, 1 + config.params.q, report.norm, report.residual))
    return EXIT_OK


def cmd_kernel_test(config, out_dir):
    """sampled kernel axioms; without a configured kernel the Riesz kernel of order alpha is tested"""
    kernel = config.kernel
    if kernel is None:
        kernel = RieszKernel(config.params.n, config.params.alpha)
    counts = {key: config.option("kernel_test", key, default)
              for key, default in (("pairs", 200), ("trials", 200), ("probes", 200), ("triples", 500))}
    diagnostics = diagnose(kernel, seed=config.seed, **counts)
    payload = _header(config)
    payload["kernel"] = kernel.to_dict() if kernel.variant != "finite_matrix" else {"variant": kernel.variant,
                                                                                    "size": kernel.size}
    payload["diagnostics"] = diagnostics.to_dict()
    write_json(out_dir, "kernel.json", payload)
    print("a = {:}, h = {:}, kappa = {:}".format(
        diagnostics.quasi_symmetry_a, diagnostics.wmp_h_estimate, diagnostics.quasimetric_kappa_estimate))
    return EXIT_OK


def cmd_verify(config, out_dir):
    """mesh study of the interval problem, exit 1 unless every contract holds"""
    if config.mode != "kernel" or config.kernel is None or config.kernel.variant != "interval_green":
        raise exceptions.ConfigException("verify needs backend mode 'kernel' with the interval_green kernel")
    result = mesh_study(
        config.sigma, config.mu, config.params,
        cells=tuple(config.option("verify", "cells", (64, 128, 256))),
        energy_cells=config.option("verify", "energy_cells", 512),
        energy_tol=config.option("verify", "energy_tol", 1e-4),
        cfg=config.iteration,
        window=tuple(config.option("verify", "window", DEFAULT_WINDOW)),
    )
    payload = _header(config)
    payload["verify"] = result.to_dict()
    write_json(out_dir, "verify.json", payload)
    print(result.table().to_string(index=False))
    return EXIT_OK if result.passed else EXIT_VERIFY_FAILED


COMMANDS = {
    "check": cmd_check,
    "solve": cmd_solve,
    "kernel-test": cmd_kernel_test,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="wolffpot", description="Wolff potentials and sublinear equations")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func in COMMANDS.items():
        cmd = sub.add_parser(name, help=func.__doc__.splitlines()[0])
        cmd.add_argument("--config", required=True, help="experiment configuration (json)")
        cmd.add_argument("--out", default=".", help="output directory (default: current directory)")
        cmd.add_argument("--seed", type=int, default=None, help="random seed, overrides the configuration")
        cmd.add_argument("-v", "--verbose", action="store_true", help="debug logging")
        cmd.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
                        stream=sys.stderr)

    try:
        config = loaders.load_file(args.config, cls=ExperimentConfig)
        if args.seed is not None:
            config = config.with_seed(args.seed)
        os.makedirs(args.out, exist_ok=True)
        return COMMANDS[args.command](config, args.out)
    except exceptions.WolffpotException as err:
        logger.error("configuration error: {:}".format(err))
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
