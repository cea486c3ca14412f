import json

import numpy as np
import pytest
from scipy import optimize

from wolffpot import cli, loaders
from wolffpot.structures import IterationHistory

SCALAR = {
    "schema": 1,
    "params": {"n": 1, "p": 2.0, "q": 0.5, "alpha": 0.25},
    "backend": {"mode": "kernel", "kernel": {"points": [[0.0]], "matrix": [[1.0]]}},
    "sigma": {"variant": "atomic", "dimension": 1, "points": [[0.0]], "weights": [0.5]},
    "mu": {"variant": "atomic", "dimension": 1, "points": [[0.0]], "weights": [0.5]},
}

ATOMIC_SIGMA = {
    "schema": 1,
    "params": {"n": 3, "p": 2.0, "q": 0.5, "alpha": 1.0},
    "backend": {"mode": "wolff"},
    "sigma": {"variant": "atomic", "points": [[0.0, 0.0, 0.0]], "weights": [1.0]},
    "mu": {"variant": "smeared", "points": [[1.0, 0.0, 0.0]], "weights": [1.0], "smear_radius": 0.1},
}

INTERVAL = {
    "schema": 1,
    "params": {"n": 1, "p": 2.0, "q": 0.5, "alpha": 0.25},
    "backend": {"mode": "kernel", "kernel": {"variant": "interval_green"}},
    "sigma": {"variant": "grid1d", "interval": [0.0, 1.0], "polynomial": [1.0, 1.0], "cells": 64},
    "mu": {"variant": "grid1d", "interval": [0.0, 1.0], "polynomial": [1.0, 0.0, 1.0], "cells": 64},
    "options": {"kernel_test": {"pairs": 50, "trials": 50, "probes": 50, "triples": 100}},
}

MATRIX = {
    "schema": 1,
    "params": {"n": 1, "p": 2.0, "q": 0.5, "alpha": 0.25},
    "backend": {"mode": "kernel", "kernel": {
        "points": [[0.0], [1.0], [2.0]],
        "matrix": [[1.0, 0.3, 0.2], [0.3, 1.2, 0.4], [0.2, 0.4, 0.9]]}},
    "sigma": {"variant": "atomic", "points": [[0.0], [1.0], [2.0]], "weights": [0.1, 0.2, 0.15]},
    "mu": {"variant": "atomic", "points": [[0.0], [1.0], [2.0]], "weights": [0.5, 0.3, 0.4]},
}


def _write_config(directory, document, name="experiment.json"):
    path = directory / name
    path.write_text(json.dumps(document))
    return str(path)


def _run(command, config, out_dir, *extra):
    return cli.main([command, "--config", config, "--out", str(out_dir), "-q"] + list(extra))


def test_check_scalar(tmp_path):
    config = _write_config(tmp_path, SCALAR)
    assert _run("check", config, tmp_path / "out") == cli.EXIT_OK
    result = json.loads((tmp_path / "out" / "criteria.json").read_text())
    assert result["criteria"]["sigma_norm"] == pytest.approx(0.0625 ** (1 / 3))
    assert result["criteria"]["finite"] is True
    assert result["params"] == SCALAR["params"]


def test_check_atomic_sigma_is_infinite(tmp_path):
    config = _write_config(tmp_path, ATOMIC_SIGMA)
    assert _run("check", config, tmp_path) == cli.EXIT_INFINITE
    result = json.loads((tmp_path / "criteria.json").read_text())
    assert result["criteria"]["sigma_norm"] == "inf"


def test_solve_scalar(tmp_path):
    config = _write_config(tmp_path, SCALAR)
    assert _run("solve", config, tmp_path) == cli.EXIT_OK
    result = json.loads((tmp_path / "solve.json").read_text())
    assert result["solve"]["converged"] is True
    assert result["solve"]["u"][0] == pytest.approx(1.0, abs=1e-9)
    assert result["lower_bound_ratio"] == pytest.approx(4.0, rel=1e-8)
    history = loaders.load_file(tmp_path / "iterations.csv")
    assert isinstance(history, IterationHistory)
    assert history["norm"].iloc[-1] == pytest.approx(0.5 ** (1 / 1.5), rel=1e-9)


def test_solve_infinite_seed(tmp_path):
    document = dict(ATOMIC_SIGMA, sigma=ATOMIC_SIGMA["mu"], mu=ATOMIC_SIGMA["sigma"])
    document["sigma"] = {"variant": "smeared", "points": [[0.0, 0.0, 0.0]], "weights": [1.0], "smear_radius": 0.1}
    config = _write_config(tmp_path, document)
    assert _run("solve", config, tmp_path) == cli.EXIT_INFINITE


def test_solve_not_converged(tmp_path):
    config = _write_config(tmp_path, dict(SCALAR, iteration={"max_iter": 1}))
    assert _run("solve", config, tmp_path) == cli.EXIT_NOT_CONVERGED
    assert (tmp_path / "iterations.csv").is_file()
    assert json.loads((tmp_path / "solve.json").read_text())["solve"]["converged"] is False


def test_solve_with_probes(tmp_path):
    document = dict(SCALAR, options={"solve": {"minimality": True, "uniqueness_seeds": 3}})
    config = _write_config(tmp_path, document)
    assert _run("solve", config, tmp_path) == cli.EXIT_OK
    result = json.loads((tmp_path / "solve.json").read_text())
    assert result["minimality"]["holds"] is True
    assert result["uniqueness"]["holds"] is True


def test_missing_config(tmp_path):
    assert _run("check", str(tmp_path / "nowhere.json"), tmp_path) == cli.EXIT_CONFIG


def test_missing_measure_file(tmp_path):
    config = _write_config(tmp_path, dict(SCALAR, mu={"file": "mu.json"}))
    assert _run("check", config, tmp_path) == cli.EXIT_CONFIG


def test_measure_from_file(tmp_path):
    (tmp_path / "mu.json").write_text(json.dumps(SCALAR["mu"]))
    config = _write_config(tmp_path, dict(SCALAR, mu={"file": "mu.json"}))
    assert _run("check", config, tmp_path) == cli.EXIT_OK


def test_invalid_parameters(tmp_path):
    config = _write_config(tmp_path, dict(SCALAR, params={"n": 1, "p": 2.0, "q": 1.5, "alpha": 0.25}))
    assert _run("check", config, tmp_path) == cli.EXIT_CONFIG
    config = _write_config(tmp_path, dict(SCALAR, schema=2))
    assert _run("check", config, tmp_path) == cli.EXIT_CONFIG


def test_kernel_test_is_reproducible(tmp_path):
    config = _write_config(tmp_path, INTERVAL)
    assert _run("kernel-test", config, tmp_path / "a", "--seed", "5") == cli.EXIT_OK
    assert _run("kernel-test", config, tmp_path / "b", "--seed", "5") == cli.EXIT_OK
    first = (tmp_path / "a" / "kernel.json").read_bytes()
    assert first == (tmp_path / "b" / "kernel.json").read_bytes()
    diagnostics = json.loads(first)["diagnostics"]
    assert diagnostics["quasi_symmetry_a"] == pytest.approx(1.0)
    assert diagnostics["wmp_h_estimate"] <= 1 + 1e-12


def test_check_is_reproducible(tmp_path):
    config = _write_config(tmp_path, INTERVAL)
    assert _run("check", config, tmp_path / "a") == cli.EXIT_OK
    assert _run("check", config, tmp_path / "b") == cli.EXIT_OK
    assert (tmp_path / "a" / "criteria.json").read_bytes() == (tmp_path / "b" / "criteria.json").read_bytes()


def test_verify_interval(tmp_path):
    config = _write_config(tmp_path, INTERVAL)
    assert _run("verify", config, tmp_path / "a") == cli.EXIT_OK
    assert _run("verify", config, tmp_path / "b") == cli.EXIT_OK
    first = (tmp_path / "a" / "verify.json").read_bytes()
    assert first == (tmp_path / "b" / "verify.json").read_bytes()
    result = json.loads(first)
    assert result["verify"]["passed"] is True
    assert result["verify"]["reports"][0]["residual_window"] == [0.125, 0.875]


def test_verify_needs_interval_kernel(tmp_path):
    config = _write_config(tmp_path, SCALAR)
    assert _run("verify", config, tmp_path) == cli.EXIT_CONFIG


def _newton_solution(document):
    g = np.array(document["backend"]["kernel"]["matrix"])
    a = g * np.array(document["sigma"]["weights"])[None, :]
    rhs = g @ np.array(document["mu"]["weights"])
    q = document["params"]["q"]

    def residual(u):
        return u - a @ np.abs(u) ** q - rhs

    solution = optimize.root(residual, 2 * rhs, method="hybr", tol=1e-13)
    assert np.max(np.abs(residual(solution.x))) <= 1e-12
    return solution.x


def test_solve_three_point_matrix(tmp_path):
    config = _write_config(tmp_path, MATRIX)
    assert _run("solve", config, tmp_path) == cli.EXIT_OK
    result = json.loads((tmp_path / "solve.json").read_text())
    assert result["solve"]["converged"] is True
    np.testing.assert_allclose(result["solve"]["u"], _newton_solution(MATRIX), rtol=0, atol=1e-8)


def test_solve_is_reproducible(tmp_path):
    config = _write_config(tmp_path, MATRIX)
    assert _run("solve", config, tmp_path / "a") == cli.EXIT_OK
    assert _run("solve", config, tmp_path / "b") == cli.EXIT_OK
    for name in ("solve.json", "iterations.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_custom_seed_of_the_wrong_length(tmp_path):
    document = dict(SCALAR, iteration={"seed_mode": "custom", "seed_values": [1.0, 2.0]})
    config = _write_config(tmp_path, document)
    assert _run("solve", config, tmp_path) == cli.EXIT_CONFIG


def test_kernel_test_defaults_to_the_riesz_kernel(tmp_path):
    document = dict(ATOMIC_SIGMA, options={"kernel_test": {"pairs": 50, "trials": 20, "probes": 20,
                                                           "triples": 200}})
    config = _write_config(tmp_path, document)
    assert _run("kernel-test", config, tmp_path) == cli.EXIT_OK
    result = json.loads((tmp_path / "kernel.json").read_text())
    assert result["kernel"] == {"alpha": 1.0, "n": 3, "variant": "riesz"}
    assert 1.9 <= result["diagnostics"]["quasimetric_kappa_estimate"] <= 2.0 + 1e-12
    assert result["diagnostics"]["quasi_symmetry_a"] == pytest.approx(1.0)
