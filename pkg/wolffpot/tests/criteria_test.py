import math

import numpy as np
import pytest

from wolffpot import exceptions
from wolffpot.criteria import (
    check_cross, check_mu_energy, check_sigma, implication_audit, refinement_trend, sigma_scaling_exponent,
)
from wolffpot.kernels import FiniteMatrix, IntervalGreen
from wolffpot.measures import AtomicMeasure, GridDensity1D, Params, SmearedAtomicMeasure
from wolffpot.plugins import examples
from wolffpot.structures import RefinementTrend


def test_scalar_example():
    problem = examples.example_scalar_problem()
    args = (problem.prm, "kernel", problem.kernel)
    assert check_sigma(problem.sigma, *args) == pytest.approx(0.0625 ** (1 / 3), rel=1e-12)
    assert check_mu_energy(problem.mu, *args) == pytest.approx(0.25)
    assert check_cross(problem.sigma, problem.mu, *args) == pytest.approx((0.5 ** 1.5 * 0.5) ** (1 / 1.5))


def test_matrix_energy():
    k = FiniteMatrix([[1.0, 0.5], [0.5, 1.0]])
    mu = AtomicMeasure([[0.0], [1.0]], [1.0, 1.0])
    assert check_mu_energy(mu, Params(n=1, p=2.0, q=0.5, alpha=0.25), "kernel", k) == pytest.approx(3.0)


def test_atoms_in_wolff_mode():
    prm = Params(n=3, p=2.0, q=0.5, alpha=1.0)
    atom = AtomicMeasure([[0.0, 0.0, 0.0]], [1.0])
    assert check_sigma(atom, prm) == math.inf
    assert check_mu_energy(atom, prm) == math.inf
    smeared = SmearedAtomicMeasure([[0.0, 0.0, 0.0]], [1.0], 0.1)
    assert check_cross(smeared, atom, prm) == math.inf
    report = implication_audit(smeared, atom, prm)
    assert not report.finite
    assert not report.violation


def test_mu_energy_is_quadratic_for_p_2():
    problem = examples.example_smeared_pair()
    base = check_mu_energy(problem.mu, problem.prm)
    assert base == pytest.approx(31.0, rel=1e-9)
    assert check_mu_energy(problem.mu.scaled(2.0), problem.prm) == pytest.approx(4 * base, rel=1e-9)


@pytest.mark.parametrize("p,q", [(2.0, 0.5), (3.0, 1.2), (2.5, 0.3)])
def test_sigma_scaling_law(p, q):
    prm = Params(n=3, p=p, q=q, alpha=0.5)
    sigma = SmearedAtomicMeasure([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]], [1.0, 0.5], 0.2)
    base = check_sigma(sigma, prm)
    exponent = sigma_scaling_exponent(prm)
    for c in (0.25, 3.0):
        assert check_sigma(sigma.scaled(c), prm) == pytest.approx(c ** exponent * base, rel=1e-8)


def test_sigma_scaling_law_linear_backend():
    problem = examples.example_interval_problem(cells=16)
    base = check_sigma(problem.sigma, problem.prm, "kernel", problem.kernel)
    exponent = sigma_scaling_exponent(problem.prm, "kernel")
    assert exponent == pytest.approx(1 + 1 / 3)
    scaled = check_sigma(problem.sigma.scaled(2.0), problem.prm, "kernel", problem.kernel)
    assert scaled == pytest.approx(2 ** exponent * base, rel=1e-12)


def _random_smeared(rng, n, atoms):
    return SmearedAtomicMeasure(rng.uniform(-1, 1, (atoms, n)), rng.uniform(0.1, 1.0, atoms),
                                rng.uniform(0.05, 0.3))


def test_implication_never_violated():
    rng = np.random.default_rng(0)
    audited = 0
    for _ in range(200):
        size = int(rng.integers(2, 8))
        k = FiniteMatrix.random(size, rng)
        sigma = AtomicMeasure(k.points, rng.uniform(0.0, 1.0, size) + 0.01)
        mu = AtomicMeasure(k.points, rng.uniform(0.0, 1.0, size) + 0.01)
        assert not implication_audit(sigma, mu, Params(n=1, p=2.0, q=0.5, alpha=0.25), "kernel", k).violation
        audited += 1
    for _ in range(150):
        prm = Params(n=3, p=rng.uniform(1.8, 2.8), q=0.4, alpha=rng.uniform(0.3, 1.0))
        sigma = _random_smeared(rng, 3, 2)
        mu = _random_smeared(rng, 3, 2) if rng.random() < 0.7 else AtomicMeasure(rng.uniform(-1, 1, (2, 3)), [1.0, 1.0])
        assert not implication_audit(sigma, mu, prm, "wolff").violation
        audited += 1
    for _ in range(150):
        prm = Params(n=3, p=2.0, q=rng.uniform(0.1, 0.9), alpha=rng.uniform(0.2, 1.2))
        sigma = _random_smeared(rng, 3, 2)
        mu = AtomicMeasure(rng.uniform(-1, 1, (2, 3)), [0.5, 1.0]) if rng.random() < 0.3 else _random_smeared(rng, 3, 2)
        assert not implication_audit(sigma, mu, prm, "riesz").violation
        audited += 1
    assert audited >= 500


def test_interval_problem_is_finite():
    problem = examples.example_interval_problem(cells=32)
    report = implication_audit(problem.sigma, problem.mu, problem.prm, "kernel", problem.kernel)
    assert report.finite
    assert report.sigma_exponent == pytest.approx(3.0)
    assert report.cross_exponent == pytest.approx(1.5)
    assert "mode: kernel" in report.table()


def test_refinement_trend():
    problem = examples.example_interval_problem(cells=16)
    trend = refinement_trend(problem.sigma, problem.mu, problem.prm, "kernel", problem.kernel)
    assert isinstance(trend, RefinementTrend)
    assert list(trend["cells"]) == [16, 32, 64]
    # smooth data: the grid values settle
    norms = trend["sigma_norm"].to_numpy()
    assert abs(norms[2] - norms[1]) < abs(norms[1] - norms[0])


def test_refinement_trend_needs_grids():
    problem = examples.example_scalar_problem()
    with pytest.raises(exceptions.MeasureException):
        refinement_trend(problem.sigma, problem.mu, problem.prm, "kernel", problem.kernel)


def test_linear_backend_requires_q_below_one():
    k = IntervalGreen()
    sigma = GridDensity1D((0.0, 1.0), [1.0, 1.0])
    with pytest.raises(exceptions.ParameterException):
        check_sigma(sigma, Params(n=1, p=3.0, q=1.5, alpha=0.25), "kernel", k)
