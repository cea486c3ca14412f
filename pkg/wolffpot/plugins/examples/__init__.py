"""convenience package to generate ready-made problems for testing and the documentation"""
from dataclasses import dataclass

import numpy as np

from wolffpot.kernels import FiniteMatrix, IntervalGreen
from wolffpot.measures import AtomicMeasure, GridDensity1D, Params, SmearedAtomicMeasure


@dataclass(frozen=True, eq=False)
class Problem:
    """sigma, mu, the parameters and (for kernel problems) the kernel of one equation"""

    sigma: object
    mu: object
    prm: Params
    kernel: object = None

    @property
    def mode(self):
        return "wolff" if self.kernel is None else "kernel"


def example_scalar_problem():
    """
    G = [[1]], sigma = mu = delta_0 / 2, q = 1/2; the equation u = u^(1/2)/2 + 1/2 has the solution u = 1

    Returns
    -------
    Problem

    """
    kernel = FiniteMatrix([[1.0]], [[0.0]])
    sigma = AtomicMeasure([[0.0]], [0.5])
    mu = AtomicMeasure([[0.0]], [0.5])
    return Problem(sigma, mu, Params(n=1, p=2.0, q=0.5, alpha=0.25), kernel)


def example_matrix_problem(size=5, seed=0, q=0.5):
    """a random symmetric positive FiniteMatrix with random sigma and mu weights on all points"""
    rng = np.random.default_rng(seed)
    kernel = FiniteMatrix.random(size, rng)
    sigma = AtomicMeasure(kernel.points, rng.uniform(0.05, 1.0, size))
    mu = AtomicMeasure(kernel.points, rng.uniform(0.05, 1.0, size))
    return Problem(sigma, mu, Params(n=kernel.dimension, p=2.0, q=q, alpha=0.25), kernel)


def example_interval_problem(cells=64, q=0.5):
    """smooth densities sigma = 1 + x, mu = 1 + x^2 on [0, 1] with the interval Green function"""
    sigma = GridDensity1D.from_polynomial([1.0, 1.0], (0.0, 1.0), cells)
    mu = GridDensity1D.from_polynomial([1.0, 0.0, 1.0], (0.0, 1.0), cells)
    return Problem(sigma, mu, Params(n=1, p=2.0, q=q, alpha=0.25), IntervalGreen())


def example_manufactured_problem(cells=64, q=0.5, sigma_density=1e-14):
    """mu = 2, sigma negligible: the solution is x (1 - x) up to the sigma contribution"""
    sigma = GridDensity1D.from_polynomial([sigma_density], (0.0, 1.0), cells)
    mu = GridDensity1D.from_polynomial([2.0], (0.0, 1.0), cells)
    return Problem(sigma, mu, Params(n=1, p=2.0, q=q, alpha=0.25), IntervalGreen())


def example_smeared_pair(rho=0.1, n=3):
    """unit atoms at -e_1 and +e_1 smeared over balls of radius rho, with alpha = 1, p = 2"""
    points = np.zeros((2, n))
    points[0, 0], points[1, 0] = -1.0, 1.0
    pair = SmearedAtomicMeasure(points, [1.0, 1.0], rho)
    return Problem(pair, pair, Params(n=n, p=2.0, q=0.5, alpha=1.0))
