import numpy as np
import pytest

from wolffpot import exceptions
from wolffpot.kernels import FiniteMatrix, IntervalGreen
from wolffpot.measures import GridDensity1D
from wolffpot.plugins import examples
from wolffpot.solver import picard_solve
from wolffpot.structures import MeshStudy
from wolffpot.verify import (
    energy_identity_gap, energy_parts, mesh_study, ode_residual, solve_and_verify, step_passes,
    verify_interval_solution,
)


def _manufactured_grid(cells=64):
    problem = examples.example_manufactured_problem(cells=cells)
    grid = problem.sigma.vertices
    return problem, grid, grid * (1 - grid)


def test_energy_identity_of_the_exact_solution():
    problem, grid, u = _manufactured_grid()
    lhs, rhs = energy_parts(u, problem.sigma, problem.mu, grid, problem.prm.q)
    assert lhs == pytest.approx(1 / 3, abs=1e-12)
    assert rhs == pytest.approx(1 / 3, abs=1e-12)
    assert energy_identity_gap(u, problem.sigma, problem.mu, grid, problem.prm.q) <= 1e-12


def test_energy_identity_detects_a_wrong_solution():
    problem, grid, u = _manufactured_grid()
    gap = energy_identity_gap(2 * u, problem.sigma, problem.mu, grid, problem.prm.q)
    assert gap == pytest.approx(0.5, abs=1e-6)


def test_energy_identity_input_checks():
    problem, grid, u = _manufactured_grid()
    with pytest.raises(exceptions.DomainException):
        energy_identity_gap(u + 1, problem.sigma, problem.mu, grid, problem.prm.q)
    bent = grid.copy()
    bent[1] += 1e-3
    with pytest.raises(exceptions.DomainException):
        energy_identity_gap(u, problem.sigma, problem.mu, bent, problem.prm.q)
    with pytest.raises(exceptions.NodeMismatch):
        energy_parts(u[:-1], problem.sigma, problem.mu, grid, problem.prm.q)


def test_ode_residual_of_the_exact_solution():
    problem, grid, u = _manufactured_grid()
    assert ode_residual(u, problem.sigma, problem.mu, grid, problem.prm.q) <= 1e-8


@pytest.mark.parametrize("cells", [64, 128])
def test_manufactured_solve(cells):
    problem = examples.example_manufactured_problem(cells=cells)
    result = solve_and_verify(problem.sigma, problem.mu, problem.prm)
    assert result.energy_lhs == pytest.approx(1 / 3, abs=1e-10)
    assert result.energy_rhs == pytest.approx(1 / 3, abs=1e-10)
    assert result.ode_residual_sup <= 1e-8
    assert result.sup_norm == pytest.approx(0.25, abs=1e-10)


def test_manufactured_refinement_stays_at_rounding_level():
    coarse = solve_and_verify(*_problem_args(examples.example_manufactured_problem(cells=64)))
    fine = solve_and_verify(*_problem_args(examples.example_manufactured_problem(cells=128)))
    assert step_passes(coarse, fine)


def _problem_args(problem):
    return problem.sigma, problem.mu, problem.prm


def test_mesh_study_of_the_smooth_problem():
    problem = examples.example_interval_problem(cells=64)
    result = mesh_study(problem.sigma, problem.mu, problem.prm)
    assert len(result.ratios) == 2
    for ratio in result.ratios:
        assert 3.0 <= ratio <= 5.0
    assert result.energy.cells == 512
    assert result.energy.relative_gap <= 1e-4
    assert result.passed
    table = result.table()
    assert isinstance(table, MeshStudy)
    assert list(table["cells"]) == [64, 128, 256, 512]


def test_verify_needs_the_interval_kernel():
    problem = examples.example_interval_problem(cells=8)
    k = FiniteMatrix(np.eye(8) + 0.1, problem.sigma.node_points)
    report = picard_solve(problem.sigma, problem.mu, problem.prm, "kernel", kernel=k)
    with pytest.raises(exceptions.ParameterException):
        verify_interval_solution(report, problem.sigma, problem.mu)


def test_verify_needs_matching_grids():
    problem = examples.example_interval_problem(cells=8)
    report = picard_solve(problem.sigma, problem.mu, problem.prm, "kernel", kernel=IntervalGreen())
    other = GridDensity1D((0.0, 1.0), np.ones(16))
    with pytest.raises(exceptions.DomainException):
        verify_interval_solution(report, problem.sigma, other)


def test_report_records_the_residual_window():
    problem = examples.example_interval_problem(cells=64)
    report = picard_solve(problem.sigma, problem.mu, problem.prm, "kernel", kernel=IntervalGreen())
    default = verify_interval_solution(report, problem.sigma, problem.mu)
    assert default.window == (0.125, 0.875)
    assert default.to_dict()["residual_window"] == [0.125, 0.875]
    narrow = verify_interval_solution(report, problem.sigma, problem.mu, window=(0.25, 0.75))
    assert narrow.to_dict()["residual_window"] == [0.25, 0.75]
    assert narrow.ode_residual_sup <= default.ode_residual_sup
    assert narrow.relative_gap == default.relative_gap
