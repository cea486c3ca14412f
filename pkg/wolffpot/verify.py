"""independent checks of interval solutions of -u'' = sigma u^q + mu, u(0) = u(1) = 0

The solver only knows u at the cell midpoints.  Here u is extended to the vertices x_k = k / M
through the representation u = G(u^q dsigma) + G mu, and checked against the differential
equation with second differences and against the energy identity

    int u'^2 dx = int u^{1+q} dsigma + int u dmu,

with u' from second-order finite differences and the integrals by Simpson's rule on the vertex
grid.  Densities at the vertices are the means of the two adjacent cells.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as sp_integrate

from . import exceptions
from .backends import KernelBackend, make_backend
from .kernels import IntervalGreen
from .measures import GridDensity1D
from .solver import IterationConfig, picard_solve
from .structures import MeshStudy

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = (0.125, 0.875)
RATIO_RANGE = (3.0, 5.0)
RESIDUAL_FLOOR = 1e-9


@dataclass(frozen=True)
class VerifyReport:
    """checks of one interval solve on a grid of `cells` cells

    `ode_residual_sup` is the largest second-difference residual over the vertices inside `window`,
    not over all interior vertices: u^q is only Hoelder continuous where u vanishes, so the vertices
    next to the boundary would mask the second-order trend.  `relative_gap` is
    |lhs - rhs| / max(lhs, rhs) for the energy identity.
    """

    cells: int
    h: float
    ode_residual_sup: float
    energy_lhs: float
    energy_rhs: float
    relative_gap: float
    sup_norm: float
    window: tuple = DEFAULT_WINDOW

    def to_dict(self):
        return {
            "cells": self.cells,
            "h": self.h,
            "ode_residual_sup": self.ode_residual_sup,
            "energy_lhs": self.energy_lhs,
            "energy_rhs": self.energy_rhs,
            "relative_gap": self.relative_gap,
            "sup_norm": self.sup_norm,
            "residual_window": list(self.window),
        }


def _check_grid(grid):
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 3:
        raise exceptions.DomainException("a vertex grid needs at least 3 points")
    steps = np.diff(grid)
    if np.any(steps <= 0) or np.max(np.abs(steps - steps[0])) > 1e-12 * max(1.0, abs(grid[-1])):
        raise exceptions.DomainException("the vertex grid must be uniform")
    return grid, float(steps[0])


def _vertex_densities(m, grid):
    if not isinstance(m, GridDensity1D):
        raise exceptions.MeasureException("interval verification needs grid densities")
    if m.cells != len(grid) - 1 or not np.allclose(m.vertices, grid, rtol=0, atol=1e-12):
        raise exceptions.DomainException("density grid and vertex grid differ")
    return m.vertex_densities()


def energy_parts(u, sigma, mu, grid, q):
    """int u'^2 dx and int u^{1+q} dsigma + int u dmu on the vertex grid"""
    grid, h = _check_grid(grid)
    u = np.asarray(u, dtype=float)
    if u.shape != grid.shape:
        raise exceptions.NodeMismatch("u must be given on the vertex grid")
    du = np.gradient(u, h, edge_order=2)
    lhs = sp_integrate.simpson(du ** 2, x=grid)
    rhs = (sp_integrate.simpson(np.abs(u) ** (1 + q) * _vertex_densities(sigma, grid), x=grid)
           + sp_integrate.simpson(u * _vertex_densities(mu, grid), x=grid))
    return float(lhs), float(rhs)


def energy_identity_gap(u, sigma, mu, grid, q):
    """|lhs - rhs| / max(lhs, rhs) for the energy identity of -u'' = sigma u^q + mu

    Parameters
    ----------
    u : array_like
        values on the vertex grid, zero at both ends
    sigma, mu : GridDensity1D
        on the cells of `grid`
    grid : array_like
        uniform vertices of [0, 1]
    q : float

    Returns
    -------
    float

    """
    u = np.asarray(u, dtype=float)
    if abs(u[0]) > 1e-12 * (1 + np.max(np.abs(u))) or abs(u[-1]) > 1e-12 * (1 + np.max(np.abs(u))):
        raise exceptions.DomainException("u must vanish at the ends of the interval")
    lhs, rhs = energy_parts(u, sigma, mu, grid, q)
    scale = max(lhs, rhs)
    return abs(lhs - rhs) / scale if scale > 0 else 0.0


def ode_residual(u, sigma, mu, grid, q, window=DEFAULT_WINDOW):
    """max over vertices in `window` of |-D^2 u - sigma u^q - mu|"""
    grid, h = _check_grid(grid)
    u = np.asarray(u, dtype=float)
    d2 = -(u[:-2] - 2 * u[1:-1] + u[2:]) / h ** 2
    inner = grid[1:-1]
    source = (_vertex_densities(sigma, grid)[1:-1] * np.abs(u[1:-1]) ** q + _vertex_densities(mu, grid)[1:-1])
    inside = (inner >= window[0] - 1e-12) & (inner <= window[1] + 1e-12)
    if not np.any(inside):
        raise exceptions.DomainException("no vertex inside the residual window {:}".format(window))
    return float(np.max(np.abs(d2 - source)[inside]))


def verify_interval_solution(report, sigma, mu, window=DEFAULT_WINDOW):
    """ODE residual and energy identity of a solve on the interval Green backend

    Parameters
    ----------
    report : SolveReport
        from `picard_solve` with the kernel backend and `IntervalGreen`
    sigma, mu : GridDensity1D
        uniform grids of [0, 1] with the same cells
    window : tuple
        the ODE residual is taken over the vertices in this sub-interval

    Returns
    -------
    VerifyReport

    """
    backend = report.backend
    if not (isinstance(backend, KernelBackend) and isinstance(backend.kernel, IntervalGreen)):
        raise exceptions.ParameterException("interval verification needs an IntervalGreen solve")
    if not (isinstance(sigma, GridDensity1D) and isinstance(mu, GridDensity1D)):
        raise exceptions.MeasureException("interval verification needs grid densities")
    if sigma.interval != (0.0, 1.0) or mu.interval != (0.0, 1.0) or sigma.cells != mu.cells:
        raise exceptions.DomainException("sigma and mu must share one uniform grid of [0, 1]")
    q = backend.prm.q
    grid = sigma.vertices
    u = report.evaluate(grid.reshape(-1, 1))
    u[0] = u[-1] = 0.0
    lhs, rhs = energy_parts(u, sigma, mu, grid, q)
    result = VerifyReport(
        cells=sigma.cells,
        h=sigma.h,
        ode_residual_sup=ode_residual(u, sigma, mu, grid, q, window),
        energy_lhs=lhs,
        energy_rhs=rhs,
        relative_gap=abs(lhs - rhs) / max(lhs, rhs) if max(lhs, rhs) > 0 else 0.0,
        sup_norm=float(np.max(np.abs(u))),
        window=tuple(window),
    )
    logger.info("verify M={:d}: residual={:.3e}, energy gap={:.3e}".format(
        result.cells, result.ode_residual_sup, result.relative_gap))
    return result


def solve_and_verify(sigma, mu, prm, cfg=None, window=DEFAULT_WINDOW):
    """solve with IntervalGreen on the grid of sigma and verify the result"""
    backend = make_backend("kernel", prm, IntervalGreen())
    report = picard_solve(sigma, mu, prm, backend, cfg or IterationConfig())
    return verify_interval_solution(report, sigma, mu, window)


def step_passes(coarse, fine):
    """a refinement step passes when the residual ratio is in [3, 5] or both residuals are at rounding level"""
    floor = RESIDUAL_FLOOR * (1 + max(coarse.sup_norm, fine.sup_norm))
    if coarse.ode_residual_sup <= floor and fine.ode_residual_sup <= floor:
        return True
    if fine.ode_residual_sup == 0:
        return False
    ratio = coarse.ode_residual_sup / fine.ode_residual_sup
    return RATIO_RANGE[0] <= ratio <= RATIO_RANGE[1]


@dataclass
class MeshStudyResult:
    reports: list
    ratios: list
    steps_pass: list
    energy: VerifyReport
    energy_tol: float

    @property
    def residual_order_ok(self):
        return all(self.steps_pass)

    @property
    def energy_ok(self):
        return self.energy is None or self.energy.relative_gap <= self.energy_tol

    @property
    def passed(self):
        return self.residual_order_ok and self.energy_ok

    def table(self):
        """
        Returns
        -------
        MeshStudy

        """
        reports = list(self.reports)
        ratios = [math.nan] + list(self.ratios)
        if self.energy is not None and self.energy.cells not in [r.cells for r in reports]:
            reports.append(self.energy)
            ratios.append(math.nan)
        rows = [{
            "cells": r.cells, "h": r.h, "ode_residual_sup": r.ode_residual_sup, "residual_ratio": ratio,
            "energy_lhs": r.energy_lhs, "energy_rhs": r.energy_rhs, "relative_gap": r.relative_gap,
        } for r, ratio in zip(reports, ratios)]
        return MeshStudy.from_rows(rows, name="interval verification", passed=self.passed)

    def to_dict(self):
        return {
            "reports": [r.to_dict() for r in self.reports],
            "residual_ratios": self.ratios,
            "steps_pass": self.steps_pass,
            "residual_order_ok": self.residual_order_ok,
            "energy": None if self.energy is None else self.energy.to_dict(),
            "energy_tol": self.energy_tol,
            "energy_ok": self.energy_ok,
            "passed": self.passed,
        }


def mesh_study(sigma, mu, prm, cells=(64, 128, 256), energy_cells=512, energy_tol=1e-4, cfg=None,
               window=DEFAULT_WINDOW):
    """solve and verify on successively refined grids

    `sigma` and `mu` are resampled to every cell count, which needs polynomial densities or
    cell counts that are multiples of the given grid.

    Returns
    -------
    MeshStudyResult

    """
    reports = [solve_and_verify(sigma.resampled(m), mu.resampled(m), prm, cfg, window) for m in cells]
    ratios, passes = [], []
    for coarse, fine in zip(reports[:-1], reports[1:]):
        ratios.append(coarse.ode_residual_sup / fine.ode_residual_sup if fine.ode_residual_sup > 0 else math.inf)
        passes.append(step_passes(coarse, fine))
    energy = None
    if energy_cells:
        energy = solve_and_verify(sigma.resampled(energy_cells), mu.resampled(energy_cells), prm, cfg, window)
    result = MeshStudyResult(reports, ratios, passes, energy, energy_tol)
    if not result.passed:
        logger.warning("interval verification failed: ratios {:}, energy gap {:}".format(
            ratios, None if energy is None else energy.relative_gap))
    return result
