"""finiteness criteria for the sublinear equation u = P(u^q dsigma) + P mu

With P the potential of the chosen backend the three quantities are

sigma_norm
    || P sigma ||_{L^s(dsigma)},  s = (1 + q)(p - 1) / (p - 1 - q)  (s = (1 + q)/(1 - q) for p = 2)
mu_energy
    int P mu dmu
cross_norm
    || P mu ||_{L^{1+q}(dsigma)}

Each is reported as a norm, "the condition holds" meaning finite.  Finiteness of the first two
implies finiteness of the third; `implication_audit` flags any instance contradicting this.
"""
import logging
import math
from dataclasses import dataclass

from . import exceptions
from .backends import make_backend
from .measures import GridDensity1D, integrate, lp_norm
from .structures import RefinementTrend

logger = logging.getLogger(__name__)


def _sigma_values(backend, sigma, nodes):
    return backend.potential(sigma, nodes.sigma_points)


def check_sigma(sigma, prm, mode="wolff", kernel=None):
    """|| P sigma ||_{L^s(dsigma)} with the sigma-exponent of the backend

    Parameters
    ----------
    sigma : Measure
    prm : Params
    mode : str or Backend or Kernel
        "wolff", "riesz" or "kernel"
    kernel : Kernel, optional
        required for mode "kernel"

    Returns
    -------
    float
        nonnegative or inf

    """
    backend = make_backend(mode, prm, kernel)
    nodes = sigma.evaluation_set()
    return lp_norm(_sigma_values(backend, sigma, nodes), backend.sigma_exponent, nodes)


def check_mu_energy(mu, prm, mode="wolff", kernel=None):
    """int P mu dmu on the quadrature nodes of mu"""
    backend = make_backend(mode, prm, kernel)
    nodes = mu.evaluation_set()
    return integrate(backend.potential(mu, nodes.sigma_points), nodes)


def check_cross(sigma, mu, prm, mode="wolff", kernel=None):
    """|| P mu ||_{L^{1+q}(dsigma)}"""
    backend = make_backend(mode, prm, kernel)
    nodes = sigma.evaluation_set()
    return lp_norm(backend.potential(mu, nodes.sigma_points), 1 + prm.q, nodes)


@dataclass(frozen=True)
class CriteriaReport:
    mode: str
    sigma_norm: float
    mu_energy: float
    cross_norm: float
    sigma_exponent: float
    cross_exponent: float

    @property
    def finite(self):
        return all(math.isfinite(v) for v in (self.sigma_norm, self.mu_energy, self.cross_norm))

    @property
    def violation(self):
        """True iff sigma_norm and mu_energy are finite but cross_norm is not"""
        return (math.isfinite(self.sigma_norm) and math.isfinite(self.mu_energy)
                and not math.isfinite(self.cross_norm))

    def to_dict(self):
        return {
            "mode": self.mode,
            "sigma_norm": self.sigma_norm,
            "mu_energy": self.mu_energy,
            "cross_norm": self.cross_norm,
            "sigma_exponent": self.sigma_exponent,
            "cross_exponent": self.cross_exponent,
            "finite": self.finite,
            "violation": self.violation,
        }

    def table(self):
        """the human readable form printed by the command line"""
        rows = [
            ("sigma_norm", "L^{:.6g}(dsigma)".format(self.sigma_exponent), self.sigma_norm),
            ("mu_energy", "int P mu dmu", self.mu_energy),
            ("cross_norm", "L^{:.6g}(dsigma)".format(self.cross_exponent), self.cross_norm),
        ]
        lines = ["mode: {:s}".format(self.mode)]
        lines += ["{:<12s}{:<22s}{:>24.16g}".format(*row) for row in rows]
        if self.violation:
            lines.append("VIOLATION: finite sigma_norm and mu_energy with infinite cross_norm")
        return "\n".join(lines)


def implication_audit(sigma, mu, prm, mode="wolff", kernel=None):
    """evaluate all three criteria

    Returns
    -------
    CriteriaReport
        `violation` is set iff sigma_norm < inf and mu_energy < inf but cross_norm = inf, which
        would contradict the implication and points at a bug

    """
    backend = make_backend(mode, prm, kernel)
    report = CriteriaReport(
        mode=backend.mode,
        sigma_norm=check_sigma(sigma, prm, backend),
        mu_energy=check_mu_energy(mu, prm, backend),
        cross_norm=check_cross(sigma, mu, prm, backend),
        sigma_exponent=backend.sigma_exponent,
        cross_exponent=1 + prm.q,
    )
    if report.violation:
        logger.error("implication violated: {:}".format(report))
    else:
        logger.info("criteria ({:s}): sigma={:.6g}, mu={:.6g}, cross={:.6g}".format(
            report.mode, report.sigma_norm, report.mu_energy, report.cross_norm))
    return report


def sigma_scaling_exponent(prm, mode="wolff"):
    """e with check_sigma(c sigma) = c^e check_sigma(sigma)"""
    p = 2.0 if mode in ("riesz", "kernel") else prm.p
    q = prm.q
    return 1.0 / (p - 1) + (p - 1 - q) / ((1 + q) * (p - 1))


def refinement_trend(sigma, mu, prm, mode="kernel", kernel=None, factors=(1, 2, 4)):
    """the three criteria for grid densities resampled on M, 2M, 4M, ... cells

    Finite values on a grid do not prove the continuum condition, a growing trend exposes
    divergence.

    Returns
    -------
    RefinementTrend

    """
    if not (isinstance(sigma, GridDensity1D) and isinstance(mu, GridDensity1D)):
        raise exceptions.MeasureException("refinement trends need grid densities for sigma and mu")
    backend = make_backend(mode, prm, kernel)
    rows = []
    for factor in factors:
        sigma_f = sigma.resampled(sigma.cells * factor)
        mu_f = mu.resampled(mu.cells * factor)
        report = implication_audit(sigma_f, mu_f, prm, backend)
        rows.append({
            "cells": sigma_f.cells,
            "sigma_norm": report.sigma_norm,
            "mu_energy": report.mu_energy,
            "cross_norm": report.cross_norm,
        })
    return RefinementTrend.from_rows(rows, name="criteria refinement", mode=backend.mode)
