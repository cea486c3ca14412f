import math

import numpy as np
import pytest

from wolffpot import exceptions
from wolffpot.measures import (
    AtomicMeasure, EvaluationSet, GridDensity1D, Params, SmearedAtomicMeasure, _cap_fraction, ball_mass,
    ball_mass_profile, integrate, lp_norm, measure_from_dict, overlap_fraction,
)


def test_params_validation():
    Params(n=3, p=2.0, q=0.5, alpha=1.0)
    with pytest.raises(exceptions.ParameterException):
        Params(n=3, p=2.0, q=1.0, alpha=1.0)
    with pytest.raises(exceptions.ParameterException):
        Params(n=0, p=2.0, q=0.5, alpha=1.0)
    with pytest.raises(exceptions.ParameterException):
        Params(n=3, p=1.0, q=0.5, alpha=1.0)
    with pytest.raises(ValueError):
        Params(n=3, p=2.0, q=0.5, alpha=-1.0)


def test_params_exponents():
    prm = Params(n=3, p=3.0, q=0.5, alpha=0.5)
    assert prm.beta == pytest.approx(0.75)
    assert prm.sigma_exponent == pytest.approx(2.0)
    assert prm.lower_bound_exponent == pytest.approx(4.0 / 3.0)
    assert prm.subadditivity_constant == 1.0
    assert Params(n=3, p=1.5, q=0.25, alpha=0.5).subadditivity_constant == pytest.approx(2.0)
    assert Params.from_dict(prm.to_dict()) == prm


def test_ball_mass_atomic():
    m = AtomicMeasure([[0.0, 0.0, 0.0]], [1.0])
    assert ball_mass(m, [2.0, 0.0, 0.0], 1.0) == 0.0
    assert ball_mass(m, [2.0, 0.0, 0.0], 3.0) == 1.0
    # closed balls
    assert ball_mass(m, [2.0, 0.0, 0.0], 2.0) == 1.0
    assert ball_mass(m, [0.0, 0.0, 0.0], 0.0) == 1.0
    with pytest.raises(exceptions.ParameterException):
        ball_mass(m, [0.0, 0.0, 0.0], -1.0)


def test_ball_mass_grid():
    m = GridDensity1D((0.0, 1.0), [2.0, 0.0])
    assert ball_mass(m, 0.25, 0.5) == pytest.approx(1.0)
    assert ball_mass(m, 0.25, 0.0) == 0.0
    assert ball_mass(m, 0.25, 10.0) == pytest.approx(m.total_mass)


def test_profile_atomic_pair():
    m = AtomicMeasure([[1.0, 0.0], [-1.0, 0.0]], [1.0, 1.0])
    profile = ball_mass_profile(m, [0.0, 0.0])
    np.testing.assert_allclose(profile.breakpoints, [0.0, 1.0])
    assert len(profile.pieces) == 1
    assert profile(0.5) == 0.0
    assert profile(1.0) == 2.0
    assert profile.total_mass == 2.0
    assert profile.point_mass == 0.0


def test_profile_smeared_interval():
    m = SmearedAtomicMeasure([[0.0]], [1.0], 0.5)
    profile = ball_mass_profile(m, [1.0])
    np.testing.assert_allclose(profile.breakpoints, [0.0, 0.5, 1.5])
    assert profile(0.25) == 0.0
    assert profile(1.0) == pytest.approx(0.5)
    assert profile(2.0) == 1.0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_profile_matches_ball_mass(n):
    rng = np.random.default_rng(n)
    m = SmearedAtomicMeasure(rng.uniform(-1, 1, (4, n)), rng.uniform(0.1, 1.0, 4), 0.3)
    for x in rng.uniform(-1.5, 1.5, (5, n)):
        profile = m.ball_mass_profile(x)
        radii = np.linspace(0.0, 4.0, 97)
        np.testing.assert_allclose(profile(radii), m.ball_mass(x, radii), rtol=1e-12, atol=1e-14)
        assert np.all(np.diff(profile(radii)) >= -1e-14)


def test_lens_formula_agrees_with_caps():
    rho = 0.7
    rng = np.random.default_rng(1)
    r = rng.uniform(0.05, 1.5, 200)
    d = rng.uniform(0.05, 2.0, 200)
    lens = (d < r + rho) & (d + r > rho) & (d + rho > r)
    d, r = d[lens], r[lens]
    d1 = (d ** 2 + r ** 2 - rho ** 2) / (2 * d)
    caps = (r / rho) ** 3 * _cap_fraction(r, r - d1, 3) + _cap_fraction(rho, rho - (d - d1), 3)
    np.testing.assert_allclose(overlap_fraction(d, r, rho, 3), caps, rtol=1e-10, atol=1e-14)


def test_cap_fraction_half_and_small_cap():
    assert _cap_fraction(1.0, 1.0, 3) == pytest.approx(0.5)
    h = 0.2
    assert _cap_fraction(1.0, h, 3) == pytest.approx(h ** 2 * (3 - h) / 4)


def test_overlap_fraction_limits():
    assert overlap_fraction(0.0, 0.5, 1.0, 3) == pytest.approx(0.125)
    assert overlap_fraction(0.2, 2.0, 1.0, 2) == 1.0
    assert overlap_fraction(3.0, 1.0, 1.0, 4) == 0.0


@pytest.mark.parametrize("measure", [
    AtomicMeasure([[0.0, 1.0], [1.0, 0.0], [0.5, 0.5]], [0.2, 0.3, 0.5]),
    SmearedAtomicMeasure([[0.0, 1.0], [1.0, 0.0]], [0.2, 0.3], 0.25),
])
def test_scaling(measure):
    x = [0.3, 0.2]
    for c in (0.5, 3.0):
        assert measure.scaled(c).ball_mass(x, 0.9) == pytest.approx(c * measure.ball_mass(x, 0.9))
    assert measure.ball_mass(x, 100.0) == pytest.approx(measure.total_mass)


def test_grid_scaled_keeps_polynomial():
    m = GridDensity1D.from_polynomial([1.0, 1.0], (0.0, 1.0), 8)
    scaled = m.scaled(2.0)
    assert scaled.source == (2.0, 2.0)
    np.testing.assert_allclose(scaled.resampled(16).densities, 2 * m.resampled(16).densities)


def test_grid_vertex_densities():
    m = GridDensity1D((0.0, 1.0), [1.0, 3.0, 5.0])
    np.testing.assert_allclose(m.vertex_densities(), [1.0, 2.0, 4.0, 5.0])
    np.testing.assert_allclose(m.density_at([0.0, 0.5, 1.0, 1.5]), [1.0, 3.0, 5.0, 0.0])


def test_grid_resample_piecewise_constant():
    m = GridDensity1D((0.0, 1.0), [1.0, 3.0])
    np.testing.assert_allclose(m.resampled(4).densities, [1.0, 1.0, 3.0, 3.0])
    with pytest.raises(exceptions.MeasureException):
        m.resampled(3)


def test_integrate_and_norms():
    m = AtomicMeasure([[0.0], [1.0]], [0.5, 0.5])
    assert integrate(np.ones(2), m) == pytest.approx(1.0)
    assert lp_norm([1.0, 2.0], 2.0, m) == pytest.approx(math.sqrt(2.5))
    assert lp_norm([1.0, math.inf], 2.0, m) == math.inf
    assert integrate([1.0, math.inf], m) == math.inf
    grid = GridDensity1D((0.0, 1.0), [1.0, 1.0, 1.0, 1.0])
    assert integrate(grid.midpoints, grid) == pytest.approx(0.5)


def test_infinity_on_zero_weight_node_is_ignored():
    nodes = EvaluationSet([[0.0], [1.0]], [1.0, 0.0], ("sigma", "sigma"))
    assert integrate([2.0, math.inf], nodes) == pytest.approx(2.0)


def test_integrate_mismatch():
    m = AtomicMeasure([[0.0], [1.0]], [0.5, 0.5])
    with pytest.raises(exceptions.NodeMismatch):
        integrate([1.0, 2.0, 3.0], m)
    with pytest.raises(exceptions.NodeMismatch):
        lp_norm([1.0], 2.0, m)
    with pytest.raises(exceptions.ParameterException):
        lp_norm([1.0, 2.0], 0.5, m)


def test_invalid_measures():
    with pytest.raises(exceptions.MeasureException):
        AtomicMeasure([[0.0]], [-1.0])
    with pytest.raises(exceptions.MeasureException):
        AtomicMeasure([[0.0], [1.0]], [0.0, 0.0])
    with pytest.raises(exceptions.MeasureException):
        SmearedAtomicMeasure([[0.0]], [1.0], 0.0)
    with pytest.raises(exceptions.MeasureException):
        GridDensity1D((1.0, 0.0), [1.0])
    with pytest.raises(exceptions.MeasureException):
        measure_from_dict({"variant": "nope"})


def test_evaluation_set_for_measures():
    sigma = AtomicMeasure([[0.0], [1.0]], [0.25, 0.75])
    mu = SmearedAtomicMeasure([[2.0]], [1.0], 0.1)
    nodes = EvaluationSet.for_measures(sigma, mu, probes=[[3.0], [4.0]])
    assert len(nodes) == 5
    assert nodes.tags == ("sigma", "sigma", "mu", "probe", "probe")
    assert nodes.total_mass == pytest.approx(1.0)
    np.testing.assert_allclose(nodes.sigma_points, [[0.0], [1.0]])


def test_atomic_sum():
    a = AtomicMeasure([[0.0]], [1.0])
    b = AtomicMeasure([[1.0]], [2.0])
    total = a + b
    assert total.total_mass == 3.0
    assert total.ball_mass([1.0], 0.0) == 2.0


@pytest.mark.parametrize("measure", [
    AtomicMeasure([[0.0, 1.0], [1.0, 0.0]], [0.2, 0.3]),
    SmearedAtomicMeasure([[0.0, 1.0, 2.0]], [0.7], 0.25),
    GridDensity1D.from_polynomial([1.0, 0.0, 1.0], (0.0, 1.0), 8),
])
def test_measure_documents(measure):
    rebuilt = measure_from_dict(measure.to_dict())
    assert type(rebuilt) is type(measure)
    np.testing.assert_allclose(rebuilt.node_points, measure.node_points)
    np.testing.assert_allclose(rebuilt.node_weights, measure.node_weights)


def test_polynomial_document_without_densities():
    m = measure_from_dict({"variant": "grid1d", "interval": [0.0, 1.0], "polynomial": [2.0], "cells": 4})
    np.testing.assert_allclose(m.densities, [2.0] * 4)
