"""nonnegative measures with exact (or closed-form) ball masses, their quadrature nodes and weighted norms

Three concrete representations are provided, all immutable after construction:

AtomicMeasure
    finitely many point masses.  Never satisfies a Wolff-type finiteness condition on its own
    support, since the potential of an atom is infinite at the atom.
SmearedAtomicMeasure
    each atom spread uniformly over a ball of radius `smear_radius`, the diffuse stand-in for
    atomic data.
GridDensity1D
    a piecewise constant density on a uniform grid of an interval.

Every measure knows its ball mass ``m(B(x, r))`` (closed balls), the radial profile
``r -> m(B(x, r))`` as breakpoints plus closed-form pieces, and its quadrature nodes (an
`EvaluationSet`) on which "dsigma-a.e." statements are evaluated.
"""
import math
import warnings
from collections import OrderedDict
from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial import Polynomial
from scipy import special

from . import exceptions, util

SIGMA_TAG = "sigma"
MU_TAG = "mu"
PROBE_TAG = "probe"


@dataclass(frozen=True)
class Params:
    """the exponent / dimension tuple (n, p, q, alpha) governing every formula

    Attributes
    ----------
    n : int
        spatial dimension, n >= 1
    p : float
        p > 1
    q : float
        sub-natural growth exponent, 0 < q < p - 1
    alpha : float
        order of the potential, alpha > 0.  Wolff potentials are finite only for alpha * p < n,
        Riesz potentials I_{2 alpha} only for 2 alpha < n; outside those ranges the potentials
        evaluate to +inf rather than raising.
    """

    n: int
    p: float
    q: float
    alpha: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise exceptions.ParameterException("n must be an integer >= 1, got {:}".format(self.n))
        object.__setattr__(self, "n", int(self.n))
        if not self.p > 1:
            raise exceptions.ParameterException("p must be > 1, got {:}".format(self.p))
        if not 0 < self.q < self.p - 1:
            raise exceptions.ParameterException(
                "q must satisfy 0 < q < p - 1 = {:g}, got {:}".format(self.p - 1, self.q))
        if not self.alpha > 0:
            raise exceptions.ParameterException("alpha must be > 0, got {:}".format(self.alpha))

    @property
    def wolff_finite(self):
        return self.alpha * self.p < self.n

    @property
    def beta(self):
        """decay exponent of the Wolff kernel, (n - alpha p) / (p - 1)"""
        return (self.n - self.alpha * self.p) / (self.p - 1)

    @property
    def sigma_exponent(self):
        """the Lebesgue exponent (1 + q)(p - 1) / (p - 1 - q) of the sigma-criterion"""
        return (1 + self.q) * (self.p - 1) / (self.p - 1 - self.q)

    @property
    def lower_bound_exponent(self):
        return (self.p - 1) / (self.p - 1 - self.q)

    @property
    def subadditivity_constant(self):
        """A in W(g w + b v) <= A (g^{1/(p-1)} W w + b^{1/(p-1)} W v)"""
        if self.p < 2:
            return 2.0 ** ((2 - self.p) / (self.p - 1))
        return 1.0

    def with_(self, **changes):
        return replace(self, **changes)

    def to_dict(self):
        return OrderedDict((("n", self.n), ("p", self.p), ("q", self.q), ("alpha", self.alpha)))

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(n=data["n"], p=float(data["p"]), q=float(data["q"]), alpha=float(data["alpha"]))
        except KeyError as missing:
            raise exceptions.ParameterException("params missing key {:}".format(missing))


@dataclass(frozen=True)
class ProfilePiece:
    """one piece [lo, hi) of a ball-mass profile

    On the piece the profile equals ``offset + coef * r**power`` unless `func` is given, in which
    case `func(r)` is the (smooth) profile and the other fields are unused.
    """

    lo: float
    hi: float
    offset: float = 0.0
    coef: float = 0.0
    power: float = 1.0
    func: object = None

    @property
    def closed_form(self):
        return self.func is None

    def value(self, r):
        if self.func is not None:
            return self.func(r)
        return self.offset + self.coef * np.power(r, self.power)


@dataclass(frozen=True, eq=False)
class BallMassProfile:
    """the nondecreasing, right-continuous function r -> m(B(x, r)) for a fixed base point

    Attributes
    ----------
    base_point : np.ndarray
    breakpoints : np.ndarray
        0 = r_0 < r_1 < ... < r_K, the geometric transition radii
    pieces : tuple of ProfilePiece
        pieces[k] describes [r_k, r_{k+1}), K pieces in total
    total_mass : float
        the value on [r_K, inf)
    """

    base_point: np.ndarray
    breakpoints: np.ndarray
    pieces: tuple
    total_mass: float

    @property
    def point_mass(self):
        """mass of the base point itself, m({x})"""
        if not self.pieces:
            return self.total_mass
        return float(self.pieces[0].value(0.0))

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        out = np.full(r.shape, self.total_mass, dtype=float)
        idx = np.searchsorted(self.breakpoints, r, side="right") - 1
        for k, piece in enumerate(self.pieces):
            mask = idx == k
            if np.any(mask):
                out[mask] = piece.value(r[mask])
        return float(out[0]) if scalar else out


@dataclass(frozen=True, eq=False)
class EvaluationSet:
    """quadrature points on which dsigma-a.e. statements are evaluated

    sigma-nodes carry the weights reproducing sigma; mu-nodes and probes carry weight 0.
    """

    points: np.ndarray
    sigma_weights: np.ndarray
    tags: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", util.frozen(util.as_points(self.points)))
        object.__setattr__(self, "sigma_weights", util.frozen(self.sigma_weights))
        object.__setattr__(self, "tags", tuple(self.tags))
        if not (len(self.points) == len(self.sigma_weights) == len(self.tags)):
            raise exceptions.NodeMismatch("points, weights and tags must have the same length")
        if np.any(self.sigma_weights < 0):
            raise exceptions.MeasureException("quadrature weights must be nonnegative")

    def __len__(self):
        return len(self.points)

    @property
    def sigma_mask(self):
        return np.array([tag == SIGMA_TAG for tag in self.tags], dtype=bool)

    @property
    def sigma_points(self):
        return self.points[self.sigma_mask]

    @property
    def weights(self):
        """weights of the sigma-nodes only"""
        return self.sigma_weights[self.sigma_mask]

    @property
    def total_mass(self):
        return float(np.sum(self.weights))

    @classmethod
    def for_measures(cls, sigma, mu=None, probes=None):
        """sigma-nodes of `sigma`, followed by the nodes of `mu` and the probe points"""
        sig = sigma.evaluation_set()
        points = [sig.points]
        weights = [sig.sigma_weights]
        tags = list(sig.tags)
        if mu is not None:
            mu_points = mu.node_points
            points.append(mu_points)
            weights.append(np.zeros(len(mu_points)))
            tags.extend([MU_TAG] * len(mu_points))
        if probes is not None and len(probes):
            probe_points = util.as_points(probes, sigma.dimension)
            points.append(probe_points)
            weights.append(np.zeros(len(probe_points)))
            tags.extend([PROBE_TAG] * len(probe_points))
        return cls(np.vstack(points), np.concatenate(weights), tuple(tags))


measure_variants = OrderedDict()


def register_measure_variants(*sub_classes):
    """
    register Measure sub-classes so that `measure_from_dict` can find them by variant name

    Parameters
    ----------
    sub_classes
        Measure sub-classes as arguments

    """
    for cls in sub_classes:
        if cls.variant in measure_variants.keys():
            warnings.warn("overwriting {:s} measure variant".format(cls.variant))
        measure_variants[cls.variant] = cls


class Measure(object):
    """base class of the nonnegative measures

    Sub-classes define the class variable `variant` (the JSON tag) and implement
    `ball_mass`, `ball_mass_profile`, `node_points`, `node_weights`, `reweighted`, `scaled`
    and the dict round trip.
    """

    variant = None
    label = "Measure"

    @property
    def dimension(self):
        raise NotImplementedError

    @property
    def total_mass(self):
        return float(np.sum(self.node_weights))

    @property
    def node_points(self):
        raise NotImplementedError

    @property
    def node_weights(self):
        raise NotImplementedError

    def ball_mass(self, x, r):
        raise NotImplementedError

    def ball_mass_profile(self, x):
        raise NotImplementedError

    def evaluation_set(self):
        points = self.node_points
        return EvaluationSet(points, self.node_weights, (SIGMA_TAG,) * len(points))

    def reweighted(self, factors):
        """the measure f dm for nonnegative values f on the nodes"""
        raise NotImplementedError

    def scaled(self, c):
        return self.reweighted(np.full(len(self.node_weights), float(c)))

    def to_dict(self):
        raise NotImplementedError

    def _check_mass(self, weights):
        weights = np.asarray(weights, dtype=float)
        if np.any(~np.isfinite(weights)) or np.any(weights < 0):
            raise exceptions.MeasureException("weights/densities must be finite and nonnegative")
        if not np.sum(weights) > 0:
            raise exceptions.MeasureException("a measure must have positive total mass")

    def __repr__(self):
        return "{:s}(n={:d}, nodes={:d}, mass={:.6g})".format(
            type(self).__name__, self.dimension, len(self.node_weights), self.total_mass)


class AtomicMeasure(Measure):
    """finitely many point masses sum_i w_i delta_{x_i}"""

    variant = "atomic"
    label = "Atomic"

    def __init__(self, points, weights, dimension=None):
        self._points = util.frozen(util.as_points(points, dimension))
        self._weights = util.frozen(np.atleast_1d(weights))
        if len(self._points) != len(self._weights):
            raise exceptions.MeasureException("number of points and weights differ")
        self._check_mass(self._weights)

    @property
    def dimension(self):
        return self._points.shape[1]

    @property
    def points(self):
        return self._points

    @property
    def weights(self):
        return self._weights

    @property
    def node_points(self):
        return self._points

    @property
    def node_weights(self):
        return self._weights

    def distances(self, x):
        x = util.as_points(x, self.dimension)[0]
        return np.linalg.norm(self._points - x, axis=1)

    def ball_mass(self, x, r):
        dist = self.distances(x)
        r = np.asarray(r, dtype=float)
        if r.ndim == 0:
            return float(np.sum(self._weights[dist <= r]))
        return np.array([np.sum(self._weights[dist <= ri]) for ri in r])

    def ball_mass_profile(self, x):
        dist = self.distances(x)
        order = np.argsort(dist, kind="stable")
        dist, weights = dist[order], self._weights[order]
        radii, first = np.unique(dist, return_index=True)
        cumulative = np.cumsum(weights)
        # mass inside the closed ball of each distinct radius
        levels = np.array([cumulative[np.searchsorted(dist, rad, side="right") - 1] for rad in radii])
        if radii[0] > 0:
            radii = np.concatenate(([0.0], radii))
            levels = np.concatenate(([0.0], levels))
        pieces = tuple(
            ProfilePiece(lo=radii[k], hi=radii[k + 1], offset=levels[k]) for k in range(len(radii) - 1))
        return BallMassProfile(util.frozen(util.as_points(x, self.dimension)[0]), util.frozen(radii),
                               pieces, float(levels[-1]))

    def reweighted(self, factors):
        return AtomicMeasure(self._points, self._weights * np.asarray(factors, dtype=float))

    def __add__(self, other):
        if not isinstance(other, AtomicMeasure):
            return NotImplemented
        return AtomicMeasure(np.vstack((self._points, other.points)),
                             np.concatenate((self._weights, other.weights)))

    def to_dict(self):
        return OrderedDict((
            ("variant", self.variant),
            ("dimension", self.dimension),
            ("points", self._points.tolist()),
            ("weights", self._weights.tolist()),
        ))

    @classmethod
    def from_dict(cls, data):
        return cls(data["points"], data["weights"], data.get("dimension"))


def _cap_fraction(radius, height, n):
    """volume fraction of the cap of height `height` cut from a ball of radius `radius` in R^n"""
    height = np.clip(height, 0.0, 2 * radius)
    small = np.minimum(height, 2 * radius - height)
    arg = np.clip((2 * radius * small - small ** 2) / radius ** 2, 0.0, 1.0)
    half = 0.5 * special.betainc((n + 1) / 2.0, 0.5, arg)
    return np.where(height <= radius, half, 1.0 - half)


def overlap_fraction(dist, r, rho, n):
    """vol(B(x, r) & B(c, rho)) / vol(B(c, rho)) for |x - c| = dist

    Closed forms: interval overlap for n = 1, the lens formula for n = 3 and the sum of two
    hyperspherical caps (regularized incomplete beta function) otherwise.
    """
    dist = np.asarray(dist, dtype=float)
    r = np.asarray(r, dtype=float)
    dist, r = np.broadcast_arrays(dist, r)
    out = np.zeros(dist.shape, dtype=float)

    if n == 1:
        length = np.minimum(r, dist + rho) - np.maximum(-r, dist - rho)
        return np.clip(length, 0.0, 2 * rho) / (2 * rho)

    inner = (dist + r <= rho) & (r > 0)
    full = dist + rho <= r
    lens = (dist < r + rho) & ~inner & ~full & (r > 0)
    out[inner] = (r[inner] / rho) ** n
    out[full] = 1.0
    if np.any(lens):
        d, rr = dist[lens], r[lens]
        if n == 3:
            out[lens] = (rr + rho - d) ** 2 * (d ** 2 + 2 * d * (rr + rho) - 3 * (rr - rho) ** 2) / (16 * d * rho ** 3)
        else:
            d1 = (d ** 2 + rr ** 2 - rho ** 2) / (2 * d)
            out[lens] = (rr / rho) ** n * _cap_fraction(rr, rr - d1, n) + _cap_fraction(rho, rho - (d - d1), n)
    return np.clip(out, 0.0, 1.0)


class SmearedAtomicMeasure(Measure):
    """atoms each spread uniformly over the ball of radius `smear_radius` around its center

    The quadrature nodes are the centers with the atom weights, so `reweighted` rescales each
    smeared atom as a whole.
    """

    variant = "smeared"
    label = "Smeared atomic"

    def __init__(self, centers, weights, smear_radius, dimension=None):
        self._centers = util.frozen(util.as_points(centers, dimension))
        self._weights = util.frozen(np.atleast_1d(weights))
        self._rho = float(smear_radius)
        if not self._rho > 0:
            raise exceptions.MeasureException("smear_radius must be > 0")
        if len(self._centers) != len(self._weights):
            raise exceptions.MeasureException("number of centers and weights differ")
        self._check_mass(self._weights)

    @property
    def dimension(self):
        return self._centers.shape[1]

    @property
    def centers(self):
        return self._centers

    @property
    def weights(self):
        return self._weights

    @property
    def smear_radius(self):
        return self._rho

    @property
    def node_points(self):
        return self._centers

    @property
    def node_weights(self):
        return self._weights

    def distances(self, x):
        x = util.as_points(x, self.dimension)[0]
        return np.linalg.norm(self._centers - x, axis=1)

    def _mass_at(self, dist, r):
        r = np.asarray(r, dtype=float)
        frac = overlap_fraction(dist[:, None], r.reshape(1, -1), self._rho, self.dimension)
        return self._weights @ frac

    def ball_mass(self, x, r):
        r = np.asarray(r, dtype=float)
        mass = self._mass_at(self.distances(x), r.reshape(-1))
        return float(mass[0]) if r.ndim == 0 else mass

    def ball_mass_profile(self, x):
        n, rho = self.dimension, self._rho
        keep = self._weights > 0
        dist, weights = self.distances(x)[keep], self._weights[keep]
        radii = np.unique(np.concatenate(([0.0], np.abs(dist - rho), dist + rho)))

        pieces = []
        for lo, hi in zip(radii[:-1], radii[1:]):
            mid = 0.5 * (lo + hi)
            none = dist >= mid + rho
            inner = dist + mid <= rho
            full = dist + rho <= mid
            lens = ~(none | inner | full)
            if np.any(lens):
                lens_dist, lens_w = dist[lens], weights[lens]
                offset, coef = np.sum(weights[full]), np.sum(weights[inner]) / rho ** n

                def func(r, lens_dist=lens_dist, lens_w=lens_w, offset=offset, coef=coef):
                    r = np.asarray(r, dtype=float)
                    lens_mass = lens_w @ overlap_fraction(lens_dist[:, None], r.reshape(1, -1), rho, n)
                    val = offset + coef * r.reshape(-1) ** n + lens_mass
                    return float(val[0]) if r.ndim == 0 else val

                pieces.append(ProfilePiece(lo=lo, hi=hi, func=func))
            else:
                pieces.append(ProfilePiece(lo=lo, hi=hi, offset=float(np.sum(weights[full])),
                                           coef=float(np.sum(weights[inner]) / rho ** n), power=n))
        return BallMassProfile(util.frozen(util.as_points(x, n)[0]), util.frozen(radii), tuple(pieces),
                               float(np.sum(weights)))

    def reweighted(self, factors):
        return SmearedAtomicMeasure(self._centers, self._weights * np.asarray(factors, dtype=float), self._rho)

    def to_dict(self):
        return OrderedDict((
            ("variant", self.variant),
            ("dimension", self.dimension),
            ("points", self._centers.tolist()),
            ("weights", self._weights.tolist()),
            ("smear_radius", self._rho),
        ))

    @classmethod
    def from_dict(cls, data):
        return cls(data["points"], data["weights"], data["smear_radius"], data.get("dimension"))


class GridDensity1D(Measure):
    """piecewise constant density on M uniform cells of [a, b]

    Quadrature nodes are the cell midpoints, weighted with the cell masses.  A density built by
    `from_polynomial` remembers its coefficients, so `resampled` samples the same smooth density
    on a finer grid.
    """

    variant = "grid1d"
    label = "Grid density (1D)"

    def __init__(self, interval, densities, source=None):
        a, b = (float(v) for v in interval)
        if not b > a:
            raise exceptions.MeasureException("interval must satisfy a < b")
        self._interval = (a, b)
        self._densities = util.frozen(np.atleast_1d(densities))
        self._check_mass(self._densities)
        self._source = None if source is None else tuple(float(c) for c in source)
        self._edges = util.frozen(np.linspace(a, b, len(self._densities) + 1))

    @classmethod
    def from_polynomial(cls, coefficients, interval, cells):
        """sample the density sum_k c_k x^k at the cell midpoints"""
        a, b = interval
        h = (b - a) / cells
        mids = a + h * (np.arange(cells) + 0.5)
        return cls(interval, Polynomial(coefficients)(mids), source=coefficients)

    @property
    def dimension(self):
        return 1

    @property
    def interval(self):
        return self._interval

    @property
    def cells(self):
        return len(self._densities)

    @property
    def h(self):
        return (self._interval[1] - self._interval[0]) / self.cells

    @property
    def densities(self):
        return self._densities

    @property
    def edges(self):
        return self._edges

    @property
    def source(self):
        return self._source

    @property
    def midpoints(self):
        return 0.5 * (self._edges[:-1] + self._edges[1:])

    @property
    def vertices(self):
        return self._edges

    @property
    def node_points(self):
        return self.midpoints.reshape(-1, 1)

    @property
    def node_weights(self):
        return self._densities * self.h

    def density_at(self, x):
        """right-continuous lookup of the cell density, 0 outside [a, b]"""
        x = np.asarray(x, dtype=float)
        idx = np.floor((x - self._interval[0]) / self.h).astype(int)
        idx = np.where(x == self._interval[1], self.cells - 1, idx)
        inside = (idx >= 0) & (idx < self.cells)
        return np.where(inside, self._densities[np.clip(idx, 0, self.cells - 1)], 0.0)

    def vertex_densities(self):
        """density at the cell boundaries, the mean of the two adjacent cells (one-sided at a, b)"""
        dens = self._densities
        return np.concatenate(([dens[0]], 0.5 * (dens[:-1] + dens[1:]), [dens[-1]]))

    def _scalar_x(self, x):
        return float(util.as_points(x, 1)[0, 0])

    def ball_mass(self, x, r):
        x = self._scalar_x(x)
        r = np.asarray(r, dtype=float)
        rr = r.reshape(-1, 1)
        lo = np.clip(x - rr, self._edges[:-1], self._edges[1:])
        hi = np.clip(x + rr, self._edges[:-1], self._edges[1:])
        mass = (hi - lo) @ self._densities
        return float(mass[0]) if r.ndim == 0 else mass

    def ball_mass_profile(self, x):
        x = self._scalar_x(x)
        radii = np.unique(np.concatenate(([0.0], np.abs(self._edges - x))))
        masses = self.ball_mass(x, radii)
        pieces = []
        for k in range(len(radii) - 1):
            lo, hi = radii[k], radii[k + 1]
            slope = (masses[k + 1] - masses[k]) / (hi - lo)
            if abs(masses[k + 1] - masses[k]) <= 1e-15 * max(masses[k + 1], 1e-300):
                slope = 0.0
            offset = 0.0 if lo == 0.0 else masses[k] - slope * lo
            pieces.append(ProfilePiece(lo=lo, hi=hi, offset=float(offset), coef=float(slope), power=1.0))
        return BallMassProfile(util.frozen([x]), util.frozen(radii), tuple(pieces), self.total_mass)

    def reweighted(self, factors):
        return GridDensity1D(self._interval, self._densities * np.asarray(factors, dtype=float))

    def scaled(self, c):
        source = None if self._source is None else [float(c) * v for v in self._source]
        return GridDensity1D(self._interval, self._densities * float(c), source=source)

    def resampled(self, cells):
        """the same density on `cells` uniform cells

        Polynomial densities are re-sampled at the new midpoints; plain piecewise constant data
        can only be refined by an integer factor.
        """
        if self._source is not None:
            return GridDensity1D.from_polynomial(self._source, self._interval, cells)
        if cells % self.cells:
            raise exceptions.MeasureException(
                "piecewise constant density with {:d} cells cannot be resampled to {:d}".format(self.cells, cells))
        return GridDensity1D(self._interval, np.repeat(self._densities, cells // self.cells))

    def to_dict(self):
        data = OrderedDict((
            ("variant", self.variant),
            ("dimension", 1),
            ("interval", list(self._interval)),
            ("densities", self._densities.tolist()),
        ))
        if self._source is not None:
            data["polynomial"] = list(self._source)
        return data

    @classmethod
    def from_dict(cls, data):
        if "polynomial" in data and "densities" not in data:
            return cls.from_polynomial(data["polynomial"], data["interval"], int(data["cells"]))
        return cls(data["interval"], data["densities"], source=data.get("polynomial"))


register_measure_variants(AtomicMeasure, SmearedAtomicMeasure, GridDensity1D)


def measure_from_dict(data):
    """build a measure from its JSON document {"variant": ..., ...}"""
    try:
        cls = measure_variants[data["variant"]]
    except KeyError:
        raise exceptions.MeasureException("unknown measure variant {:}".format(data.get("variant")))
    try:
        return cls.from_dict(data)
    except (KeyError, TypeError, ValueError) as err:
        if isinstance(err, exceptions.MeasureException):
            raise
        raise exceptions.MeasureException("malformed {:s} measure: {:}".format(cls.variant, err))


def ball_mass(m, x, r):
    """m(B(x, r)) for the closed ball; r = 0 gives the mass of the point x"""
    if np.any(np.asarray(r) < 0):
        raise exceptions.ParameterException("radius must be >= 0")
    return m.ball_mass(x, r)


def ball_mass_profile(m, x):
    return m.ball_mass_profile(x)


def _sigma_weights(nodes):
    if isinstance(nodes, EvaluationSet):
        return nodes.weights
    if isinstance(nodes, Measure):
        return nodes.node_weights
    return np.asarray(nodes, dtype=float)


def integrate(f, nodes):
    """sum_i f(x_i) w_i over the sigma-nodes; +inf at a node of positive weight gives +inf

    Parameters
    ----------
    f : array_like
        values on the sigma-nodes
    nodes : EvaluationSet or Measure or array_like
        the quadrature weights, or something that carries them

    Returns
    -------
    float

    """
    weights = _sigma_weights(nodes)
    f = np.asarray(f, dtype=float).reshape(-1)
    if f.shape != weights.shape:
        raise exceptions.NodeMismatch(
            "{:d} values given for {:d} sigma-nodes".format(f.shape[0], weights.shape[0]))
    active = weights > 0
    if np.any(np.isposinf(f[active])):
        return math.inf
    return float(np.dot(f[active], weights[active]))


def lp_norm(f, s, nodes):
    """(sum_i |f(x_i)|^s w_i)^{1/s}; +inf whenever a node of positive weight carries +inf"""
    if not s >= 1:
        raise exceptions.ParameterException("Lebesgue exponent must be >= 1, got {:}".format(s))
    weights = _sigma_weights(nodes)
    f = np.abs(np.asarray(f, dtype=float).reshape(-1))
    if f.shape != weights.shape:
        raise exceptions.NodeMismatch(
            "{:d} values given for {:d} sigma-nodes".format(f.shape[0], weights.shape[0]))
    active = weights > 0
    if np.any(np.isinf(f[active])):
        return math.inf
    total = float(np.dot(f[active] ** s, weights[active]))
    return total ** (1.0 / s)
