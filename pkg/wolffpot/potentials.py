"""Wolff, truncated Wolff and Riesz potentials driven by ball-mass profiles

All radial potentials reduce to the one integral

    int_0^R  S(r)^power * r^(-decay - 1) dr,       S(r) = sigma(B(x, r)),

which `radial_integral` evaluates piece by piece on a `BallMassProfile`: in closed form on
constant and pure power pieces and on the tail beyond the last breakpoint, and with adaptive
Gauss-Kronrod quadrature (`scipy.integrate.quad`) on the remaining smooth pieces.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as sp_integrate
from scipy import special

from . import exceptions, util
from .measures import AtomicMeasure, integrate

QUAD_RTOL = 1e-10
QUAD_LIMIT = 200


def _power_piece(coef, exponent, power, decay, lo, hi):
    """int_lo^hi (coef r^exponent)^power r^(-decay-1) dr"""
    gamma = exponent * power - decay
    scale = coef ** power
    if gamma == 0:
        return math.inf if lo == 0 else scale * math.log(hi / lo)
    if lo == 0 and gamma < 0:
        return math.inf
    if math.isinf(hi):
        return math.inf if gamma > 0 else -scale * lo ** gamma / gamma
    return scale * (hi ** gamma - lo ** gamma) / gamma


def _constant_piece(value, power, decay, lo, hi):
    """int_lo^hi value^power r^(-decay-1) dr for decay > 0"""
    if value == 0:
        return 0.0
    if lo == 0:
        return math.inf
    upper = 0.0 if math.isinf(hi) else hi ** -decay
    return value ** power * (lo ** -decay - upper) / decay


def radial_integral(profile, power, decay, upper=math.inf):
    """int_0^upper S(r)^power r^(-decay-1) dr for the ball-mass profile S

    Parameters
    ----------
    profile : BallMassProfile
    power : float
        > 0, the exponent 1/(p - 1) for Wolff potentials, 1 for Riesz potentials
    decay : float
        > 0
    upper : float
        upper limit of integration, inf for the full potential

    Returns
    -------
    float
        nonnegative, inf when the profile has a point mass at its base point or a piece is not
        integrable at 0

    """
    if not decay > 0:
        raise exceptions.ParameterException("decay exponent must be positive, got {:}".format(decay))
    if not upper > 0:
        raise exceptions.ParameterException("upper radius must be positive, got {:}".format(upper))
    if profile.point_mass > 0:
        return math.inf

    total = 0.0
    for piece in profile.pieces:
        lo, hi = piece.lo, min(piece.hi, upper)
        if lo >= hi:
            break
        if piece.closed_form and piece.coef == 0:
            val = _constant_piece(piece.offset, power, decay, lo, hi)
        elif piece.closed_form and piece.offset == 0:
            val = _power_piece(piece.coef, piece.power, power, decay, lo, hi)
        else:
            def integrand(r, piece=piece):
                return max(piece.value(r), 0.0) ** power * r ** (-decay - 1)
            val, err = sp_integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=QUAD_RTOL, limit=QUAD_LIMIT)
        total += val
        if math.isinf(total):
            return math.inf

    last = profile.breakpoints[-1]
    if upper > last:
        total += _constant_piece(profile.total_mass, power, decay, last, upper)
    return total


@dataclass(frozen=True)
class PotentialKind:
    """one of the three radial potentials, Wolff(alpha, p), TruncatedWolff(alpha, p, R), Riesz(alpha)"""

    name: str
    alpha: float
    p: float = 2.0
    radius: float = math.inf

    def __post_init__(self):
        if self.name not in ("wolff", "truncated_wolff", "riesz"):
            raise exceptions.ParameterException("unknown potential kind {:}".format(self.name))
        if not self.alpha > 0:
            raise exceptions.ParameterException("alpha must be > 0")
        if self.name != "riesz" and not self.p > 1:
            raise exceptions.ParameterException("p must be > 1")
        if self.name == "truncated_wolff" and not self.radius > 0:
            raise exceptions.ParameterException("truncation radius must be > 0")

    @classmethod
    def wolff(cls, alpha, p):
        return cls("wolff", alpha, p)

    @classmethod
    def truncated_wolff(cls, alpha, p, radius):
        return cls("truncated_wolff", alpha, p, radius)

    @classmethod
    def riesz(cls, alpha):
        return cls("riesz", alpha)

    def __call__(self, sigma, x):
        n = sigma.dimension
        if self.name == "riesz":
            return riesz(sigma, self.alpha, n, x)
        upper = self.radius if self.name == "truncated_wolff" else math.inf
        return _wolff(sigma, n, self.alpha, self.p, x, upper)

    def values(self, sigma, points):
        """the potential at every row of `points`"""
        points = util.as_points(points, sigma.dimension)
        return np.array([self(sigma, x) for x in points])


def _wolff(sigma, n, alpha, p, x, upper):
    if alpha * p >= n:
        return math.inf
    beta = (n - alpha * p) / (p - 1)
    return radial_integral(sigma.ball_mass_profile(x), 1.0 / (p - 1), beta, upper)


def wolff(sigma, prm, x):
    """the Wolff potential W_{alpha,p} sigma(x) = int_0^inf [sigma(B(x,r)) / r^(n - alpha p)]^(1/(p-1)) dr/r

    Returns +inf when alpha p >= n and whenever sigma charges the point x.
    """
    return _wolff(sigma, prm.n, prm.alpha, prm.p, x, math.inf)


def truncated_wolff(sigma, prm, radius, x):
    """W^R_{alpha,p} sigma(x), the Wolff integral cut off at r = R"""
    if not radius > 0:
        raise exceptions.ParameterException("truncation radius must be > 0, got {:}".format(radius))
    return _wolff(sigma, prm.n, prm.alpha, prm.p, x, radius)


def riesz(sigma, alpha, n, x, method="auto"):
    """the Riesz potential I_alpha sigma(x) = int |x - y|^(alpha - n) dsigma(y)

    The normalization constant is dropped; the radial form carries the factor (n - alpha) so that
    it coincides with the kernel form.

    Parameters
    ----------
    sigma : Measure
    alpha : float
        0 < alpha < n
    n : int
        dimension, must agree with `sigma`
    x : array_like
    method : str
        "direct" sums the kernel over atoms (AtomicMeasure only), "profile" integrates the
        ball-mass profile, "auto" picks direct where available

    """
    if not 0 < alpha < n:
        raise exceptions.ParameterException("Riesz order must satisfy 0 < alpha < n, got {:}".format(alpha))
    if n != sigma.dimension:
        raise exceptions.ParameterException(
            "dimension {:d} does not match the measure dimension {:d}".format(n, sigma.dimension))
    if method == "auto":
        method = "direct" if isinstance(sigma, AtomicMeasure) else "profile"
    if method == "direct":
        if not isinstance(sigma, AtomicMeasure):
            raise exceptions.ParameterException("direct summation needs an atomic measure")
        dist = sigma.distances(x)
        charged = sigma.weights > 0
        if np.any(dist[charged] == 0):
            return math.inf
        return float(np.sum(sigma.weights[charged] * dist[charged] ** (alpha - n)))
    if method == "profile":
        return (n - alpha) * radial_integral(sigma.ball_mass_profile(x), 1.0, n - alpha)
    raise exceptions.ParameterException("unknown Riesz method {:}".format(method))


@dataclass(frozen=True)
class Energy:
    """the Wolff energy int W sigma dsigma and, for p = 2, the quadratic energy int I_{2 alpha} sigma dsigma"""

    wolff: float
    riesz: float = None
    riesz_factor: float = None

    @property
    def identity_gap(self):
        """relative gap in (n - 2 alpha) int W_{alpha,2} = int I_{2 alpha}, None unless both are finite"""
        if self.riesz is None or not (math.isfinite(self.wolff) and math.isfinite(self.riesz)):
            return None
        scale = max(abs(self.riesz), 1e-300)
        return abs(self.riesz_factor * self.wolff - self.riesz) / scale

    def to_dict(self):
        return {"wolff": self.wolff, "riesz": self.riesz, "identity_gap": self.identity_gap}


def energy(sigma, prm):
    """the node-quadrature energies of sigma

    Potentials are evaluated at the quadrature nodes of sigma and integrated against its weights.

    Returns
    -------
    Energy

    """
    nodes = sigma.evaluation_set()
    if not prm.wolff_finite:
        return Energy(math.inf, math.inf if prm.p == 2 else None, prm.n - 2 * prm.alpha)
    kind = PotentialKind.wolff(prm.alpha, prm.p)
    wolff_energy = integrate(kind.values(sigma, nodes.sigma_points), nodes)
    if prm.p != 2:
        return Energy(wolff_energy)
    riesz_values = np.array([riesz(sigma, 2 * prm.alpha, prm.n, x) for x in nodes.sigma_points])
    riesz_energy = integrate(riesz_values, nodes)
    return Energy(wolff_energy, riesz_energy, prm.n - 2 * prm.alpha)


def riesz_composition_constant(n, a, b):
    """C with int |x - y|^(a - n) |y|^(b - n) dy = C |x|^(a + b - n), for a, b > 0 and a + b < n"""
    if not (a > 0 and b > 0 and a + b < n):
        raise exceptions.ParameterException("composition needs a, b > 0 and a + b < n")
    g = special.gamma
    return (math.pi ** (n / 2.0) * g(a / 2.0) * g(b / 2.0) * g((n - a - b) / 2.0)
            / (g((n - a) / 2.0) * g((n - b) / 2.0) * g((a + b) / 2.0)))


def sphere_rule(n, order):
    """product quadrature on the unit sphere S^(n-1)

    Gauss-Gegenbauer nodes in the polar cosine, recursively down to a trapezoid rule in the last
    angle.  Weights sum to the surface area 2 pi^(n/2) / Gamma(n/2).

    Returns
    -------
    directions : np.ndarray
        shape (K, n), unit vectors
    weights : np.ndarray
        shape (K,)

    """
    if n < 2:
        raise exceptions.ParameterException("sphere rule needs n >= 2")
    if n == 2:
        phi = 2 * math.pi * np.arange(2 * order) / (2 * order)
        return np.column_stack((np.cos(phi), np.sin(phi))), np.full(2 * order, math.pi / order)
    t, wt = special.roots_gegenbauer(order, (n - 2) / 2.0)
    sub_dirs, sub_w = sphere_rule(n - 1, order)
    sin_t = np.sqrt(1 - t ** 2)
    directions = np.concatenate(
        [np.column_stack((np.full(len(sub_w), ti), si * sub_dirs)) for ti, si in zip(t, sin_t)])
    weights = np.concatenate([wi * sub_w for wi in wt])
    return directions, weights


def _householder(axis):
    """symmetric orthogonal matrix mapping e_1 to the unit vector `axis`"""
    n = len(axis)
    e1 = np.zeros(n)
    e1[0] = 1.0
    v = e1 - axis
    norm2 = float(v @ v)
    if norm2 < 1e-28:
        return np.eye(n)
    return np.eye(n) - 2.0 * np.outer(v, v) / norm2


def iterated_riesz_bound(mu, prm, x, radial_order=12, angular_order=16, grading=5, tail_order=24):
    """I_1((I_1 mu)^(1/(p-1)))(x) for an atomic mu

    With s = 1/(p-1) the integrand is split into the singular parts w_i^s |y - a_i|^(-(n-1)s),
    whose potentials are known in closed form through the Riesz composition formula, and a mild
    remainder integrated on a spherical product grid centred at x: Gauss-Legendre panels in r,
    geometrically graded towards every atom distance, a Gauss-Jacobi rule for the tail after
    r = 1/t, and `sphere_rule` directions whose pole points to the nearest atom.  The grid scales
    with the atom distances, so the result is exactly homogeneous under dilation.

    Returns +inf when x is an atom, when p >= n (no decay at infinity), or when
    p <= 2 - 1/n (the integrand is not locally integrable at the atoms).
    """
    if not isinstance(mu, AtomicMeasure):
        raise exceptions.MeasureException("iterated_riesz_bound needs an atomic measure")
    n, p = prm.n, prm.p
    if n < 2 or p >= n or p <= 2 - 1.0 / n:
        return math.inf
    s = 1.0 / (p - 1)
    gamma = (n - 1) * s
    keep = mu.weights > 0
    atoms, weights = mu.points[keep], mu.weights[keep]
    x = util.as_points(x, n)[0]
    dist = np.linalg.norm(atoms - x, axis=1)
    if np.any(dist == 0):
        return math.inf

    singular = riesz_composition_constant(n, 1.0, n - gamma) * float(np.sum(weights ** s * dist ** (1 - gamma)))
    if abs(s - 1.0) < 1e-15:
        return singular

    def remainder(points):
        d = np.linalg.norm(points[:, None, :] - atoms[None, :, :], axis=2)
        return (d ** (1 - n) @ weights) ** s - d ** (-gamma) @ weights ** s

    directions, dir_weights = sphere_rule(n, angular_order)
    directions = directions @ _householder((atoms[np.argmin(dist)] - x) / dist.min())

    def shell(r):
        return float(dir_weights @ remainder(x + r * directions))

    r_tail = 2.0 * dist.max()
    marks = [0.0, r_tail]
    for d in np.unique(dist):
        marks.append(d)
        for k in range(1, grading + 1):
            marks.extend((d * (1 - 2.0 ** -k), d * (1 + 2.0 ** -k)))
    marks = np.unique(np.clip(marks, 0.0, r_tail))

    nodes, node_w = special.roots_legendre(radial_order)
    body = 0.0
    for lo, hi in zip(marks[:-1], marks[1:]):
        half = 0.5 * (hi - lo)
        for t, w in zip(lo + half * (nodes + 1), half * node_w):
            body += w * shell(t)

    # r = r_tail / t on (0, 1], remainder ~ r^(-gamma) as r -> inf
    u, v = special.roots_jacobi(tail_order, 0.0, gamma - 2.0)
    t = 0.5 * (1 + u)
    tail = 2.0 ** (1 - gamma) * sum(vk * r_tail * shell(r_tail / tk) * tk ** -gamma for vk, tk in zip(v, t))
    return singular + body + tail


def comparison_constant(mu, prm, points, **quadrature):
    """max over `points` of W_{1,p} mu / I_1((I_1 mu)^(1/(p-1))), points where either side is
    infinite or the bound vanishes are skipped"""
    prm1 = prm.with_(alpha=1.0)
    ratios = []
    for x in util.as_points(points, prm.n):
        w = wolff(mu, prm1, x)
        bound = iterated_riesz_bound(mu, prm1, x, **quadrature)
        if math.isfinite(w) and math.isfinite(bound) and bound > 0:
            ratios.append(w / bound)
    if not ratios:
        return math.nan
    return max(ratios)
