"""the three potential backends shared by the criteria and the solver

wolff
    P nu = W_{alpha,p} nu, the nonlinear Wolff potential
riesz
    P nu = I_{2 alpha} nu, the integral form of the fractional Laplacian equation (p = 2)
kernel
    P nu = G nu for a `Kernel` (p = 2)

The two linear backends require q < 1.  Besides the potential itself every backend knows the
Lebesgue exponent of its sigma-criterion and the exponent of its lower bound.
"""
import numpy as np

from . import exceptions, util
from .kernels import Kernel
from .measures import AtomicMeasure, GridDensity1D, Params
from .potentials import PotentialKind, riesz

MODES = ("wolff", "riesz", "kernel")


class Backend(object):
    """base class, sub-classes implement `potential`"""

    mode = None
    linear = False

    def __init__(self, prm):
        if not isinstance(prm, Params):
            raise exceptions.ParameterException("backend needs a Params instance")
        self.prm = prm
        if self.linear and not prm.q < 1:
            raise exceptions.ParameterException(
                "the {:s} backend is linear (p = 2) and needs q < 1, got q = {:}".format(self.mode, prm.q))

    @property
    def effective_p(self):
        return 2.0 if self.linear else self.prm.p

    @property
    def sigma_exponent(self):
        """Lebesgue exponent of the sigma-criterion"""
        p, q = self.effective_p, self.prm.q
        return (1 + q) * (p - 1) / (p - 1 - q)

    @property
    def lower_exponent(self):
        """u >= c (P sigma)^lower_exponent"""
        p, q = self.effective_p, self.prm.q
        return (p - 1) / (p - 1 - q)

    @property
    def homogeneity(self):
        """P(c nu) = c^homogeneity P nu"""
        return 1.0 / (self.effective_p - 1)

    def potential(self, measure, points):
        raise NotImplementedError

    def response_matrix(self, sigma, points):
        """A_ij = P(sigma restricted to node j)(x_i), so that P(f dsigma) = A f for linear backends"""
        points = util.as_points(points, sigma.dimension)
        weights = sigma.node_weights
        columns = []
        for j in range(len(weights)):
            if weights[j] == 0:
                columns.append(np.zeros(len(points)))
                continue
            unit = np.zeros(len(weights))
            unit[j] = 1.0
            columns.append(self.potential(sigma.reweighted(unit), points))
        return np.column_stack(columns)

    def operator(self, sigma, points):
        """the map u -> P(u^q dsigma) on node values, evaluated at `points`"""
        q = self.prm.q
        if self.linear:
            a = self.response_matrix(sigma, points)

            def apply(u):
                return _finite_matmul(a, np.power(u, q))
            return apply

        def apply(u):
            factors = np.power(u, q)
            if not np.any(factors * sigma.node_weights > 0):
                return np.zeros(len(points))
            return self.potential(sigma.reweighted(factors), points)
        return apply

    def describe(self):
        return {"mode": self.mode}

    def __repr__(self):
        return "{:s}({:})".format(type(self).__name__, self.prm)


def _finite_matmul(a, v):
    """a @ v where infinite entries meet only positive entries of v"""
    active = v > 0
    sub = a[:, active]
    out = np.where(np.isinf(sub), 0.0, sub) @ v[active]
    out[np.any(np.isinf(sub), axis=1)] = np.inf
    return out


def _weighted_columns(g, weights):
    """g_ij w_j, with columns of zero weight set to 0 even where g is infinite"""
    with np.errstate(invalid="ignore"):
        return np.where(weights[None, :] > 0, g * weights[None, :], 0.0)


class WolffBackend(Backend):
    mode = "wolff"

    def potential(self, measure, points):
        return PotentialKind.wolff(self.prm.alpha, self.prm.p).values(measure, points)


class RieszBackend(Backend):
    """I_{2 alpha} with the dropped normalization constant"""

    mode = "riesz"
    linear = True

    def __init__(self, prm):
        super(RieszBackend, self).__init__(prm)
        if not 2 * prm.alpha < prm.n:
            raise exceptions.ParameterException("the riesz backend needs 2 alpha < n")

    def potential(self, measure, points):
        points = util.as_points(points, measure.dimension)
        return np.array([riesz(measure, 2 * self.prm.alpha, self.prm.n, x) for x in points])

    def response_matrix(self, sigma, points):
        if isinstance(sigma, AtomicMeasure):
            points = util.as_points(points, sigma.dimension)
            dist = np.linalg.norm(points[:, None, :] - sigma.points[None, :, :], axis=2)
            with np.errstate(divide="ignore"):
                return _weighted_columns(dist ** (2 * self.prm.alpha - self.prm.n), sigma.weights)
        return super(RieszBackend, self).response_matrix(sigma, points)


class KernelBackend(Backend):
    mode = "kernel"
    linear = True

    def __init__(self, prm, kernel):
        super(KernelBackend, self).__init__(prm)
        if not isinstance(kernel, Kernel):
            raise exceptions.ParameterException("the kernel backend needs a Kernel")
        self.kernel = kernel

    def potential(self, measure, points):
        return self.kernel.potential(measure, points)

    def response_matrix(self, sigma, points):
        # node quadrature is exact for atoms and is the midpoint rule for grid densities
        if isinstance(sigma, (AtomicMeasure, GridDensity1D)):
            points = self.kernel.check_domain(points)
            return _weighted_columns(self.kernel.matrix(points, sigma.node_points), sigma.node_weights)
        return super(KernelBackend, self).response_matrix(sigma, points)

    def describe(self):
        return {"mode": self.mode, "kernel": self.kernel.to_dict()}

    def __repr__(self):
        return "KernelBackend({:}, {:})".format(self.prm, self.kernel)


def make_backend(mode, prm, kernel=None):
    """
    build a backend from its mode name

    Parameters
    ----------
    mode : str or Backend or Kernel
        "wolff", "riesz" or "kernel"; a Backend is returned unchanged, a Kernel implies "kernel"
    prm : Params
    kernel : Kernel
        required for mode "kernel"

    Returns
    -------
    Backend

    """
    if isinstance(mode, Backend):
        return mode
    if isinstance(mode, Kernel):
        return KernelBackend(prm, mode)
    if mode == "wolff":
        return WolffBackend(prm)
    if mode == "riesz":
        return RieszBackend(prm)
    if mode == "kernel":
        if kernel is None:
            raise exceptions.ParameterException("kernel mode needs a kernel")
        return KernelBackend(prm, kernel)
    raise exceptions.ParameterException("unknown backend mode {:}, expected one of {:}".format(mode, MODES))
