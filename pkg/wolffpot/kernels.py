"""positive kernels G(x, y), their potentials G nu and sampled estimates of the kernel axioms

Kernels
-------
FiniteMatrix
    G given as a positive matrix on finitely many points, the exact backend for integral equations
IntervalGreen
    min(x, y) (1 - max(x, y)), the Green function of -d^2/dx^2 on (0, 1)
Newtonian
    |x - y|^(2 - n) on R^n, n >= 3
UnitBallGreen
    the Green function of the Laplacian on the unit ball of R^3 (image charge formula)
RieszKernel
    |x - y|^(alpha - n) on R^n

The axioms (quasi-symmetry, the weak maximum principle and the quasimetric triangle inequality)
are universally quantified statements; the checks here return maxima over finite samples, i.e.
lower bounds of the true constants.
"""
import logging
import math
import warnings
from collections import OrderedDict
from dataclasses import dataclass, fields

import numpy as np

from . import exceptions, util
from .measures import AtomicMeasure, Measure, SmearedAtomicMeasure
from .potentials import riesz

logger = logging.getLogger(__name__)

kernel_variants = OrderedDict()


def register_kernel_variants(*sub_classes):
    """
    register Kernel sub-classes so that `kernel_from_dict` can find them by variant name

    Parameters
    ----------
    sub_classes
        Kernel sub-classes as arguments

    """
    for cls in sub_classes:
        if cls.variant in kernel_variants.keys():
            warnings.warn("overwriting {:s} kernel variant".format(cls.variant))
        kernel_variants[cls.variant] = cls


class Kernel(object):
    """base class of the kernels, sub-classes implement `matrix` and `in_domain`"""

    variant = None
    label = "Kernel"

    dimension = None

    def matrix(self, xs, ys):
        """G(x_i, y_j) as an array of shape (len(xs), len(ys))"""
        raise NotImplementedError

    def in_domain(self, points):
        return np.ones(len(points), dtype=bool)

    def check_domain(self, points):
        points = util.as_points(points, self.dimension)
        if not np.all(self.in_domain(points)):
            raise exceptions.DomainException("points outside the domain of the {:s} kernel".format(self.label))
        return points

    def __call__(self, x, y):
        return float(self.matrix(util.as_points(x, self.dimension), util.as_points(y, self.dimension))[0, 0])

    def potential(self, nu, points):
        """G nu at every row of `points`

        Measures are integrated on their quadrature nodes (exact for atomic measures, midpoint rule
        for grid densities); sub-classes override this where a closed form for diffuse data exists.
        """
        points = self.check_domain(points)
        if not isinstance(nu, Measure):
            raise exceptions.ParameterException("{:s} potentials need a Measure".format(self.label))
        nodes = self.check_domain(nu.node_points)
        weights = nu.node_weights
        charged = weights > 0
        g = self.matrix(points, nodes[charged])
        return _weighted_rows(g, weights[charged])

    def sample_points(self, count, rng):
        raise NotImplementedError

    def sample_trial(self, rng):
        """a random measure for the weak maximum principle check"""
        raise NotImplementedError

    def to_dict(self):
        return OrderedDict((("variant", self.variant),))

    @classmethod
    def from_dict(cls, data):
        return cls()

    def __repr__(self):
        return "{:s}()".format(type(self).__name__)


def _weighted_rows(g, weights):
    """g @ weights where an infinite entry times a positive weight gives +inf"""
    g = np.asarray(g, dtype=float)
    inf_rows = np.any(np.isinf(g), axis=1)
    out = np.where(np.isinf(g), 0.0, g) @ weights
    out[inf_rows] = math.inf
    return out


def _pairwise_distances(xs, ys):
    return np.linalg.norm(xs[:, None, :] - ys[None, :, :], axis=2)


class FiniteMatrix(Kernel):
    """a positive matrix G_ij on the points x_1, ..., x_N

    Symmetry is not enforced: a non-symmetric matrix is a valid kernel whose quasi-symmetry
    constant exceeds 1.  Measures on a FiniteMatrix are measures whose nodes are among its points,
    or plain weight vectors of length N.
    """

    variant = "finite_matrix"
    label = "Finite matrix"

    def __init__(self, matrix, points=None):
        g = np.array(matrix, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise exceptions.ParameterException("kernel matrix must be square")
        if not np.all(np.isfinite(g)) or np.any(g <= 0):
            raise exceptions.ParameterException("kernel matrix entries must be finite and positive")
        g.setflags(write=False)
        self._g = g
        if points is None:
            points = np.arange(len(g), dtype=float).reshape(-1, 1)
        self._points = util.frozen(util.as_points(points))
        if len(self._points) != len(g):
            raise exceptions.ParameterException("kernel matrix and point list differ in size")
        self.dimension = self._points.shape[1]

    @property
    def size(self):
        return len(self._g)

    @property
    def points(self):
        return self._points

    @property
    def entries(self):
        return self._g

    def index_of(self, points):
        """row index of every point, DomainException for points that are not kernel points"""
        points = util.as_points(points, self.dimension)
        dist = _pairwise_distances(points, self._points)
        idx = np.argmin(dist, axis=1)
        if np.any(dist[np.arange(len(points)), idx] > 1e-12):
            raise exceptions.DomainException("point is not one of the finite kernel's points")
        return idx

    def in_domain(self, points):
        dist = _pairwise_distances(points, self._points)
        return np.min(dist, axis=1) <= 1e-12

    def matrix(self, xs, ys):
        return self._g[np.ix_(self.index_of(xs), self.index_of(ys))]

    def weight_vector(self, nu):
        """the weights of `nu` on the kernel points"""
        if isinstance(nu, Measure):
            weights = np.zeros(self.size)
            np.add.at(weights, self.index_of(nu.node_points), nu.node_weights)
            return weights
        weights = np.asarray(nu, dtype=float)
        if weights.shape != (self.size,):
            raise exceptions.NodeMismatch("weight vector must have length {:d}".format(self.size))
        return weights

    def potential(self, nu, points):
        return self._g[self.index_of(points)] @ self.weight_vector(nu)

    def potential_at_indices(self, nu, indices):
        return self._g[np.asarray(indices, dtype=int)] @ self.weight_vector(nu)

    def sample_points(self, count, rng):
        return self._points

    def sample_trial(self, rng):
        support = rng.random(self.size) < 0.5
        if not np.any(support):
            support[rng.integers(self.size)] = True
        return np.where(support, rng.uniform(0.1, 1.0, self.size), 0.0)

    def to_dict(self):
        return OrderedDict((
            ("variant", self.variant),
            ("points", self._points.tolist()),
            ("matrix", self._g.tolist()),
        ))

    @classmethod
    def from_dict(cls, data):
        return cls(data["matrix"], data.get("points"))

    @classmethod
    def random(cls, size, rng, dimension=1):
        """a random symmetric positive matrix on random points, diagonal bounded away from zero"""
        a = rng.uniform(0.05, 1.0, (size, size))
        g = 0.5 * (a + a.T) + np.diag(rng.uniform(0.5, 1.5, size))
        return cls(g, rng.uniform(-1.0, 1.0, (size, dimension)))

    def __repr__(self):
        return "FiniteMatrix(size={:d})".format(self.size)


class IntervalGreen(Kernel):
    """G(x, y) = min(x, y) (1 - max(x, y)) on [0, 1]"""

    variant = "interval_green"
    label = "Interval Green"
    dimension = 1

    def in_domain(self, points):
        x = points[:, 0]
        return (x >= 0) & (x <= 1)

    def matrix(self, xs, ys):
        x = xs[:, 0][:, None]
        y = ys[:, 0][None, :]
        return np.minimum(x, y) * (1 - np.maximum(x, y))

    def sample_points(self, count, rng):
        return rng.uniform(0.0, 1.0, (count, 1))

    def sample_trial(self, rng):
        atoms = rng.integers(1, 5)
        return AtomicMeasure(rng.uniform(0.02, 0.98, (atoms, 1)), rng.uniform(0.1, 1.0, atoms))


def _uniform_ball_potential(dist, weights, rho, n):
    """Newtonian potential at distance `dist` from the centres of uniform balls of radius rho"""
    inside = weights * (n * rho ** 2 - (n - 2) * dist ** 2) / (2 * rho ** n)
    with np.errstate(divide="ignore"):
        outside = weights * dist ** (2 - n)
    return np.where(dist < rho, inside, outside).sum(axis=1)


class Newtonian(Kernel):
    """G(x, y) = |x - y|^(2 - n) on R^n, n >= 3

    Smeared atoms have the closed-form potential of a uniform ball; other diffuse measures are
    integrated as Riesz potentials of order 2.
    """

    variant = "newtonian"
    label = "Newtonian"

    def __init__(self, n=3):
        if int(n) != n or n < 3:
            raise exceptions.ParameterException("the Newtonian kernel needs n >= 3")
        self.dimension = int(n)

    def matrix(self, xs, ys):
        with np.errstate(divide="ignore"):
            return _pairwise_distances(xs, ys) ** (2.0 - self.dimension)

    def potential(self, nu, points):
        if isinstance(nu, SmearedAtomicMeasure):
            points = self.check_domain(points)
            dist = _pairwise_distances(points, nu.centers)
            return _uniform_ball_potential(dist, nu.weights[None, :], nu.smear_radius, self.dimension)
        if isinstance(nu, Measure) and not isinstance(nu, AtomicMeasure):
            points = self.check_domain(points)
            return np.array([riesz(nu, 2.0, self.dimension, x) for x in points])
        return super(Newtonian, self).potential(nu, points)

    def sample_points(self, count, rng):
        return rng.uniform(-2.0, 2.0, (count, self.dimension))

    def sample_trial(self, rng):
        atoms = rng.integers(1, 4)
        return SmearedAtomicMeasure(rng.uniform(-1.0, 1.0, (atoms, self.dimension)),
                                    rng.uniform(0.1, 1.0, atoms), rng.uniform(0.05, 0.2))

    def to_dict(self):
        return OrderedDict((("variant", self.variant), ("n", self.dimension)))

    @classmethod
    def from_dict(cls, data):
        return cls(data.get("n", 3))

    def __repr__(self):
        return "Newtonian(n={:d})".format(self.dimension)


class UnitBallGreen(Kernel):
    """G(x, y) = |x - y|^-1 - (|x|^2 |y|^2 - 2 x.y + 1)^(-1/2), the Green function of the unit ball in R^3

    The subtracted term is harmonic in each variable inside the ball, so the potential of a
    uniform ball B(c, rho) inside the unit ball is the Newtonian one minus the mass times that
    term evaluated at c.
    """

    variant = "unit_ball_green"
    label = "Unit ball Green"
    dimension = 3

    def in_domain(self, points):
        return np.linalg.norm(points, axis=1) <= 1 + 1e-14

    @staticmethod
    def _image_term(xs, ys):
        dot = xs @ ys.T
        sq = np.sum(xs ** 2, axis=1)[:, None] * np.sum(ys ** 2, axis=1)[None, :]
        return 1.0 / np.sqrt(np.maximum(sq - 2 * dot + 1, 0.0))

    def matrix(self, xs, ys):
        with np.errstate(divide="ignore", invalid="ignore"):
            direct = 1.0 / _pairwise_distances(xs, ys)
            return np.maximum(direct - self._image_term(xs, ys), 0.0)

    def potential(self, nu, points):
        if isinstance(nu, SmearedAtomicMeasure):
            points = self.check_domain(points)
            if np.any(np.linalg.norm(nu.centers, axis=1) + nu.smear_radius > 1):
                raise exceptions.DomainException("smeared atoms must lie inside the unit ball")
            dist = _pairwise_distances(points, nu.centers)
            newton = _uniform_ball_potential(dist, nu.weights[None, :], nu.smear_radius, 3)
            return newton - self._image_term(points, nu.centers) @ nu.weights
        return super(UnitBallGreen, self).potential(nu, points)

    def sample_points(self, count, rng):
        direction = rng.normal(size=(count, 3))
        direction /= np.linalg.norm(direction, axis=1)[:, None]
        return direction * (0.95 * rng.random(count) ** (1.0 / 3))[:, None]

    def sample_trial(self, rng):
        atoms = rng.integers(1, 4)
        rho = rng.uniform(0.03, 0.1)
        centers = self.sample_points(atoms, rng) * (1 - rho - 0.05) / 0.95
        return SmearedAtomicMeasure(centers, rng.uniform(0.1, 1.0, atoms), rho)


class RieszKernel(Kernel):
    """G(x, y) = |x - y|^(alpha - n) on R^n, 0 < alpha < n"""

    variant = "riesz"
    label = "Riesz"

    def __init__(self, n=3, alpha=1.0):
        if int(n) != n or n < 1:
            raise exceptions.ParameterException("dimension must be an integer >= 1")
        if not 0 < alpha < n:
            raise exceptions.ParameterException("Riesz order must satisfy 0 < alpha < n")
        self.dimension = int(n)
        self.alpha = float(alpha)

    def matrix(self, xs, ys):
        with np.errstate(divide="ignore"):
            return _pairwise_distances(xs, ys) ** (self.alpha - self.dimension)

    def potential(self, nu, points):
        if isinstance(nu, Measure) and not isinstance(nu, AtomicMeasure):
            points = self.check_domain(points)
            return np.array([riesz(nu, self.alpha, self.dimension, x) for x in points])
        return super(RieszKernel, self).potential(nu, points)

    def sample_points(self, count, rng):
        return rng.uniform(-2.0, 2.0, (count, self.dimension))

    def sample_trial(self, rng):
        atoms = rng.integers(1, 4)
        return SmearedAtomicMeasure(rng.uniform(-1.0, 1.0, (atoms, self.dimension)),
                                    rng.uniform(0.1, 1.0, atoms), rng.uniform(0.05, 0.2))

    def to_dict(self):
        return OrderedDict((("variant", self.variant), ("n", self.dimension), ("alpha", self.alpha)))

    @classmethod
    def from_dict(cls, data):
        return cls(data.get("n", 3), data.get("alpha", 1.0))

    def __repr__(self):
        return "RieszKernel(n={:d}, alpha={:g})".format(self.dimension, self.alpha)


register_kernel_variants(FiniteMatrix, IntervalGreen, Newtonian, UnitBallGreen, RieszKernel)


def kernel_from_dict(data):
    """build a kernel from its JSON document; a bare {"points", "matrix"} document is a FiniteMatrix"""
    variant = data.get("variant", FiniteMatrix.variant if "matrix" in data else None)
    try:
        cls = kernel_variants[variant]
    except KeyError:
        raise exceptions.ParameterException("unknown kernel variant {:}".format(variant))
    try:
        return cls.from_dict(data)
    except (KeyError, TypeError) as err:
        raise exceptions.ParameterException("malformed {:s} kernel: {:}".format(variant, err))


def g_potential(k, nu, x):
    """G nu(x) = int G(x, y) dnu(y)

    Parameters
    ----------
    k : Kernel
    nu : Measure or array_like
        a measure, or a weight vector on the points of a FiniteMatrix
    x : array_like or int
        a point, or a row index for a FiniteMatrix

    Returns
    -------
    float

    """
    if isinstance(k, FiniteMatrix) and np.ndim(x) == 0 and not isinstance(x, float):
        return float(k.potential_at_indices(nu, [x])[0])
    return float(k.potential(nu, util.as_points(x, k.dimension))[0])


@dataclass(frozen=True)
class KernelDiagnostics:
    """sampled estimates of the kernel constants, each check fills in its own fields

    Attributes
    ----------
    quasi_symmetry_a : float
        max of G(x, y) / G(y, x) over the sampled pairs
    wmp_h_estimate : float
        max over trials of sup_{probes} G nu / sup_{supp nu} G nu
    quasimetric_kappa_estimate : float
        max of d(x, y) / (d(x, z) + d(z, y)) over the sampled triples, d = 1 / G
    """

    quasi_symmetry_a: float = None
    pairs: int = None
    wmp_h_estimate: float = None
    trials: int = None
    discarded_trials: int = None
    probes: int = None
    quasimetric_kappa_estimate: float = None
    triples: int = None
    skipped_triples: int = None

    def merge(self, *others):
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        for other in others:
            for f in fields(other):
                if getattr(other, f.name) is not None:
                    values[f.name] = getattr(other, f.name)
        return KernelDiagnostics(**values)

    def to_dict(self):
        return OrderedDict((f.name, getattr(self, f.name)) for f in fields(self))


def check_quasi_symmetry(k, sample):
    """max over sampled pairs of max(G(x,y)/G(y,x), G(y,x)/G(x,y)); pairs with x = y are skipped

    Parameters
    ----------
    k : Kernel
    sample : array_like
        shape (P, 2, n) point pairs, or (P, 2) index pairs for a FiniteMatrix
    """
    sample = np.asarray(sample)
    if isinstance(k, FiniteMatrix) and sample.ndim == 2:
        i, j = sample[:, 0].astype(int), sample[:, 1].astype(int)
        forward, backward = k.entries[i, j], k.entries[j, i]
    else:
        sample = np.asarray(sample, dtype=float).reshape(len(sample), 2, -1)
        distinct = np.any(sample[:, 0, :] != sample[:, 1, :], axis=1)
        xs, ys = k.check_domain(sample[distinct, 0, :]), k.check_domain(sample[distinct, 1, :])
        forward = np.array([k(x, y) for x, y in zip(xs, ys)])
        backward = np.array([k(y, x) for x, y in zip(xs, ys)])
    usable = np.isfinite(forward) & np.isfinite(backward) & (forward > 0) & (backward > 0)
    ratio = forward[usable] / backward[usable]
    a = float(max(1.0, np.max(ratio, initial=1.0), np.max(1.0 / ratio, initial=1.0)))
    return KernelDiagnostics(quasi_symmetry_a=a, pairs=int(np.sum(usable)))


def _support_values(k, trial):
    if isinstance(k, FiniteMatrix):
        support = np.flatnonzero(np.asarray(trial) > 0)
        return k.potential_at_indices(trial, support)
    nodes = trial.node_points[trial.node_weights > 0]
    return k.potential(trial, nodes)


def _admissible_probes(k, trial, probes, margin):
    if isinstance(k, FiniteMatrix):
        return np.asarray(probes, dtype=int)
    probes = k.check_domain(probes)
    if isinstance(trial, SmearedAtomicMeasure):
        dist = _pairwise_distances(probes, trial.centers)
        return probes[np.min(dist, axis=1) >= margin * trial.smear_radius]
    return probes


def check_wmp(k, trials, domain_sample, probe_margin=2.0):
    """estimate h in the weak maximum principle sup_Omega G nu <= h sup_{supp nu} G nu

    Parameters
    ----------
    k : Kernel
    trials : sequence
        measures (weight vectors for a FiniteMatrix) with support inside the domain
    domain_sample : array_like
        probe points (row indices for a FiniteMatrix)
    probe_margin : float
        for smeared trials, probes closer than `probe_margin` smear radii to a centre are dropped;
        the support supremum is taken at the centres

    Returns
    -------
    KernelDiagnostics
        the h-estimate, the number of trials used, the number discarded because G nu is infinite
        on the support, and the total number of probe evaluations

    """
    h = 0.0
    used = discarded = probes_used = 0
    for trial in trials:
        support_sup = float(np.max(_support_values(k, trial)))
        if not math.isfinite(support_sup) or support_sup <= 0:
            discarded += 1
            continue
        probes = _admissible_probes(k, trial, domain_sample, probe_margin)
        if len(probes) == 0:
            discarded += 1
            continue
        if isinstance(k, FiniteMatrix):
            values = k.potential_at_indices(trial, probes)
        else:
            values = k.potential(trial, probes)
        h = max(h, float(np.max(values)) / support_sup)
        used += 1
        probes_used += len(probes)
    if discarded:
        logger.warning("{:d} WMP trials discarded (unbounded potential on the support or no probes)".format(discarded))
    return KernelDiagnostics(wmp_h_estimate=h if used else math.nan, trials=used, discarded_trials=discarded,
                             probes=probes_used)


def check_quasimetric(k, triples):
    """max over triples (x, y, z) of d(x,y) / (d(x,z) + d(z,y)) with d = 1 / G

    Triples with coincident points are skipped, as are triples where d(x, y) is infinite
    (points on the boundary of a domain kernel).
    """
    triples = np.asarray(triples)
    if isinstance(k, FiniteMatrix) and triples.ndim == 2:
        idx = triples.astype(int)
        pts = k.points[idx.reshape(-1)].reshape(len(idx), 3, k.dimension)
    else:
        pts = np.asarray(triples, dtype=float).reshape(len(triples), 3, -1)
    kappa = 0.0
    used = skipped = 0
    for x, y, z in pts:
        if np.array_equal(x, y) or np.array_equal(x, z) or np.array_equal(y, z):
            skipped += 1
            continue
        g = k.matrix(np.vstack((x, x, z)), np.vstack((y, z, y))).diagonal()
        if np.any(g <= 0) or not np.all(np.isfinite(g)):
            skipped += 1
            continue
        d_xy, d_xz, d_zy = 1.0 / g
        kappa = max(kappa, d_xy / (d_xz + d_zy))
        used += 1
    if skipped:
        logger.warning("{:d} degenerate triples skipped in the quasimetric estimate".format(skipped))
    return KernelDiagnostics(quasimetric_kappa_estimate=kappa if used else math.nan, triples=used,
                             skipped_triples=skipped)


def sample_pairs(k, count, rng):
    if isinstance(k, FiniteMatrix):
        return np.array([(i, j) for i in range(k.size) for j in range(k.size) if i != j], dtype=int)
    return np.stack((k.sample_points(count, rng), k.sample_points(count, rng)), axis=1)


def sample_triples(k, count, rng, collinear_fraction=0.5):
    """random triples, a fraction of them with z on the segment [x, y] close to its midpoint"""
    if isinstance(k, FiniteMatrix):
        return rng.integers(0, k.size, (count, 3))
    x = k.sample_points(count, rng)
    y = k.sample_points(count, rng)
    z = k.sample_points(count, rng)
    collinear = rng.random(count) < collinear_fraction
    t = rng.uniform(0.4, 0.6, count)[:, None]
    z = np.where(collinear[:, None], x + t * (y - x), z)
    return np.stack((x, y, z), axis=1)


def diagnose(k, pairs=200, trials=200, probes=200, triples=500, seed=0):
    """run all three axiom checks on seeded random samples

    Returns
    -------
    KernelDiagnostics

    """
    rng = np.random.default_rng(seed)
    symmetry = check_quasi_symmetry(k, sample_pairs(k, pairs, rng))
    trial_list = [k.sample_trial(rng) for _ in range(trials)]
    if isinstance(k, FiniteMatrix):
        domain = np.arange(k.size)
    else:
        domain = k.sample_points(probes, rng)
    wmp = check_wmp(k, trial_list, domain)
    metric = check_quasimetric(k, sample_triples(k, triples, rng))
    result = symmetry.merge(wmp, metric)
    logger.info("{:} diagnostics: a={:}, h={:}, kappa={:}".format(
        k, result.quasi_symmetry_a, result.wmp_h_estimate, result.quasimetric_kappa_estimate))
    return result
