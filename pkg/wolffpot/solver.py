"""the monotone iteration u_{j+1} = P(u_j^q dsigma) + P mu on the quadrature nodes of sigma

Started from u_0 = P mu the iterates increase node-wise to the minimal positive solution of
u = P(u^q dsigma) + P mu.  Every run is audited: node-wise monotonicity, the a-priori bound on the
L^{1+q}(dsigma) norms, and the residual of the limit.  Probes compare the limit with limits from
other seeds (minimality, uniqueness) and with the lower bound c (P sigma)^e.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import exceptions, util
from .backends import make_backend
from .measures import lp_norm
from .structures import IterationHistory, ProbeTable

logger = logging.getLogger(__name__)

SEED_MODES = ("potential", "zero", "custom")


@dataclass(frozen=True)
class IterationConfig:
    """
    Attributes
    ----------
    tol : float
        relative sup-norm tolerance, stop when sup|u_{j+1} - u_j| <= tol (1 + sup|u_j|)
    max_iter : int
    seed_mode : str
        "potential" (u_0 = P mu), "zero" or "custom"
    seed_values : tuple
        node values of the custom seed
    """

    tol: float = 1e-10
    max_iter: int = 10000
    seed_mode: str = "potential"
    seed_values: tuple = None

    def __post_init__(self):
        if not self.tol > 0:
            raise exceptions.ParameterException("tol must be > 0")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise exceptions.ParameterException("max_iter must be an integer >= 1")
        if self.seed_mode not in SEED_MODES:
            raise exceptions.ParameterException(
                "seed_mode must be one of {:}, got {:}".format(SEED_MODES, self.seed_mode))
        if self.seed_mode == "custom" and self.seed_values is None:
            raise exceptions.ParameterException("a custom seed needs seed_values")
        if self.seed_values is not None:
            object.__setattr__(self, "seed_values", tuple(float(v) for v in np.ravel(self.seed_values)))

    @classmethod
    def custom(cls, values, tol=1e-10, max_iter=10000):
        return cls(tol=tol, max_iter=max_iter, seed_mode="custom", seed_values=tuple(np.ravel(values)))

    def to_dict(self):
        return {"tol": self.tol, "max_iter": self.max_iter, "seed_mode": self.seed_mode}


@dataclass
class SolveReport:
    """the trace of one run of the iteration

    Attributes
    ----------
    u : np.ndarray
        the last iterate on the sigma-nodes
    nodes : np.ndarray
        the sigma-nodes
    iterations : int
        number of applications of the map
    norms : list of float
        || u_j ||_{L^{1+q}(dsigma)} for j = 0, ..., iterations
    changes : list of float
        sup |u_{j+1} - u_j|
    monotonicity_violations : int
        node/iteration pairs against the audit direction by more than tol (1 + sup|u_j|)
    audit_direction : str
        "up", "down" or "none"
    residual : float
        sup |u - T(u) - P mu| of the returned u
    converged : bool
    apriori_bound : float
        c*^{(p-1)/(p-1-q)} + (p-1)/(p-1-q) || P mu ||_{L^{1+q}(dsigma)}, with c* the largest
        observed ratio || T(u_j) || / (int u_j^{1+q} dsigma)^{q/((1+q)(p-1))}
    apriori_bound_ok : bool
    """

    mode: str
    u: np.ndarray
    nodes: np.ndarray
    potential_mu: np.ndarray
    iterations: int
    norms: list
    changes: list
    residuals: list
    monotonicity_violations: int
    audit_direction: str
    residual: float
    converged: bool
    c_star: float
    apriori_bound: float
    apriori_bound_ok: bool
    tol: float
    seed_mode: str
    sigma: object = field(default=None, repr=False)
    mu: object = field(default=None, repr=False)
    backend: object = field(default=None, repr=False)

    @property
    def sup_norm(self):
        return float(np.max(np.abs(self.u))) if len(self.u) else 0.0

    @property
    def norm(self):
        return self.norms[-1]

    def evaluate(self, points):
        """the solution at arbitrary points through u = P(u^q dsigma) + P mu"""
        points = util.as_points(points, self.sigma.dimension)
        factors = np.power(self.u, self.backend.prm.q)
        values = self.backend.potential(self.mu, points)
        if np.any(factors * self.sigma.node_weights > 0):
            values = values + self.backend.potential(self.sigma.reweighted(factors), points)
        return values

    def history(self):
        """
        Returns
        -------
        IterationHistory

        """
        rows = []
        for j, norm in enumerate(self.norms):
            rows.append({
                "iteration": j,
                "norm": norm,
                "sup_change": self.changes[j - 1] if j > 0 else math.nan,
                "residual": self.residuals[j] if j < len(self.residuals) else math.nan,
            })
        return IterationHistory.from_rows(rows, name="iteration history", mode=self.mode,
                                          converged=self.converged)

    def to_dict(self):
        return {
            "mode": self.mode,
            "converged": self.converged,
            "iterations": self.iterations,
            "residual": self.residual,
            "tol": self.tol,
            "seed_mode": self.seed_mode,
            "sup_norm": self.sup_norm,
            "norm": self.norm,
            "norms": self.norms,
            "monotonicity_violations": self.monotonicity_violations,
            "audit_direction": self.audit_direction,
            "c_star": self.c_star,
            "apriori_bound": self.apriori_bound,
            "apriori_bound_ok": self.apriori_bound_ok,
            "nodes": self.nodes,
            "u": self.u,
        }


def _seed(cfg, potential_mu):
    if cfg.seed_mode == "potential":
        return potential_mu.copy()
    if cfg.seed_mode == "zero":
        return np.zeros_like(potential_mu)
    values = np.asarray(cfg.seed_values, dtype=float)
    if values.size == 1:
        values = np.full(potential_mu.shape, float(values[0]))
    if values.shape != potential_mu.shape:
        raise exceptions.NodeMismatch(
            "custom seed has {:d} values for {:d} sigma-nodes".format(values.size, potential_mu.size))
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise exceptions.ParameterException("custom seed values must be finite and nonnegative")
    return values


def picard_solve(sigma, mu, prm, backend="wolff", cfg=None, kernel=None):
    """iterate u_{j+1} = T(u_j) + P mu, T(u) = P(u^q dsigma), on the sigma-nodes

    Parameters
    ----------
    sigma : Measure
    mu : Measure
    prm : Params
    backend : str or Backend or Kernel
    cfg : IterationConfig
    kernel : Kernel, optional
        for backend "kernel"

    Returns
    -------
    SolveReport

    Raises
    ------
    InfiniteSeed
        when P mu or T(u_0) is infinite at a sigma-node
    NotConverged
        after cfg.max_iter iterations, the partial report is attached

    """
    cfg = cfg or IterationConfig()
    backend = make_backend(backend, prm, kernel)
    nodes = sigma.evaluation_set()
    points = nodes.points
    q, p = prm.q, backend.effective_p
    norm_exp = q / ((1 + q) * (p - 1))

    potential_mu = backend.potential(mu, points)
    if not np.all(np.isfinite(potential_mu)):
        raise exceptions.InfiniteSeed("P mu is infinite at {:d} sigma-nodes".format(int(np.sum(~np.isfinite(potential_mu)))))
    mu_norm = lp_norm(potential_mu, 1 + q, nodes)
    apply = backend.operator(sigma, points)

    u = _seed(cfg, potential_mu)
    t = apply(u)
    if not np.all(np.isfinite(t)):
        raise exceptions.InfiniteSeed("P(u_0^q dsigma) is infinite at some sigma-node")

    norms = [lp_norm(u, 1 + q, nodes)]
    changes, residuals = [], []
    c_star = 0.0
    violations = 0
    direction = "up" if cfg.seed_mode in ("potential", "zero") else None
    converged = False

    for j in range(cfg.max_iter):
        mass = norms[-1] ** (1 + q)
        if mass > 0:
            c_star = max(c_star, lp_norm(t, 1 + q, nodes) / mass ** norm_exp)
        u_next = t + potential_mu
        step = u_next - u
        scale = 1 + float(np.max(np.abs(u)))
        change = float(np.max(np.abs(step)))
        if direction is None:
            if np.all(step >= -cfg.tol * scale):
                direction = "up"
            elif np.all(step <= cfg.tol * scale):
                direction = "down"
            else:
                direction = "none"
        if direction == "up":
            violations += int(np.sum(step < -cfg.tol * scale))
        elif direction == "down":
            violations += int(np.sum(step > cfg.tol * scale))

        residuals.append(change)
        changes.append(change)
        u = u_next
        norms.append(lp_norm(u, 1 + q, nodes))
        t = apply(u)
        logger.debug("iteration {:d}: norm={:.12g}, change={:.3e}".format(j + 1, norms[-1], change))
        if change <= cfg.tol * scale:
            converged = True
            break

    residual = float(np.max(np.abs(u - t - potential_mu)))
    residuals.append(residual)
    exponent = (p - 1) / (p - 1 - q)
    bound = c_star ** exponent + exponent * mu_norm
    bound_ok = all(norm <= bound * (1 + 1e-9) for norm in norms) if cfg.seed_mode != "custom" else \
        all(norm <= bound * (1 + 1e-9) for norm in norms[1:])

    report = SolveReport(
        mode=backend.mode, u=u, nodes=points, potential_mu=potential_mu, iterations=len(changes),
        norms=norms, changes=changes, residuals=residuals, monotonicity_violations=violations,
        audit_direction=direction, residual=residual, converged=converged, c_star=c_star,
        apriori_bound=bound, apriori_bound_ok=bound_ok, tol=cfg.tol, seed_mode=cfg.seed_mode,
        sigma=sigma, mu=mu, backend=backend,
    )
    if not converged:
        raise exceptions.NotConverged(
            "no convergence after {:d} iterations, last change {:.3e}".format(cfg.max_iter, changes[-1]), report)
    logger.info("{:s} iteration converged in {:d} steps, norm={:.12g}, residual={:.3e}".format(
        backend.mode, report.iterations, report.norm, residual))
    if violations:
        logger.warning("{:d} monotonicity violations".format(violations))
    if not bound_ok:
        logger.warning("iterate norms exceed the a-priori bound {:.6g}".format(bound))
    return report


def _require_converged(report):
    if not report.converged:
        raise exceptions.SolverException("the diagnostic needs a converged report")


def lower_bound_ratio(report, sigma, prm, backend=None):
    """min over sigma-nodes of u / (P sigma)^e with e = (p-1)/(p-1-q), nodes with P sigma = 0 skipped"""
    _require_converged(report)
    backend = make_backend(backend or report.backend, prm)
    reference = backend.potential(sigma, report.nodes) ** backend.lower_exponent
    usable = (reference > 0) & np.isfinite(reference)
    if not np.any(usable):
        return math.nan
    return float(np.min(report.u[usable] / reference[usable]))


def sandwich_ratios(report, sigma, prm, backend=None):
    """observed ranges of u / P mu and u / (P sigma)^e over the sigma-nodes, logged and returned"""
    _require_converged(report)
    backend = make_backend(backend or report.backend, prm)
    ratios = {}
    for key, reference in (("mu", report.potential_mu),
                           ("sigma", backend.potential(sigma, report.nodes) ** backend.lower_exponent)):
        usable = (reference > 0) & np.isfinite(reference)
        r = report.u[usable] / reference[usable]
        ratios[key] = (float(np.min(r)), float(np.max(r))) if len(r) else (math.nan, math.nan)
    logger.info("sandwich ratios: u/P mu in [{:.6g}, {:.6g}], u/(P sigma)^e in [{:.6g}, {:.6g}]".format(
        *(ratios["mu"] + ratios["sigma"])))
    return ratios


@dataclass
class ProbeReport:
    """limits reached from alternative seeds, compared with the potential-seed limit"""

    kind: str
    rows: list
    max_distance: float
    holds: bool
    all_converged: bool

    def table(self):
        return ProbeTable.from_rows(self.rows, name="{:s} probe".format(self.kind), holds=self.holds)

    def to_dict(self):
        return {"kind": self.kind, "rows": self.rows, "max_distance": self.max_distance,
                "holds": self.holds, "all_converged": self.all_converged}


def _run_seed(sigma, mu, prm, backend, values, cfg):
    seed_cfg = IterationConfig.custom(values, tol=cfg.tol, max_iter=cfg.max_iter)
    try:
        return picard_solve(sigma, mu, prm, backend, seed_cfg)
    except exceptions.NotConverged as err:
        return err.report


def minimality_probe(sigma, mu, prm, backend="wolff", alt_seeds=None, cfg=None, kernel=None):
    """iterate from seeds above the potential seed and check that the potential-seed limit lies below every limit

    Parameters
    ----------
    alt_seeds : dict, optional
        label -> node values; defaults to 10 times the potential seed and a large constant

    Returns
    -------
    ProbeReport
        `holds` when u_potential <= u_alt + tol (1 + sup u_alt) node-wise for every converged seed

    """
    cfg = cfg or IterationConfig()
    backend = make_backend(backend, prm, kernel)
    base = picard_solve(sigma, mu, prm, backend, IterationConfig(tol=cfg.tol, max_iter=cfg.max_iter))
    if alt_seeds is None:
        alt_seeds = {
            "10x potential seed": 10 * base.potential_mu,
            "large constant": np.full(base.u.shape, 10 * max(base.apriori_bound, base.sup_norm, 1.0)),
        }
    rows = []
    holds = all_converged = True
    max_distance = 0.0
    for label, values in alt_seeds.items():
        alt = _run_seed(sigma, mu, prm, backend, values, cfg)
        distance = float(np.max(np.abs(alt.u - base.u)))
        minimal = bool(np.all(base.u <= alt.u + cfg.tol * (1 + alt.sup_norm)))
        if alt.converged:
            holds = holds and minimal
            max_distance = max(max_distance, distance)
        else:
            all_converged = False
            logger.warning("minimality seed '{:s}' did not converge".format(label))
        rows.append({"seed": label, "converged": alt.converged, "iterations": alt.iterations,
                     "sup_distance": distance, "minimal": minimal})
    logger.info("minimality probe: holds={:}, max distance {:.3e}".format(holds, max_distance))
    return ProbeReport("minimality", rows, max_distance, holds, all_converged)


def uniqueness_probe(sigma, mu, prm, backend="wolff", n_seeds=6, seed=0, cfg=None, kernel=None):
    """iterate from randomized positive seeds below and above the potential-seed limit

    Seeds alternate between u * U(0, 1) and u * (1 + U(0, 10)).  Non-convergent seeds are
    reported, not fatal.

    Returns
    -------
    ProbeReport
        `max_distance` is the largest pairwise sup-distance between converged limits, the
        potential-seed limit included; `holds` when it is at most 10 tol (1 + sup u)

    """
    cfg = cfg or IterationConfig()
    backend = make_backend(backend, prm, kernel)
    base = picard_solve(sigma, mu, prm, backend, IterationConfig(tol=cfg.tol, max_iter=cfg.max_iter))
    rng = np.random.default_rng(seed)
    limits = [base.u]
    rows = []
    all_converged = True
    for k in range(n_seeds):
        if k % 2 == 0:
            label, values = "below {:d}".format(k), base.u * rng.uniform(0.0, 1.0, base.u.shape)
        else:
            label, values = "above {:d}".format(k), base.u * (1 + rng.uniform(0.0, 10.0, base.u.shape))
        alt = _run_seed(sigma, mu, prm, backend, values, cfg)
        if alt.converged:
            limits.append(alt.u)
        else:
            all_converged = False
            logger.warning("uniqueness seed '{:s}' did not converge".format(label))
        rows.append({"seed": label, "converged": alt.converged, "iterations": alt.iterations,
                     "sup_distance": float(np.max(np.abs(alt.u - base.u)))})
    max_distance = max(float(np.max(np.abs(a - b))) for a in limits for b in limits)
    holds = max_distance <= 10 * cfg.tol * (1 + base.sup_norm)
    logger.info("uniqueness probe: {:d} limits, max pairwise distance {:.3e}".format(len(limits), max_distance))
    return ProbeReport("uniqueness", rows, max_distance, holds, all_converged)
