from . import structures, loaders, plugins
from .structures import StructuredDataFrame
from .loaders import load_file
from .measures import (
    AtomicMeasure, SmearedAtomicMeasure, GridDensity1D, Params, ball_mass, ball_mass_profile, integrate, lp_norm,
)
from .potentials import wolff, truncated_wolff, riesz, energy, iterated_riesz_bound
from .kernels import FiniteMatrix, IntervalGreen, Newtonian, UnitBallGreen, RieszKernel, g_potential
from .criteria import check_sigma, check_mu_energy, check_cross, implication_audit
from .solver import IterationConfig, picard_solve

__version__ = '0.1.0'

plugins.import_loaders()
