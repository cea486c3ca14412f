"""tabular reports written next to the json reports, one row per iteration / mesh / probe seed"""
from collections import OrderedDict

from .structureddataframe import StructuredDataFrame


class IterationHistory(StructuredDataFrame):
    """
    StructuredDataFrame for the monotone iteration, one row per iterate u_j

    `norm` is the L^{1+q}(dsigma) norm of u_j, `sup_change` is sup |u_j - u_{j-1}| (empty for the
    seed) and `residual` is sup |u_j - T(u_j) - P mu|, which is the change to the next iterate.
    """

    label = "Iteration history"

    _required_metadata = StructuredDataFrame._required_metadata.copy()
    _required_columns = OrderedDict((
        ("iteration", int),
        ("norm", float),
        ("sup_change", float),
        ("residual", float),
    ))


class RefinementTrend(StructuredDataFrame):
    """
    StructuredDataFrame for the criteria of grid data evaluated on successively refined grids
    """

    label = "Refinement trend"

    _required_metadata = StructuredDataFrame._required_metadata.copy()
    _required_columns = OrderedDict((
        ("cells", int),
        ("sigma_norm", float),
        ("mu_energy", float),
        ("cross_norm", float),
    ))


class ProbeTable(StructuredDataFrame):
    """
    StructuredDataFrame for the minimality and uniqueness probes, one row per alternative seed
    """

    label = "Probe table"

    _required_metadata = StructuredDataFrame._required_metadata.copy()
    _required_columns = OrderedDict((
        ("seed", str),
        ("converged", bool),
        ("iterations", int),
        ("sup_distance", float),
    ))


class MeshStudy(StructuredDataFrame):
    """
    StructuredDataFrame for the interval verification over a sequence of cell counts
    """

    label = "Mesh study"

    _required_metadata = StructuredDataFrame._required_metadata.copy()
    _required_columns = OrderedDict((
        ("cells", int),
        ("h", float),
        ("ode_residual_sup", float),
        ("residual_ratio", float),
        ("energy_lhs", float),
        ("energy_rhs", float),
        ("relative_gap", float),
    ))
