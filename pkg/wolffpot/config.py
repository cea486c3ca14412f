"""experiment configuration, a versioned json document

    {"schema": 1,
     "params": {"n": 1, "p": 2.0, "q": 0.5, "alpha": 0.25},
     "backend": {"mode": "kernel", "kernel": {"variant": "interval_green"}},
     "sigma": {... measure document, or {"file": "sigma.json"}},
     "mu": {...},
     "iteration": {"tol": 1e-10, "max_iter": 10000, "seed_mode": "potential"},
     "probes": [[0.5]],
     "options": {"check": {...}, "solve": {...}, "kernel_test": {...}, "verify": {...}},
     "seed": 0}

Relative file references resolve against the directory of the configuration file.
"""
from dataclasses import dataclass, field, replace

import numpy as np

from . import exceptions, loaders, util
from .backends import MODES
from .kernels import Kernel, kernel_from_dict
from .measures import Measure, Params, measure_from_dict
from .solver import IterationConfig

SCHEMA_VERSION = 1


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    params: Params
    mode: str
    sigma: Measure
    mu: Measure
    kernel: Kernel = None
    iteration: IterationConfig = field(default_factory=IterationConfig)
    probes: np.ndarray = None
    options: dict = field(default_factory=dict)
    seed: int = 0
    schema: int = SCHEMA_VERSION

    def __post_init__(self):
        if self.mode not in MODES:
            raise exceptions.ConfigException("backend mode must be one of {:}, got {:}".format(MODES, self.mode))
        if self.mode == "kernel" and self.kernel is None:
            raise exceptions.ConfigException("backend mode 'kernel' needs a kernel")
        if self.sigma.dimension != self.mu.dimension:
            raise exceptions.ConfigException("sigma and mu live in different dimensions")

    def option(self, command, key, default=None):
        return self.options.get(command, {}).get(key, default)

    def with_seed(self, seed):
        return replace(self, seed=int(seed))

    @classmethod
    def from_dict(cls, data, base_dir=None):
        """
        build and validate a configuration

        Parameters
        ----------
        data : dict
            the parsed json document
        base_dir : str, optional
            directory against which relative file references are resolved

        Returns
        -------
        ExperimentConfig

        Raises
        ------
        ConfigException
            for unknown schema versions, missing files and any invalid value

        """
        schema = data.get("schema")
        if schema != SCHEMA_VERSION:
            raise exceptions.ConfigException("unsupported config schema {:}, expected {:d}".format(schema, SCHEMA_VERSION))
        try:
            params = Params.from_dict(data["params"])
            backend = data.get("backend", {"mode": "wolff"})
            kernel = None
            if "kernel" in backend:
                kernel = _load_part(backend["kernel"], base_dir, kernel_from_dict, Kernel)
            sigma = _load_part(data["sigma"], base_dir, measure_from_dict, Measure)
            mu = _load_part(data["mu"], base_dir, measure_from_dict, Measure)
            iteration = IterationConfig(**data.get("iteration", {}))
            probes = data.get("probes")
            if probes is not None:
                probes = util.as_points(probes, sigma.dimension)
            return cls(params=params, mode=backend.get("mode", "wolff"), sigma=sigma, mu=mu, kernel=kernel,
                       iteration=iteration, probes=probes, options=data.get("options", {}),
                       seed=int(data.get("seed", 0)), schema=schema)
        except exceptions.ConfigException:
            raise
        except KeyError as missing:
            raise exceptions.ConfigException("config is missing {:}".format(missing))
        except (exceptions.WolffpotException, TypeError, ValueError) as err:
            raise exceptions.ConfigException("invalid config: {:}".format(err))


def _load_part(spec, base_dir, from_dict, cls):
    if isinstance(spec, dict) and set(spec) == {"file"}:
        path = loaders.resolve(spec["file"], base_dir)
        try:
            return loaders.load_file(path, cls=cls)
        except exceptions.LoaderException as err:
            raise exceptions.ConfigException("cannot load {:s}: {:}".format(str(path), err))
    return from_dict(spec)
