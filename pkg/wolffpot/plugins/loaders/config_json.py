"""experiment configurations, recognized by their "schema" field"""
import os

from wolffpot import exceptions
from wolffpot.config import ExperimentConfig
from wolffpot.loaders import Loader, read_json, register_loaders


def load_config_json(fname):
    doc = read_json(fname)
    if not isinstance(doc, dict) or "schema" not in doc:
        raise exceptions.IncorrectFileType("not an experiment configuration")
    return ExperimentConfig.from_dict(doc, base_dir=os.path.dirname(os.path.abspath(str(fname))))


config_loader = Loader(load_config_json, ExperimentConfig, [".json"], "Experiment configuration json")
register_loaders(config_loader)
