"""report frames and the registry `loaders.load_dftxt` rebuilds them from"""
import warnings
from collections import OrderedDict

from .structureddataframe import StructuredDataFrame
from .reports import IterationHistory, MeshStudy, ProbeTable, RefinementTrend

structures = OrderedDict()


def register_data_structures(*sub_classes):
    """make StructuredDataFrame sub-classes known by their class name, re-registering a name warns"""
    for cls in sub_classes:
        if cls.__name__ in structures:
            warnings.warn("overwriting {:s} df_class".format(cls.__name__))
        structures[cls.__name__] = cls


def structure_for(name):
    """the registered class written under `name` in a report header"""
    try:
        return structures[name]
    except KeyError:
        raise KeyError("no report structure registered as {:}".format(name))


register_data_structures(StructuredDataFrame, IterationHistory, RefinementTrend, ProbeTable, MeshStudy)
