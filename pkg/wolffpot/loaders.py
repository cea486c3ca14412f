"""
file loading by extension

Every loadable document type (measures, kernels, experiment configurations, report frames) is
represented by a `Loader` registered under its file extensions.  `load_file` tries the loaders of
an extension in registration order; a loader that does not recognize the content raises
`IncorrectFileType` and the next one gets its turn.  A recognized but malformed document raises a
different `LoaderException` and stops the search.
"""
import json
import logging
import os
import warnings
from collections import OrderedDict
from pathlib import Path

from . import exceptions, structures
from .structures.structureddataframe import StructuredDataFrame, split_report

logger = logging.getLogger(__name__)

loaders = OrderedDict()  # extension -> [Loader, ...]


class Loader(object):
    """connect a loading function to the extensions it reads and the class it returns

    Attributes
    ----------
    cls : type
        what the function returns: a `StructuredDataFrame` sub-class, `Measure`, `Kernel` or
        `ExperimentConfig`
    extensions : list of str
    label : str
        human readable name, used in log messages

    """

    def __init__(self, loader_function, cls, extensions, label):
        self._load = loader_function
        self.cls = cls
        self.extensions = [extensions] if isinstance(extensions, str) else list(extensions)
        self.label = label

    @property
    def module(self):
        return self._load.__module__ + "." + self._load.__name__

    def accepts(self, cls):
        return cls is None or issubclass(self.cls, cls)

    def load(self, filename):
        return self._load(filename)

    def __str__(self):
        return "{:s}: {:s}".format(self.label, ", ".join(self.extensions))


def register_loaders(*loader_objects):
    for loader in loader_objects:
        for ext in loader.extensions:
            registered = loaders.setdefault(ext, [])
            if any(other.module == loader.module for other in registered):
                warnings.warn("overwriting Loader {:s} for file extension {:s}".format(loader.label, ext))
                registered[:] = [other for other in registered if other.module != loader.module]
            registered.append(loader)


def read_json(fname):
    """parse a json document, anything else raises `IncorrectFileType`"""
    try:
        with open(str(fname), "r") as fid:
            return json.load(fid)
    except (json.JSONDecodeError, UnicodeDecodeError) as err:
        raise exceptions.IncorrectFileType("{:s} is not a json document: {:}".format(str(fname), err))


def load_dftxt(fname):
    """read a report frame written by `StructuredDataFrame.savetxt`

    Parameters
    ----------
    fname : str or Path

    Returns
    -------
    StructuredDataFrame
        an instance of the class named in the header, with its metadata

    """
    with open(str(fname), "r") as fid:
        header, csv_block = split_report(fid.read())

    try:
        cls = structures.structure_for(header.pop("class"))
    except KeyError as err:
        raise exceptions.LoaderException("{:s}: {:}".format(str(fname), err))
    try:
        return cls.from_csv_block(csv_block, header)
    except exceptions.StructureException as err:
        raise exceptions.LoaderException("{:s}: {:}".format(str(fname), err))


register_loaders(Loader(load_dftxt, StructuredDataFrame, (".df", ".csv"), "StructuredDataFrame text file"))


def load_file(fname, cls=None):
    """load any registered document type, the loader is picked from the extension and the content

    Parameters
    ----------
    fname : str or Path
    cls : type, optional
        only try loaders returning this class or a sub-class of it

    Returns
    -------
    object

    """
    fname = str(fname)
    if not os.path.isfile(fname):
        raise exceptions.LoaderNotFound("file {:s} does not exist".format(fname))

    ext = os.path.splitext(fname)[1]
    for loader in loaders.get(ext, []):
        if not loader.accepts(cls):
            continue
        try:
            obj = loader.load(fname)
        except exceptions.IncorrectFileType as err:
            logger.debug("{:s} rejected {:s}: {:}".format(loader.label, os.path.basename(fname), err))
            continue
        logger.info("loaded {:s} with {:s}".format(os.path.basename(fname), loader.label))
        return obj

    raise exceptions.LoaderNotFound("no loader found for {:s}".format(os.path.basename(fname)))


def resolve(path, base_dir=None):
    """`path` relative to `base_dir`, absolute paths pass through"""
    path = Path(path)
    if base_dir is not None and not path.is_absolute():
        path = Path(base_dir) / path
    return path
