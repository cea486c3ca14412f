"""plugins: document loaders in `plugins.loaders`, ready-made problems in `plugins.examples`"""
import importlib
import logging
import os
import pkgutil

logger = logging.getLogger(__name__)

LOADERS_PKG = __package__ + ".loaders"
loaders_dir = os.path.join(os.path.dirname(__file__), "loaders")


def import_loaders():
    """import every module of `plugins.loaders`, each registers its `Loader` objects on import

    Returns
    -------
    list of str
        the imported module names

    """
    importlib.import_module(LOADERS_PKG)
    imported = []
    for _, module_name, is_pkg in pkgutil.iter_modules([loaders_dir]):
        if is_pkg:
            continue
        importlib.import_module("." + module_name, LOADERS_PKG)
        imported.append(module_name)
    logger.debug("loader plugins: {:}".format(", ".join(imported)))
    return imported
