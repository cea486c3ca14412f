"""kernel documents {"variant": ..., ...}, a bare {"points": ..., "matrix": ...} is a finite matrix"""
from wolffpot import exceptions
from wolffpot.kernels import Kernel, kernel_from_dict, kernel_variants
from wolffpot.loaders import Loader, read_json, register_loaders


def load_kernel_json(fname):
    doc = read_json(fname)
    if not isinstance(doc, dict):
        raise exceptions.IncorrectFileType("not a kernel document")
    if doc.get("variant") not in kernel_variants and not ("variant" not in doc and "matrix" in doc):
        raise exceptions.IncorrectFileType("not a kernel document")
    try:
        return kernel_from_dict(doc)
    except exceptions.ParameterException as err:
        raise exceptions.LoaderException("malformed kernel in {:s}: {:}".format(str(fname), err))


kernel_loader = Loader(load_kernel_json, Kernel, [".json"], "Kernel json")
register_loaders(kernel_loader)
