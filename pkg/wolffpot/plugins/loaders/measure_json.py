"""measure documents {"variant": "atomic" | "smeared" | "grid1d", ...}"""
from wolffpot import exceptions
from wolffpot.loaders import Loader, read_json, register_loaders
from wolffpot.measures import Measure, measure_from_dict, measure_variants


def load_measure_json(fname):
    doc = read_json(fname)
    if not isinstance(doc, dict) or doc.get("variant") not in measure_variants:
        raise exceptions.IncorrectFileType("not a measure document")
    try:
        return measure_from_dict(doc)
    except exceptions.MeasureException as err:
        raise exceptions.LoaderException("malformed measure in {:s}: {:}".format(str(fname), err))


measure_loader = Loader(load_measure_json, Measure, [".json"], "Measure json")
register_loaders(measure_loader)
