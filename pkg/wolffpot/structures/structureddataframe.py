from collections import OrderedDict
import io
import json
import os

import pandas

from .. import exceptions, util

FILE_TYPE = "wolffpot txt version1"
COMMENT = "# "


class StructuredDataFrame(pandas.DataFrame):
    """a pandas `DataFrame` for tabular reports, carrying its run metadata and a minimum set of
    columns

    Sub-classes declare their structure through two class variables:

    _required_columns : OrderedDict()
        column label -> expected type.  The order is the order columns are written in.
    _required_metadata : OrderedDict()
        metadata key -> default.  A callable default is called without arguments at construction.

    On disk a frame is a commented json header (file-type, class and metadata) followed by a plain
    csv block, so that gnuplot and spreadsheet programs skip straight to the data.

    Attributes
    ----------
    metadata : OrderedDict
        name, mode, convergence flags and whatever else the producing routine attaches.  Values
        must survive `util.json_ready`.

    """

    label = "StructuredDataFrame"

    _metadata = ["metadata"]
    _required_metadata = OrderedDict((
        ("name", ""),
    ))

    _required_columns = OrderedDict()

    def __init__(self, data=None, index=None, columns=None, dtype=None, copy=False, **metadata):
        super(StructuredDataFrame, self).__init__(data, index, columns, dtype, copy)
        self.metadata = OrderedDict()
        for key, default in self._required_metadata.items():
            val = metadata.pop(key, default)
            self.metadata[key] = val() if callable(val) else val
        self.metadata.update(metadata)

        missing = self.missing_columns() + self.missing_metadata()
        if missing:
            raise exceptions.StructureException(
                "{:s} is missing {:s}".format(type(self).__name__, ", ".join(missing)))

    def missing_columns(self):
        """required column labels absent from the frame, dtypes are not checked"""
        return [key for key in self._required_columns if key not in self.columns]

    def missing_metadata(self):
        return [key for key in self._required_metadata if key not in self.metadata]

    @classmethod
    def from_rows(cls, rows, **metadata):
        """build the frame from a list of dicts, required columns first and in declaration order"""
        frame = pandas.DataFrame(list(rows))
        if frame.columns.empty:
            return cls(data=pandas.DataFrame(columns=list(cls._required_columns)), **metadata)
        ordered = [key for key in cls._required_columns if key in frame.columns]
        ordered += [key for key in frame.columns if key not in ordered]
        return cls(data=frame[ordered], **metadata)

    @classmethod
    def from_csv_block(cls, text, metadata):
        """rebuild the frame from the csv part of `serialize` output"""
        try:
            frame = pandas.read_csv(io.StringIO(text))
        except pandas.errors.EmptyDataError:
            frame = pandas.DataFrame()
        return cls(frame.dropna(axis="index", how="all"), **metadata)

    def header(self):
        meta = OrderedDict()
        meta["file-type"] = FILE_TYPE
        meta["class"] = type(self).__name__
        meta.update(self.metadata)
        return meta

    def serialize(self):
        """the text written by `savetxt`: commented json header, then csv with '.' decimals and LF
        line endings

        Floats are written with `repr` so that a reload gives back the same doubles.
        """
        header = "".join(COMMENT + line + "\n" for line in util.dumps(self.header()).splitlines())
        return header + self.to_csv(index=False, lineterminator="\n", float_format=lambda value: repr(float(value)))

    def savetxt(self, filename, overwrite=False):
        """
        Parameters
        ----------
        filename : str or Path
        overwrite : bool
            an existing file raises `FileExistsError` unless this is True

        """
        filename = str(filename)
        if os.path.isfile(filename) and not overwrite:
            raise FileExistsError("{:s} exists, pass overwrite=True to replace it".format(filename))
        with open(filename, "w", newline="\n") as fid:
            fid.write(self.serialize())

    @property
    def _constructor(self):
        return self.__class__


def split_report(text):
    """separate `serialize` output into the header dict and the csv text

    Raises `IncorrectFileType` when the text does not start with a json comment block of this
    package's file-type.
    """
    lines = text.splitlines(keepends=True)
    n_header = 0
    while n_header < len(lines) and lines[n_header].startswith("#"):
        n_header += 1
    if n_header == 0:
        raise exceptions.IncorrectFileType("no commented header block")
    try:
        header = json.loads("".join(line[1:] for line in lines[:n_header]), object_pairs_hook=OrderedDict)
    except json.JSONDecodeError:
        raise exceptions.IncorrectFileType("header block is not json")
    if not isinstance(header, dict) or header.pop("file-type", None) != FILE_TYPE:
        raise exceptions.IncorrectFileType("not a {:s} file".format(FILE_TYPE))
    return header, "".join(lines[n_header:])
