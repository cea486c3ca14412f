import json
import math
from collections import OrderedDict

import numpy as np

INF_STRING = "inf"


def json_ready(obj):
    """convert nested containers of numpy / python values into something `json.dumps` accepts
    without producing the non-standard `Infinity` and `NaN` tokens

    +inf becomes the string "inf", NaN becomes None, numpy scalars and arrays become python
    floats/ints/lists.
    """
    if isinstance(obj, dict):
        return OrderedDict((str(key), json_ready(val)) for key, val in obj.items())
    if isinstance(obj, (list, tuple)):
        return [json_ready(val) for val in obj]
    if isinstance(obj, np.ndarray):
        return [json_ready(val) for val in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        val = float(obj)
        if math.isnan(val):
            return None
        if math.isinf(val):
            return INF_STRING if val > 0 else "-" + INF_STRING
        return val
    return obj


def dumps(obj):
    """the one json encoding used for every report: sorted keys, 2-space indent, trailing LF"""
    return json.dumps(json_ready(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def as_points(points, dimension=None):
    """coerce a point or a list of points into a float array of shape (N, n)"""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        if dimension is None or dimension == arr.shape[0]:
            arr = arr.reshape(1, -1)
        elif dimension == 1:
            arr = arr.reshape(-1, 1)
    if dimension is not None and arr.shape[1] != dimension:
        raise ValueError("points have dimension {:d}, expected {:d}".format(arr.shape[1], dimension))
    return arr


def frozen(arr):
    """return a read-only float copy of `arr`"""
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out
