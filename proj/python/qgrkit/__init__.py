"""Python bindings for qgrkit. Reports are returned as plain dicts."""

import json

from ._qgrkit import (  # noqa: F401
    ParseError,
    QgrError,
    builtin_labels,
    hilbert_dim,
    hilbert_series,
    object_dims,
    object_name,
)
from . import _qgrkit


def ext(n, source, target, imax=2):
    """Dimensions of Ext^i(source, target) in qgr(A), with trace and certifying methods."""
    return json.loads(_qgrkit._ext(n, source, target, imax))


def verify(n, collection, jobs=1, morphisms=False):
    """Verify a built-in collection label or a list of object expressions."""
    if isinstance(collection, str):
        return json.loads(_qgrkit._verify(n, collection, [], jobs, morphisms))
    return json.loads(_qgrkit._verify(n, "custom", list(collection), jobs, morphisms))


def mutate(n, obj, left=None, right=None):
    """Iterated left mutation L_<left>(obj) or right mutation R_<right>(obj)."""
    return json.loads(_qgrkit._mutate(n, obj, ",".join(left or []), ",".join(right or [])))
