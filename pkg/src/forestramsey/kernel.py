"""Backend selection for the search kernels.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python ``_pykernel`` takes over. Set ``FORESTRAMSEY_PURE=1`` to force the
fallback.
"""

import os

from . import _pykernel

if os.environ.get("FORESTRAMSEY_PURE"):
    _impl = _pykernel
else:
    try:
        from . import _speedups as _impl
    except ImportError:  # extension not built
        _impl = _pykernel

BACKEND = "python" if _impl is _pykernel else "cython"

clique_in = _impl.clique_in
embeds_forest = _impl.embeds_forest
edge_search = _impl.edge_search

FOUND = _pykernel.FOUND
EXHAUSTED = _pykernel.EXHAUSTED
OVER_BUDGET = _pykernel.OVER_BUDGET
OVER_TIME = _pykernel.OVER_TIME
CLIQUE = _pykernel.CLIQUE
FOREST = _pykernel.FOREST
