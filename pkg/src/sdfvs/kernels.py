"""Backend selection for the hot graph kernels.

The compiled ``_ckernels`` extension is used when it has been built; otherwise
the pure-Python ``_pykernels`` twin is used. Setting ``SDFVS_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _pykernels

INSEPARABLE = _pykernels.INSEPARABLE
OVER_BUDGET = _pykernels.OVER_BUDGET

_impl = _pykernels
BACKEND = "python"
if not os.environ.get("SDFVS_PURE_PYTHON"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

reach = _impl.reach
scc = _impl.scc
furthest_cut = _impl.furthest_cut
