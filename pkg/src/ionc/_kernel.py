"""Pick the search kernel at import time.

The compiled ``_csearch`` extension is used when it was built; setting
``IONC_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
import os

from . import _pysearch

if os.environ.get("IONC_PURE_PYTHON", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from . import _csearch as _compiled
    except ImportError:
        _compiled = None

KERNELS = {"python": _pysearch.search}
if _compiled is not None:
    KERNELS["compiled"] = _compiled.search

BACKEND = "compiled" if _compiled is not None else "python"
search = KERNELS[BACKEND]
