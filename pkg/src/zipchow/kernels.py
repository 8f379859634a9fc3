"""Term-kernel backend selection.

Prefers the compiled zipchow._speedups extension and falls back to the
pure-Python zipchow._poly_py.  Set ZIPCHOW_PURE_PYTHON=1 to force the
fallback (the benchmark harness does this to compare backends).
"""

import os

from zipchow import _poly_py

if os.environ.get("ZIPCHOW_PURE_PYTHON") == "1":
    _impl = _poly_py
else:
    try:
        from zipchow import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _poly_py

BACKEND: str = "cython" if _impl is not _poly_py else "python"

add_terms = _impl.add_terms
sub_terms = _impl.sub_terms
neg_terms = _impl.neg_terms
scale_terms = _impl.scale_terms
add_scaled_terms = _impl.add_scaled_terms
mul_terms = _impl.mul_terms
map_terms = _impl.map_terms


def is_compiled() -> bool:
    return BACKEND == "cython"
