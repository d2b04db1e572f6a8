"""Hot-loop kernels: string metrics and union-find components.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used. Set ``WSNET_PURE_PYTHON=1`` to force
the fallback. ``BACKEND`` names the module in use.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if os.environ.get("WSNET_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_impl = compiled_backend or python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

METRIC_LEVENSHTEIN = python_backend.METRIC_LEVENSHTEIN
METRIC_JARO = python_backend.METRIC_JARO
METRIC_WINKLER = python_backend.METRIC_WINKLER

levenshtein = _impl.levenshtein
normalized_levenshtein = _impl.normalized_levenshtein
jaro = _impl.jaro
jaro_winkler = _impl.jaro_winkler
match_pairs = _impl.match_pairs
component_labels = _impl.component_labels

__all__ = [
    "BACKEND",
    "METRIC_JARO",
    "METRIC_LEVENSHTEIN",
    "METRIC_WINKLER",
    "component_labels",
    "jaro",
    "jaro_winkler",
    "levenshtein",
    "match_pairs",
    "normalized_levenshtein",
]
