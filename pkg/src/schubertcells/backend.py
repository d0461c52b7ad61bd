"""Kernel backend selection.

The compiled extension `_kernels_c` is preferred when it imported cleanly;
otherwise the pure-numpy `_kernels_py` twin is used.  Set SCHUBERT_BACKEND=py
to force the fallback (e.g. for the benchmark) or SCHUBERT_BACKEND=c to make a
missing extension a hard error instead of a silent downgrade.
"""

from __future__ import annotations

import os

from ._kernels_py import qconj, qmul

_forced = os.environ.get("SCHUBERT_BACKEND", "").lower()

if _forced == "py":
    from ._kernels_py import compose, gram, mgs

    BACKEND = "python"
else:
    try:
        from ._kernels_c import compose, gram, mgs

        BACKEND = "c"
    except ImportError:
        if _forced == "c":
            raise
        from ._kernels_py import compose, gram, mgs

        BACKEND = "python"

__all__ = ["BACKEND", "compose", "gram", "mgs", "qconj", "qmul"]
