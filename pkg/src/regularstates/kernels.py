"""Hot-loop dispatch: the compiled extension when importable, else pure Python.

Set ``REGULARSTATES_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
all_cut_ranks = _pykernels.all_cut_ranks
rank_width_dp = _pykernels.rank_width_dp

if os.environ.get("REGULARSTATES_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        all_cut_ranks = _ckernels.all_cut_ranks
        rank_width_dp = _ckernels.rank_width_dp

__all__ = ["BACKEND", "all_cut_ranks", "rank_width_dp"]
