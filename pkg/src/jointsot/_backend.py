"""Kernel selection.

The compiled extension is used when it imports; otherwise the pure-Python
module. Set ``JOINTSOT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

kernels = _pykernels
BACKEND = "python"

if os.environ.get("JOINTSOT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        kernels = _ckernels
        BACKEND = "cython"

edit_distance = kernels.edit_distance
lagging = kernels.lagging
gamma_schedule = kernels.gamma_schedule
block_cuts = kernels.block_cuts
