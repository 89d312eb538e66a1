"""Numba switch.

``DCA_JIT=0`` (or a missing numba install) routes every kernel through the
pure-numpy implementations in :mod:`multimodular.kernels`.  ``DCA_THREADS``
caps the numba worker count.
"""

import os

JIT_ENABLED = os.environ.get("DCA_JIT", "1").strip().lower() not in ("0", "false", "no", "off")

try:
    if not JIT_ENABLED:
        raise ImportError
    from numba import njit, prange
    import numba

    if "NUMBA_THREADING_LAYER" not in os.environ:
        # the system TBB is too old for numba; skip it instead of warning
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper

    prange = range


def _apply_thread_cap():
    raw = os.environ.get("DCA_THREADS")
    if not (HAVE_NUMBA and raw):
        return
    try:
        wanted = int(raw)
    except ValueError:
        return
    if wanted >= 1:
        numba.set_num_threads(min(wanted, numba.config.NUMBA_NUM_THREADS))


_apply_thread_cap()
