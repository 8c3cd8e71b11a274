"""Backend selection for the compiled kernels.

``MORSEKIT_BACKEND=numpy`` forces the pure-numpy kernels; anything else (or
unset) uses numba when it can be imported.  ``MORSEKIT_THREADS`` caps the
number of numba worker threads.
"""
import os

BACKEND_ENV = "MORSEKIT_BACKEND"
THREADS_ENV = "MORSEKIT_THREADS"

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
if HAVE_NUMBA and "NUMBA_THREADING_LAYER" not in os.environ:
    # skip TBB: older system TBB builds trigger a noisy warning on first use
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
USE_NUMBA = HAVE_NUMBA and os.environ.get(BACKEND_ENV, "numba").lower() != "numpy"


def thread_cap():
    """Thread limit from the environment, or None when unset/invalid."""
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return None
    try:
        n = int(raw)
    except ValueError:
        return None
    return n if n > 0 else None


def apply_thread_cap():
    cap = thread_cap()
    if cap is not None and HAVE_NUMBA:
        numba.set_num_threads(min(cap, numba.config.NUMBA_NUM_THREADS))


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise.

    The compiled variant is always built when numba is importable so that
    both code paths stay testable regardless of the backend flag.
    """
    if not HAVE_NUMBA:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
    return numba.njit(*args, **kwargs)


if HAVE_NUMBA:
    prange = numba.prange
else:  # pragma: no cover
    prange = range

apply_thread_cap()
