"""Backend selection for the numeric kernels.

Set ``RAMANUJAN_BIGRAPHS_NO_NUMBA=1`` to force the pure-numpy path. The numba
path is also skipped when numba cannot be imported.
"""
import os

_FLAG = "RAMANUJAN_BIGRAPHS_NO_NUMBA"

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def numba_disabled():
    return os.environ.get(_FLAG, "").strip().lower() not in ("", "0", "false", "no")


def default_backend():
    if HAVE_NUMBA and not numba_disabled():
        return "numba"
    return "numpy"


def njit(**options):
    """``numba.njit`` when available, otherwise a no-op decorator.

    The decorated function keeps a ``py_func`` attribute either way so tests
    can run the uncompiled loops.
    """
    opts = dict(cache=True, nogil=True)
    opts.update(options)

    def wrap(fn):
        if HAVE_NUMBA:
            return numba.njit(**opts)(fn)
        fn.py_func = fn
        return fn

    return wrap
