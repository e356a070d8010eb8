"""Backend selection for the hot kernels.

Every kernel exists twice: a numba ``@njit`` loop version and a pure numpy
(or plain Python, where the algorithm is a backtracking search) fallback.
The default backend is numba when it imports, unless ``BOLMAG_DISABLE_NUMBA``
is set to a truthy value.  ``use_backend`` switches at runtime, which the
benchmark and the cross-backend tests rely on.
"""

import contextlib
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

ENV_FLAG = "BOLMAG_DISABLE_NUMBA"

HAVE_NUMBA = numba is not None


def _env_disabled():
    return os.environ.get(ENV_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


# with the flag set nothing is compiled at all, so the fallback is pure numpy/Python
JIT_ENABLED = HAVE_NUMBA and not _env_disabled()

_backend = "numba" if JIT_ENABLED else "numpy"


def backend():
    return _backend


def set_backend(name):
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not JIT_ENABLED:
        raise RuntimeError(f"numba is unavailable or disabled via {ENV_FLAG}")
    _backend = name


@contextlib.contextmanager
def use_backend(name):
    old = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


def njit(*args, **kwargs):
    """``numba.njit(cache=True, nogil=True)`` or the identity decorator."""
    kwargs.setdefault("cache", True)
    kwargs.setdefault("nogil", True)
    if not JIT_ENABLED:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    return numba.njit(*args, **kwargs)


def python_version(fn):
    """The uncompiled body of an njit function (used by the fallback path)."""
    return getattr(fn, "py_func", fn)
