"""Backend selection for the hot decoding kernels.

Numba is used when importable unless ``SPCPC_DISABLE_NUMBA`` is set to a
truthy value, in which case every kernel runs its vectorized NumPy twin.
The backend can also be switched at runtime with :func:`set_backend`.
"""

import os

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorator(func):
            return func

        return decorator


def _env_disabled() -> bool:
    return os.environ.get("SPCPC_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


_backend = "numba" if NUMBA_AVAILABLE and not _env_disabled() else "numpy"


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> str:
    """Select ``"numba"`` or ``"numpy"``; returns the previous backend."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not NUMBA_AVAILABLE:
        raise RuntimeError("numba is not installed")
    previous, _backend = _backend, name
    return previous
