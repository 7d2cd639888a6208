"""Backend selection for the hot numeric kernels.

Two interchangeable implementations of the residual/Jacobian assembly and
the damped least-squares Newton loop:

* ``numba`` -- @njit-compiled loops (default when numba imports cleanly);
* ``numpy`` -- pure-numpy fallback.

Selection order: explicit argument, then the ``LINKVOL_BACKEND``
environment variable (``numba`` or ``numpy``), then numba-if-available.
Results agree to float rounding; iterate-level float differences mean
solution *sets* are deterministic per backend, not across backends.
"""

from __future__ import annotations

import os

_NUMBA_ERROR: Exception | None = None


def numba_available() -> bool:
    global _NUMBA_ERROR
    if _NUMBA_ERROR is not None:
        return False
    try:
        import numba  # noqa: F401
    except Exception as exc:  # pragma: no cover - environment dependent
        _NUMBA_ERROR = exc
        return False
    return True


def default_backend() -> str:
    env = os.environ.get("LINKVOL_BACKEND", "").strip().lower()
    if env in ("numba", "numpy"):
        if env == "numba" and not numba_available():
            raise RuntimeError(
                "LINKVOL_BACKEND=numba requested but numba failed to import: "
                f"{_NUMBA_ERROR}"
            )
        return env
    if env:
        raise ValueError(f"unknown LINKVOL_BACKEND {env!r}; use 'numba' or 'numpy'")
    return "numba" if numba_available() else "numpy"


def get_kernels(backend: str | None = None):
    """Return the kernel module for the requested (or default) backend."""
    name = backend or default_backend()
    if name == "numpy":
        from linkvol.kernels import numpy_impl

        return numpy_impl
    if name == "numba":
        from linkvol.kernels import numba_impl

        return numba_impl
    raise ValueError(f"unknown backend {name!r}; use 'numba' or 'numpy'")
