"""Backend dispatch for the dense mod-p kernels.

The default is the numba-compiled implementation when numba imports cleanly.
Set IDEALDEC_KERNEL=numpy to force the pure-numpy fallback (or =numba to
insist on the compiled path and fail loudly if it is unavailable).
"""

import os

_requested = os.environ.get("IDEALDEC_KERNEL", "").strip().lower()

if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"IDEALDEC_KERNEL must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numpy":
    from . import numpy_impl as impl
elif _requested == "numba":
    from . import numba_impl as impl
else:
    try:
        from . import numba_impl as impl
    except ImportError:      # pragma: no cover - env without numba
        from . import numpy_impl as impl

BACKEND = impl.BACKEND
inv_scalar = impl.inv_scalar
mul = impl.mul
divmod_ = impl.divmod_
gcd = impl.gcd
powmod = impl.powmod
eval_at = impl.eval_at
series_inv = impl.series_inv
mul_trunc2 = impl.mul_trunc2


def backend_name():
    return BACKEND


def warmup():
    """Trigger JIT compilation of every kernel on tiny inputs."""
    import numpy as np
    p = 7
    a = np.array([1, 2, 3], dtype=np.int64)
    b = np.array([4, 1], dtype=np.int64)
    mul(a, b, p)
    divmod_(a, b, p)
    gcd(a, b, p)
    powmod(b, 5, a, p)
    eval_at(a, 2, p)
    series_inv(np.array([1, 1], dtype=np.int64), 4, p)
    mul_trunc2(np.array([[1, 1], [0, 1]], dtype=np.int64),
               np.array([[1, 0], [2, 1]], dtype=np.int64), 3, p)
