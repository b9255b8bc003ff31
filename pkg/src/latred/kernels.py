"""Backend selection for the O(n^3) kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``LATRED_PURE`` is set to a non-empty value, the numpy
fallback is used. Both backends return bit-identical results.
"""
import os

import numpy as np

from . import _fallback

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _fallback}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels

if _ckernels is not None and not os.environ.get("LATRED_PURE"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

_impl = BACKENDS[BACKEND]


def use_backend(name: str) -> None:
    """Switch the active backend (``"compiled"`` or ``"python"``)."""
    global BACKEND, _impl
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} is not available; have {sorted(BACKENDS)}")
    BACKEND = name
    _impl = BACKENDS[name]


def _c(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def mat_mul(A, B, code: int) -> np.ndarray:
    return _impl.mat_mul(_c(A), _c(B), code)


def right_residual(M, N, code: int) -> np.ndarray:
    return _impl.right_residual(_c(M), _c(N), code)


def left_residual(N, M, code: int) -> np.ndarray:
    return _impl.left_residual(_c(N), _c(M), code)


def distinct_rows(M, eps: float) -> tuple[int, ...]:
    return _impl.distinct_rows(_c(M), float(eps))


def ri_step(Q, D, code: int) -> np.ndarray:
    """Q ^ meet_x (D[x].Q)/D[x] for a stack D of transition matrices."""
    return _impl.ri_step(_c(Q), _c(D), code)


def li_step(P, D, code: int) -> np.ndarray:
    r"""P ^ meet_x D[x]\(P.D[x])."""
    return _impl.li_step(_c(P), _c(D), code)


def transitivity_violation(M, code: int, eps: float):
    return _impl.transitivity_violation(_c(M), code, float(eps))
