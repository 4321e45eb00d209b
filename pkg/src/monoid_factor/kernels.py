"""Backend selection for the search kernels.

The compiled extension is used when it imports and the problem fits in int64;
otherwise the pure-Python kernels run.  Set ``MONOID_FACTOR_PURE=1`` to force
the Python path for the whole process.
"""

from __future__ import annotations

import os

from . import _pykernel

try:  # pragma: no cover - depends on the build
    if os.environ.get("MONOID_FACTOR_PURE", "") not in ("", "0"):
        raise ImportError("pure backend forced")
    from . import _ckernel
except ImportError:  # pragma: no cover
    _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"
AVAILABLE = ("cython", "python") if _ckernel is not None else ("python",)

_LIMIT = 1 << 62
_backend = BACKEND


def set_backend(name: str) -> str:
    """Switch backends (``"cython"`` or ``"python"``); returns the previous one."""
    global _backend
    if name not in AVAILABLE:
        raise ValueError(f"backend {name!r} not available; have {AVAILABLE}")
    old, _backend = _backend, name
    return old


def get_backend() -> str:
    return _backend


def fits_int64(prob, T) -> bool:
    """Conservative check that every intermediate of the int64 kernels stays in range."""
    if any(c <= 0 for c in prob.low_caps) or prob.L >= 1 << 28:
        return False
    e = prob.e
    if e * prob.L * prob.L >= _LIMIT:
        return False
    M = max((abs(t) for t in T), default=0)
    for lv in prob.levels:
        M += lv.cap * max(abs(x) for x in lv.g)
    if M >= _LIMIT:
        return False
    for lv in prob.levels:
        for h, a, U in zip(lv.facets, lv.a, lv.U):
            hn = sum(abs(x) for x in h)
            if hn * M >= _LIMIT or abs(U) + hn * M >= _LIMIT or abs(a) * lv.cap >= _LIMIT:
                return False
        if lv.table:
            det = 1
            for i in range(e):
                det *= lv.basis[i][i]
            if det >= _LIMIT or any(abs(x) >= prob.L + 1 for row in lv.basis for x in row):
                return False
    return True


def _flat(prob):
    fp = getattr(prob, "_flat", None)
    if fp is None:
        fp = _ckernel.Flat(prob)
        prob._flat = fp
    return fp


def _use_c(prob, T) -> bool:
    return _backend == "cython" and _ckernel is not None and fits_int64(prob, T)


def enumerate_solutions(prob, T, budget, limit=None):
    """``(solutions, nodes, exhausted)``; each solution is indexed by exponent."""
    if _use_c(prob, T):
        return _ckernel.enumerate_solutions(_flat(prob), T, budget, limit)
    return _pykernel.enumerate_solutions(prob, T, budget, limit)


def length_mask(prob, T, budget):
    """``(mask, states, exhausted)`` with bit ``l`` set iff length ``l`` occurs."""
    if _use_c(prob, T):
        return _ckernel.length_mask(_flat(prob), T, budget)
    return _pykernel.length_mask(prob, T, budget)


def exists(prob, T, budget):
    """``(found, states, exhausted)``."""
    if _use_c(prob, T):
        return _ckernel.exists(_flat(prob), T, budget)
    return _pykernel.exists(prob, T, budget)


def mst_bottleneck(Z):
    if _backend == "cython" and _ckernel is not None:
        return _ckernel.mst_bottleneck(Z)
    return _pykernel.mst_bottleneck(Z)
