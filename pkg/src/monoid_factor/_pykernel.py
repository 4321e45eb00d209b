"""Pure-Python search kernels (reference implementation and fallback)."""

from __future__ import annotations

import numpy as np

from ._search import encode, hnf_reduce


class BudgetExhausted(Exception):
    pass


class _LimitReached(Exception):
    pass


def _bounds(lv, R):
    """Feasible ``[lo, hi]`` and stride start for one level, or None."""
    lo, hi = 0, lv.cap
    for h, a, U in zip(lv.facets, lv.a, lv.U):
        s = 0
        for x, y in zip(h, R):
            s += x * y
        if a > 0:
            t = s // a
            if t < hi:
                hi = t
            t = -((U - s) // a)
            if t > lo:
                lo = t
        elif a < 0:
            t = -(s // -a)
            if t > lo:
                lo = t
            t = (s - U) // a
            if t < hi:
                hi = t
        elif s < 0 or s > U:
            return None
        if lo > hi:
            return None
    if lv.table:
        c0 = lv.table.get(encode(hnf_reduce(R, lv.basis), lv.radix))
        if c0 is None:
            return None
        lo += (c0 - lo) % lv.step
        if lo > hi:
            return None
    return lo, hi


def _final(prob, R):
    L = prob.L
    out = []
    for r, cap in zip(R, prob.low_caps):
        if r < 0 or r % L:
            return None
        c = r // L
        if c > cap:
            return None
        out.append(c)
    return out


def enumerate_solutions(prob, T, budget, limit=None):
    """All coefficient vectors (indexed by exponent) solving ``prob`` for target ``T``.

    Returns ``(solutions, nodes, exhausted)``.
    """
    levels = prob.levels
    nl = len(levels)
    coeff = [0] * nl
    out = []
    nodes = 0

    def rec(li, R):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted
        if li == nl:
            low = _final(prob, R)
            if low is not None:
                out.append(prob.expand(coeff, low))
                if limit is not None and len(out) >= limit:
                    raise _LimitReached
            return
        lv = levels[li]
        b = _bounds(lv, R)
        if b is None:
            return
        lo, hi = b
        g = lv.g
        for c in range(lo, hi + 1, lv.step):
            coeff[li] = c
            rec(li + 1, [r - c * x for r, x in zip(R, g)])
        coeff[li] = 0

    exhausted = False
    try:
        rec(0, list(T))
    except BudgetExhausted:
        exhausted = True
    except _LimitReached:
        pass
    return out, nodes, exhausted


def length_mask(prob, T, budget):
    """Bitmask of attainable lengths (bit ``l`` set iff some solution has length ``l``).

    Memoized on ``(level, residual)``; returns ``(mask, states, exhausted)``.
    """
    levels = prob.levels
    nl = len(levels)
    memo = {}

    def rec(li, R):
        key = (li, R)
        got = memo.get(key)
        if got is not None:
            return got
        if len(memo) >= budget:
            raise BudgetExhausted
        if li == nl:
            low = _final(prob, R)
            res = (1 << sum(low)) if low is not None else 0
            memo[key] = res
            return res
        lv = levels[li]
        b = _bounds(lv, R)
        res = 0
        if b is not None:
            lo, hi = b
            g = lv.g
            for c in range(lo, hi + 1, lv.step):
                sub = rec(li + 1, tuple(r - c * x for r, x in zip(R, g)))
                if sub:
                    res |= sub << c
        memo[key] = res
        return res

    try:
        mask = rec(0, tuple(T))
    except BudgetExhausted:
        return 0, len(memo), True
    return mask, len(memo), False


def exists(prob, T, budget):
    """Whether any solution exists; ``(found, states, exhausted)``."""
    levels = prob.levels
    nl = len(levels)
    dead = set()
    count = 0

    def rec(li, R):
        nonlocal count
        if li == nl:
            return _final(prob, R) is not None
        key = (li, R)
        if key in dead:
            return False
        count += 1
        if count > budget:
            raise BudgetExhausted
        lv = levels[li]
        b = _bounds(lv, R)
        if b is not None:
            lo, hi = b
            g = lv.g
            for c in range(hi - (hi - lo) % lv.step, lo - 1, -lv.step):
                if rec(li + 1, tuple(r - c * x for r, x in zip(R, g))):
                    return True
        dead.add(key)
        return False

    try:
        found = rec(0, tuple(T))
    except BudgetExhausted:
        return False, count, True
    return found, count, False


def mst_bottleneck(Z):
    """Largest edge of a minimum spanning tree of the rows of ``Z`` under the
    factorization distance ``max(|z|, |z'|) - |gcd(z, z')|`` (Prim's algorithm)."""
    Z = np.asarray(Z, dtype=np.int64)
    n = Z.shape[0]
    if n <= 1:
        return 0
    lengths = Z.sum(axis=1)
    best = np.full(n, np.iinfo(np.int64).max, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    cur = 0
    used[0] = True
    out = 0
    for _ in range(n - 1):
        g = np.minimum(Z, Z[cur]).sum(axis=1)
        d = np.maximum(lengths, lengths[cur]) - g
        np.minimum(best, d, out=best)
        best_masked = np.where(used, np.iinfo(np.int64).max, best)
        cur = int(best_masked.argmin())
        out = max(out, int(best_masked[cur]))
        used[cur] = True
    return out
