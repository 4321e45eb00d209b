# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""int64 search kernels.  Callers must check ``_search`` magnitude bounds first
(see ``kernels.fits_int64``); no overflow detection happens in here."""

import numpy as np
cimport numpy as cnp
from cpython.bytes cimport PyBytes_FromStringAndSize

ctypedef long long i64

# a Python int, so length masks never go through a C shift
ONE = 1

cnp.import_array()


class BudgetExhausted(Exception):
    pass


class _LimitReached(Exception):
    pass


cdef inline i64 floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline i64 floormod(i64 a, i64 b) nogil:
    cdef i64 r = a % b
    if r != 0 and ((r < 0) != (b < 0)):
        r += b
    return r


cdef class Flat:
    """A prepared problem flattened to contiguous int64 arrays."""

    cdef public int nl, e
    cdef public i64 L
    cdef i64[:, ::1] G
    cdef i64[::1] cap, step, foff, A, U, toff, tkeys, tvals, low_caps, has_table, exps
    cdef i64[:, ::1] H
    cdef i64[:, :, ::1] B
    cdef i64[:, ::1] radix
    cdef i64[:, ::1] R
    cdef i64[::1] coeff
    cdef i64[::1] vtmp
    cdef public object D

    def __init__(self, prob):
        cdef int li, i, k
        self.nl = len(prob.levels)
        self.e = prob.e
        self.L = prob.L
        self.D = prob.D
        nl, e = self.nl, self.e
        self.G = np.array([lv.g for lv in prob.levels] or np.zeros((0, e)), dtype=np.int64).reshape(nl, e)
        self.exps = np.array([lv.exp for lv in prob.levels], dtype=np.int64)
        self.cap = np.array([lv.cap for lv in prob.levels], dtype=np.int64)
        self.step = np.array([lv.step for lv in prob.levels], dtype=np.int64)
        foff = [0]
        H, A, U = [], [], []
        for lv in prob.levels:
            H.extend(lv.facets)
            A.extend(lv.a)
            U.extend(lv.U)
            foff.append(len(A))
        self.foff = np.array(foff, dtype=np.int64)
        self.H = np.array(H, dtype=np.int64).reshape(len(A), e)
        self.A = np.array(A, dtype=np.int64)
        self.U = np.array(U, dtype=np.int64)
        B = np.zeros((nl, e, e), dtype=np.int64)
        rad = np.zeros((nl, e), dtype=np.int64)
        has = np.zeros(nl, dtype=np.int64)
        toff = [0]
        keys, vals = [], []
        for li, lv in enumerate(prob.levels):
            if lv.table:
                has[li] = 1
                B[li] = np.array(lv.basis, dtype=np.int64)
                rad[li] = np.array(lv.radix, dtype=np.int64)
                items = sorted(lv.table.items())
                keys.extend(k for k, _ in items)
                vals.extend(v for _, v in items)
            toff.append(len(keys))
        self.B = B
        self.radix = rad
        self.has_table = has
        self.toff = np.array(toff, dtype=np.int64)
        self.tkeys = np.array(keys, dtype=np.int64)
        self.tvals = np.array(vals, dtype=np.int64)
        self.low_caps = np.array(prob.low_caps, dtype=np.int64)
        # slot 0 of each row holds the level index so a row doubles as a memo key
        self.R = np.zeros((nl + 1, e + 1), dtype=np.int64)
        self.coeff = np.zeros(max(nl, 1), dtype=np.int64)
        self.vtmp = np.zeros(e, dtype=np.int64)

    cdef int bounds(self, int li, i64* lo_out, i64* hi_out, i64* step_out):
        cdef int e = self.e
        cdef i64 lo = 0, hi = self.cap[li], s, a, u, t, key, c0
        cdef i64 f, i, k, q, lo_i, hi_i, mid
        cdef i64* R = &self.R[li, 1]
        for f in range(self.foff[li], self.foff[li + 1]):
            s = 0
            for i in range(e):
                s += self.H[f, i] * R[i]
            a = self.A[f]
            u = self.U[f]
            if a > 0:
                t = floordiv(s, a)
                if t < hi:
                    hi = t
                t = -floordiv(u - s, a)
                if t > lo:
                    lo = t
            elif a < 0:
                t = -floordiv(s, -a)
                if t > lo:
                    lo = t
                t = floordiv(s - u, a)
                if t < hi:
                    hi = t
            elif s < 0 or s > u:
                return 0
            if lo > hi:
                return 0
        step_out[0] = self.step[li]
        if self.has_table[li]:
            for i in range(e):
                self.vtmp[i] = floormod(R[i], self.L)
            for i in range(e):
                q = floordiv(self.vtmp[i], self.B[li, i, i])
                if q:
                    for k in range(i, e):
                        self.vtmp[k] -= q * self.B[li, i, k]
            key = 0
            for i in range(e):
                key += self.vtmp[i] * self.radix[li, i]
            lo_i = self.toff[li]
            hi_i = self.toff[li + 1] - 1
            c0 = -1
            while lo_i <= hi_i:
                mid = (lo_i + hi_i) >> 1
                if self.tkeys[mid] == key:
                    c0 = self.tvals[mid]
                    break
                elif self.tkeys[mid] < key:
                    lo_i = mid + 1
                else:
                    hi_i = mid - 1
            if c0 < 0:
                return 0
            lo += floormod(c0 - lo, self.step[li])
            if lo > hi:
                return 0
        lo_out[0] = lo
        hi_out[0] = hi
        return 1

    cdef int final(self, int li, i64* total):
        cdef i64 r, tot = 0
        cdef int i
        for i in range(self.e):
            r = self.R[li, 1 + i]
            if r < 0 or r % self.L:
                return 0
            r = r // self.L
            if r > self.low_caps[i]:
                return 0
            tot += r
        total[0] = tot
        return 1

    cdef inline void child(self, int li, i64 c):
        cdef int i
        self.R[li + 1, 0] = li + 1
        for i in range(self.e):
            self.R[li + 1, 1 + i] = self.R[li, 1 + i] - c * self.G[li, i]

    cdef object key(self, int li):
        return PyBytes_FromStringAndSize(<char*>&self.R[li, 0], (self.e + 1) * sizeof(i64))

    def load(self, T):
        cdef int i
        self.R[0, 0] = 0
        for i in range(self.e):
            self.R[0, 1 + i] = T[i]


cdef class _Enum:
    cdef Flat fp
    cdef list out
    cdef i64 nodes, budget
    cdef object limit

    def __init__(self, Flat fp, i64 budget, limit):
        self.fp = fp
        self.out = []
        self.nodes = 0
        self.budget = budget
        self.limit = limit

    cdef rec(self, int li):
        cdef Flat fp = self.fp
        cdef i64 lo, hi, st, c, tot
        cdef int i
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted
        if li == fp.nl:
            if fp.final(li, &tot):
                vec = [0] * max(fp.D + 1, fp.e)
                for i in range(fp.nl):
                    vec[fp.exps[i]] = fp.coeff[i]
                for i in range(fp.e):
                    vec[i] = fp.R[li, 1 + i] // fp.L
                self.out.append(vec)
                if self.limit is not None and len(self.out) >= self.limit:
                    raise _LimitReached
            return
        if not fp.bounds(li, &lo, &hi, &st):
            return
        c = lo
        while c <= hi:
            fp.coeff[li] = c
            fp.child(li, c)
            self.rec(li + 1)
            c += st
        fp.coeff[li] = 0


def enumerate_solutions(Flat fp, T, i64 budget, limit=None):
    fp.load(T)
    en = _Enum(fp, budget, limit)
    exhausted = False
    try:
        en.rec(0)
    except BudgetExhausted:
        exhausted = True
    except _LimitReached:
        pass
    return en.out, en.nodes, exhausted


cdef class _Lengths:
    cdef Flat fp
    cdef dict memo
    cdef i64 budget

    def __init__(self, Flat fp, i64 budget):
        self.fp = fp
        self.memo = {}
        self.budget = budget

    cdef object rec(self, int li):
        cdef Flat fp = self.fp
        cdef i64 lo, hi, st, c, tot
        k = fp.key(li)
        got = self.memo.get(k)
        if got is not None:
            return got
        if len(self.memo) >= self.budget:
            raise BudgetExhausted
        res = 0
        if li == fp.nl:
            if fp.final(li, &tot):
                res = ONE << tot
            self.memo[k] = res
            return res
        if fp.bounds(li, &lo, &hi, &st):
            c = lo
            while c <= hi:
                fp.child(li, c)
                sub = self.rec(li + 1)
                if sub:
                    res |= sub << c
                c += st
        self.memo[k] = res
        return res


def length_mask(Flat fp, T, i64 budget):
    fp.load(T)
    lm = _Lengths(fp, budget)
    try:
        mask = lm.rec(0)
    except BudgetExhausted:
        return 0, len(lm.memo), True
    return mask, len(lm.memo), False


cdef class _Exists:
    cdef Flat fp
    cdef set dead
    cdef i64 count, budget

    def __init__(self, Flat fp, i64 budget):
        self.fp = fp
        self.dead = set()
        self.count = 0
        self.budget = budget

    cdef bint rec(self, int li) except -1:
        cdef Flat fp = self.fp
        cdef i64 lo, hi, st, c, tot
        if li == fp.nl:
            return fp.final(li, &tot)
        k = fp.key(li)
        if k in self.dead:
            return False
        self.count += 1
        if self.count > self.budget:
            raise BudgetExhausted
        if fp.bounds(li, &lo, &hi, &st):
            c = hi - floormod(hi - lo, st)
            while c >= lo:
                fp.child(li, c)
                if self.rec(li + 1):
                    return True
                c -= st
        self.dead.add(k)
        return False


def exists(Flat fp, T, i64 budget):
    fp.load(T)
    ex = _Exists(fp, budget)
    try:
        found = ex.rec(0)
    except BudgetExhausted:
        return False, ex.count, True
    return bool(found), ex.count, False


def mst_bottleneck(Z):
    """Bottleneck edge of a minimum spanning tree under the factorization distance."""
    cdef i64[:, ::1] z = np.ascontiguousarray(Z, dtype=np.int64)
    cdef Py_ssize_t n = z.shape[0], w = z.shape[1]
    cdef Py_ssize_t i, k, cur, nxt
    cdef i64 g, d, la, lb, out = 0, bestv
    if n <= 1:
        return 0
    cdef i64[::1] lengths = np.zeros(n, dtype=np.int64)
    cdef i64[::1] best = np.full(n, 2 ** 62, dtype=np.int64)
    cdef char[::1] used = np.zeros(n, dtype=np.int8)
    for i in range(n):
        for k in range(w):
            lengths[i] += z[i, k]
    with nogil:
        cur = 0
        used[0] = 1
        for _ in range(n - 1):
            la = lengths[cur]
            nxt = -1
            bestv = 2 ** 62
            for i in range(n):
                if used[i]:
                    continue
                g = 0
                for k in range(w):
                    g += z[i, k] if z[i, k] < z[cur, k] else z[cur, k]
                lb = lengths[i]
                d = (la if la > lb else lb) - g
                if d < best[i]:
                    best[i] = d
                if best[i] < bestv:
                    bestv = best[i]
                    nxt = i
            if bestv > out:
                out = bestv
            used[nxt] = 1
            cur = nxt
    return out
