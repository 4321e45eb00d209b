"""Integer preparation for the factorization search.

Coordinates: every power ``X^k`` is reduced modulo the minimal polynomial and
scaled by the common denominator ``L`` to an integer vector ``G_k``.  A
factorization of ``x`` is then a nonnegative integer vector ``c`` with
``sum c_k G_k = T`` where ``T`` is the scaled remainder of ``x``.

The search assigns ``c_D, c_{D-1}, ...`` top-down.  At each level the residual
has to stay inside the box-constrained cone spanned by the lower generators;
cone facets give interval bounds on the current coefficient and the lattice
spanned by the lower generators gives a residue class for it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .exact import Poly

MAX_STRIDE = 65536
MAX_FACET_SUBSETS = 5000


def scaled_remainders(min_poly: Poly, D: int):
    """``(L, [G_0..G_D])``: scaled remainders of ``X^k`` mod ``min_poly``."""
    return _scaled_remainders(min_poly, D)


@lru_cache(maxsize=256)
def _scaled_remainders(min_poly: Poly, D: int):
    e = min_poly.degree
    rems = []
    cur = Poly((1,))
    for k in range(D + 1):
        r = cur % min_poly
        rems.append(r.padded(e))
        cur = r.shift(1)
    L = 1
    for v in rems:
        for c in v:
            if not isinstance(c, int):
                L = math.lcm(L, c.denominator)
    G = tuple(tuple(int(c * L) for c in v) for v in rems)
    return L, G


def _det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = M
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    out = 0
    for col in range(n):
        if M[0][col]:
            minor = [row[:col] + row[col + 1:] for row in M[1:]]
            out += (-1) ** col * M[0][col] * _det(minor)
    return out


def _normal(vs, e):
    """Integer vector orthogonal to the e-1 vectors ``vs`` (generalized cross product)."""
    return tuple((-1) ** i * _det([v[:i] + v[i + 1:] for v in vs]) for i in range(e))


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@lru_cache(maxsize=4096)
def cone_facets(gens: tuple, e: int) -> tuple:
    """Primitive inward normals ``h`` with ``h . g >= 0`` for every generator.

    Each comes from ``e-1`` generators, so for a full-dimensional cone all
    facets are found when every subset is tried; any subset of them is a
    valid (weaker) set of constraints.
    """
    if e == 1:
        return ((1,),) if all(g[0] >= 0 for g in gens) else ()
    dirs = list(dict.fromkeys(_primitive(g) for g in gens if any(g)))
    if len(dirs) < e - 1:
        return ()
    if math.comb(len(dirs), e - 1) > MAX_FACET_SUBSETS:
        # keep the coordinate axes and the most recent generators
        units = [d for d in dirs if sum(1 for x in d if x) == 1]
        rest = [d for d in dirs if d not in units]
        pool = units[:]
        for d in reversed(rest):
            if math.comb(len(pool) + 1, e - 1) > MAX_FACET_SUBSETS:
                break
            pool.append(d)
    else:
        pool = dirs
    out = []
    seen = set()
    for sub in itertools.combinations(pool, e - 1):
        h = _normal(sub, e)
        if not any(h):
            continue
        h = _primitive(h)
        if h in seen:
            continue
        dots = [_dot(h, g) for g in dirs]
        if all(x >= 0 for x in dots):
            pass
        elif all(x <= 0 for x in dots):
            h = tuple(-x for x in h)
        else:
            continue
        if h not in seen:
            seen.add(h)
            seen.add(tuple(-x for x in h))
            out.append(h)
    return tuple(out)


def hnf(rows, e):
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns ``e`` upper-triangular rows with positive diagonal and reduced
    off-diagonal entries, or None when the rows do not span a rank-``e`` lattice.
    """
    rows = [list(r) for r in rows if any(r)]
    basis = []
    for col in range(e):
        piv = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not piv:
            return None
        while len(piv) > 1:
            piv.sort(key=lambda r: abs(r[col]))
            p = piv[0]
            nxt = [p]
            for r in piv[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                (nxt if r[col] else rest).append(r)
            piv = nxt
        p = piv[0]
        if p[col] < 0:
            p = [-a for a in p]
        basis.append(p)
        rows = [r for r in rest if any(r)]
    for i in range(e):
        for k in range(i):
            q = basis[k][i] // basis[i][i]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return tuple(tuple(r) for r in basis)


def hnf_reduce(v, basis):
    v = list(v)
    for i, b in enumerate(basis):
        q = v[i] // b[i]
        if q:
            for k in range(i, len(v)):
                v[k] -= q * b[k]
    return v


def encode(v, radix):
    return sum(x * r for x, r in zip(v, radix))


@dataclass
class Level:
    """One exponent of the search with its pruning data."""

    exp: int
    g: tuple
    cap: int
    facets: tuple = ()
    a: tuple = ()
    U: tuple = ()
    basis: tuple | None = None
    radix: tuple = ()
    step: int = 1
    table: dict = field(default_factory=dict)


@dataclass
class Problem:
    """Search data for one ``(min_poly, D, caps)`` triple."""

    e: int
    L: int
    D: int
    levels: list
    low_caps: tuple
    G: tuple

    def residual(self, x: Poly):
        return scaled_target(x, self.e, self.L)

    def expand(self, level_coeffs, low):
        """Coefficient vector indexed by exponent ``0..D``."""
        out = [0] * max(self.D + 1, self.e)
        for lv, c in zip(self.levels, level_coeffs):
            out[lv.exp] = c
        for i, c in enumerate(low):
            out[i] = c
        return out


def scaled_target(r: Poly, e: int, L: int):
    """Scaled coordinates of an already reduced remainder ``r``, or None if not integral."""
    out = []
    for c in r.padded(e)[:e]:
        v = c * L
        if getattr(v, "denominator", 1) != 1:
            return None
        out.append(int(v))
    return tuple(out)


@lru_cache(maxsize=1024)
def _structure(min_poly: Poly, D: int, active: tuple):
    """Facets and lattice data per level, depending only on which caps are nonzero."""
    e = min_poly.degree
    L, G = scaled_remainders(min_poly, D)
    low_active = [G[i] for i in range(min(e, D + 1)) if active[i]]
    info = {}
    basis = hnf(low_active, e) if len(low_active) else None
    gens = list(low_active)
    for j in range(e, D + 1):
        if active[j]:
            facets = cone_facets(tuple(gens), e)
            radix, step, table = (), 1, {}
            if basis is not None:
                r = [1]
                for i in range(e - 1):
                    r.append(r[-1] * basis[i][i])
                radix = tuple(r)
                table = {encode(hnf_reduce([0] * e, basis), radix): 0}
                c = 1
                while True:
                    key = encode(hnf_reduce([c * x for x in G[j]], basis), radix)
                    if key in table:
                        break
                    table[key] = c
                    c += 1
                    if c > MAX_STRIDE:
                        table = {}
                        break
                step = len(table) if table else 1
            info[j] = (facets, basis, radix, step, table)
            gens.append(G[j])
            basis = hnf(list(basis) + [G[j]], e) if basis is not None else hnf(gens, e)
    return L, G, info


def prepare(min_poly: Poly, D: int, caps) -> Problem:
    """Build the search problem for exponents ``0..D`` with per-exponent caps."""
    e = min_poly.degree
    caps = list(caps)[: D + 1] + [0] * max(0, D + 1 - len(caps))
    active = tuple(c > 0 for c in caps) + (False,) * max(0, e - D - 1)
    L, G, info = _structure(min_poly, D, active)
    levels = []
    for j in range(D, e - 1, -1):
        if not caps[j]:
            continue
        facets, basis, radix, step, table = info[j]
        a = tuple(_dot(h, G[j]) for h in facets)
        U = tuple(sum(caps[i] * _dot(h, G[i]) for i in range(j) if caps[i]) for h in facets)
        levels.append(Level(j, G[j], caps[j], facets, a, U, basis, radix, step, table))
    low_caps = tuple(caps[i] if i <= D else 0 for i in range(e))
    return Problem(e, L, D, levels, low_caps, G)
