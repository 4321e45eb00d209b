"""Positive real roots of integer polynomials, pinned by rational intervals.

Isolation uses Descartes' rule of signs on the Möbius-transformed polynomial
``(1+x)^n f((a+bx)/(1+x))``: zero sign variations means no root in ``(a, b)``
and exactly one means exactly one root.  Everything is exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .exact import Poly, UndecidedError, content_primitive, is_squarefree

__all__ = [
    "AlgebraicNumber",
    "isolate_positive_roots",
    "sign_at_root",
    "floor_log",
    "compare_to_one",
]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _variations(coeffs) -> int:
    out, last = 0, 0
    for c in coeffs:
        s = _sign(c)
        if s:
            if last and s != last:
                out += 1
            last = s
    return out


def _taylor_shift(cs, a):
    """Coefficients of f(x + a)."""
    cs = list(cs)
    n = len(cs)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            cs[j] += a * cs[j + 1]
    return cs


def _descartes_on(f: Poly, lo: Fraction, hi: Fraction) -> int:
    """Sign variations of ``(1+x)^n f((lo + hi x)/(1 + x))``, a bound on roots in (lo, hi)."""
    # f(lo + (hi-lo) y) with y = x/(1+x), then reverse and shift by 1
    cs = _taylor_shift(f.coeffs, lo)
    w = hi - lo
    cs = [c * w ** i for i, c in enumerate(cs)]
    cs = list(reversed(cs))
    cs = _taylor_shift(cs, 1)
    return _variations(cs)


def _cauchy_upper(f: Poly) -> Fraction:
    lc = abs(Fraction(f.lc))
    return 1 + max(abs(Fraction(c)) for c in f.coeffs[:-1]) / lc


def _positive_root_lower(f: Poly) -> Fraction:
    """A positive number strictly below every positive root of ``f``."""
    cs = f.coeffs
    k = 0
    while cs[k] == 0:
        k += 1
    rev = Poly(reversed(cs[k:]))
    if rev.degree < 1:
        return Fraction(1)
    return 1 / (_cauchy_upper(rev) + 1)


@dataclass(frozen=True)
class AlgebraicNumber:
    """A positive real root of ``min_poly`` isolated in the open interval ``(lo, hi)``.

    ``root_index`` counts positive roots of ``min_poly`` from the smallest (0).
    Refinement returns a new value; the designated root never changes.
    """

    min_poly: Poly
    lo: Fraction
    hi: Fraction
    root_index: int = 0

    def __post_init__(self):
        if not (0 < self.lo < self.hi):
            raise ValueError("isolating interval must satisfy 0 < lo < hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def is_rational(self) -> bool:
        return self.min_poly.degree == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        c0, c1 = self.min_poly.coeffs
        return Fraction(-c0, c1)

    def refine(self, width=None) -> "AlgebraicNumber":
        """Bisect until the interval is narrower than ``width`` (default: halve once)."""
        lo, hi = self.lo, self.hi
        f = self.min_poly
        target = width if width is not None else (hi - lo) / 2
        slo = _sign(f(lo))
        while hi - lo >= target:
            mid = (lo + hi) / 2
            sm = _sign(f(mid))
            if sm == 0:
                q = (hi - lo) / 4
                lo, hi = mid - q, mid + q
                slo = _sign(f(lo))
            elif sm == slo:
                lo = mid
            else:
                hi = mid
        return AlgebraicNumber(f, lo, hi, self.root_index)

    def approx(self, digits: int = 12) -> float:
        """Floating value for display only."""
        a = self.refine(Fraction(1, 10 ** digits)) if self.width > Fraction(1, 10 ** digits) else self
        return float((a.lo + a.hi) / 2)

    def to_json(self) -> dict:
        return {
            "min_poly": [int(c) for c in self.min_poly.coeffs],
            "interval": [str(self.lo), str(self.hi)],
            "root_index": self.root_index,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AlgebraicNumber":
        return cls(
            Poly(obj["min_poly"]),
            Fraction(obj["interval"][0]),
            Fraction(obj["interval"][1]),
            obj.get("root_index", 0),
        )


def isolate_positive_roots(m: Poly) -> list:
    """One isolating interval per positive real root of ``m``, increasing.

    The endpoints are never roots, so each interval carries a sign change.
    """
    if m.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    if m.degree < 1:
        return []
    if not is_squarefree(m):
        raise ValueError("polynomial is not square-free")
    _, f = content_primitive(m)
    hi = _cauchy_upper(f)
    lo = _positive_root_lower(f)
    found = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        v = _descartes_on(f, a, b)
        if v == 0:
            continue
        if v == 1:
            found.append((a, b))
            continue
        mid = (a + b) / 2
        if f(mid) == 0:
            w = (b - a) / 8
            while _descartes_on(f, mid - w, mid + w) != 1 or f(mid - w) == 0 or f(mid + w) == 0:
                w /= 2
            found.append((mid - w, mid + w))
            stack.append((a, mid - w))
            stack.append((mid + w, b))
        else:
            stack.append((a, mid))
            stack.append((mid, b))
    found.sort()
    out = []
    for i, (a, b) in enumerate(found):
        # endpoints from bisection may be roots of f only when they came from a
        # midpoint, which is excluded above; lo and hi are strict bounds
        out.append(AlgebraicNumber(f, a, b, i))
    return out


# cached tight intervals; dict assignment is atomic so concurrent readers are safe
_REFINED: dict = {}
_REFINED_LOCK = threading.Lock()


def _interval_eval(g: Poly, lo: Fraction, hi: Fraction):
    """Bounds for ``g`` on ``[lo, hi]`` (0 < lo) by interval Horner."""
    a = b = Fraction(0)
    for c in reversed(g.coeffs):
        # [a, b] * [lo, hi] with lo > 0
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


def sign_at_root(g: Poly, alpha: AlgebraicNumber) -> int:
    """Sign of ``g(alpha)``: 0 exactly when ``min_poly`` divides ``g``."""
    if g.is_zero():
        return 0
    r = g % alpha.min_poly
    if r.is_zero():
        return 0
    if r.degree == 0:
        return _sign(r.coeffs[0])
    if alpha.is_rational():
        return _sign(r(alpha.rational_value()))
    key = (alpha.min_poly, alpha.root_index)
    cur = _REFINED.get(key, alpha)
    if not (alpha.lo <= cur.lo and cur.hi <= alpha.hi):
        cur = alpha
    while True:
        a, b = _interval_eval(r, cur.lo, cur.hi)
        if a > 0:
            s = 1
            break
        if b < 0:
            s = -1
            break
        cur = cur.refine(cur.width / 16)
    with _REFINED_LOCK:
        old = _REFINED.get(key)
        if old is None or cur.width < old.width:
            _REFINED[key] = cur
    return s


def compare_to_one(alpha: AlgebraicNumber) -> int:
    """Sign of ``alpha - 1``."""
    return sign_at_root(Poly((-1, 1)), alpha)


def floor_log(v: Poly, alpha: AlgebraicNumber) -> int:
    """Largest ``k`` with ``alpha**k <= v(alpha)``, for ``alpha > 1`` and ``v(alpha) >= 1``.

    Values below 1 have no such ``k``; ``ValueError`` is raised for them.
    """
    if compare_to_one(alpha) <= 0:
        raise UndecidedError("no finite exponent bound: alpha <= 1")
    if sign_at_root(v, alpha) <= 0:
        raise ValueError("value must be positive")
    if sign_at_root(v - 1, alpha) < 0:
        raise ValueError("value below 1 has no nonnegative floor_log")

    def le(k):
        return sign_at_root(v - Poly.monomial(k), alpha) >= 0

    hi = 1
    while le(hi):
        hi *= 2
    lo = hi // 2
    # alpha**lo <= v < alpha**hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if le(mid):
            lo = mid
        else:
            hi = mid
    return lo
