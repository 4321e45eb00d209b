"""Exact integer/rational polynomial arithmetic.

Everything here is exact: coefficients are Python ``int`` or
``fractions.Fraction`` (a Fraction with denominator 1 is stored as ``int``).
Polynomials are dense and immutable.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]

#: degree above which the bounded factor search refuses to decide
MAX_IRREDUCIBILITY_DEGREE = 8


class UndecidedError(RuntimeError):
    """Raised when a question cannot be settled within the configured bounds."""


def _norm(c) -> Number:
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def as_rational(value) -> Fraction:
    """Parse ``"a/b"``, ints or Fractions into a reduced Fraction."""
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def numer(q) -> int:
    return Fraction(q).numerator


def denom(q) -> int:
    return Fraction(q).denominator


class Poly:
    """Dense univariate polynomial over Q, coefficients indexed by degree."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [_norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self._hash = None

    # construction helpers
    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls((c,))

    @classmethod
    def from_counts(cls, counts) -> "Poly":
        """Build ``sum c_k X^k`` from a mapping or pairs ``(k, c_k)``."""
        items = counts.items() if hasattr(counts, "items") else counts
        items = list(items)
        if not items:
            return cls()
        out = [0] * (max(k for k, _ in items) + 1)
        for k, c in items:
            out[k] += c
        return cls(out)

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def support(self) -> frozenset:
        return frozenset(i for i, c in enumerate(self.coeffs) if c != 0)

    def coeff(self, k: int) -> Number:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def padded(self, n: int) -> list:
        return list(self.coeffs) + [0] * (n - len(self.coeffs))

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(a + b for a, b in zip(self.padded(n), other.padded(n)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _norm(other)
            return Poly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out, base = Poly((1,)), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "Poly":
        """Multiply by X^k."""
        return Poly([0] * k + list(self.coeffs)) if self.coeffs else Poly()

    def divmod(self, g: "Poly"):
        """Quotient and remainder over Q: ``self = q*g + r`` with ``deg r < deg g``."""
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = [Fraction(c) for c in self.coeffs]
        dg = g.degree
        lc = Fraction(g.lc)
        if len(r) - 1 < dg:
            return Poly(), self
        q = [Fraction(0)] * (len(r) - dg)
        for s in range(len(r) - 1 - dg, -1, -1):
            f = r[s + dg] / lc
            if f:
                q[s] = f
                for i, c in enumerate(g.coeffs):
                    r[s + i] -= f * c
        return Poly(q), Poly(r[:dg])

    def __divmod__(self, g):
        return self.divmod(g)

    def __mod__(self, g):
        return self.divmod(g)[1]

    def __floordiv__(self, g):
        return self.divmod(g)[0]

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _norm(acc) if isinstance(acc, (int, Fraction)) else acc

    def eval_at_one(self) -> Number:
        return _norm(sum(self.coeffs))

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def reversed(self) -> "Poly":
        """Reciprocal polynomial ``X^deg f(1/X)``."""
        return Poly(reversed(self.coeffs))

    def content_primitive(self):
        return content_primitive(self)

    # comparison / display
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("Poly", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _coerce(p) -> Poly:
    return p if isinstance(p, Poly) else Poly((p,))


X = Poly.x()


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor, returned primitive with positive leading coefficient."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    _, prim = content_primitive(a)
    return prim if prim.lc > 0 else -prim


def content_primitive(f: Poly):
    """Split ``f`` into a positive rational content and a primitive integer polynomial.

    ``content * primitive == f`` and the integer coefficients of ``primitive``
    are coprime. The sign of ``f`` stays with the primitive part.
    """
    if f.is_zero():
        raise ValueError("content of the zero polynomial is undefined")
    den = 1
    for c in f.coeffs:
        den = math.lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return _norm(Fraction(g, den)), Poly(c // g for c in ints)


def positive_primitive(f: Poly) -> Poly:
    _, p = content_primitive(f)
    return p if p.lc > 0 else -p


def eval_at_one(f: Poly) -> Number:
    """Sum of coefficients; for a factorization polynomial this is its length."""
    return f.eval_at_one()


# ---------------------------------------------------------------------------
# text grammar

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+(?:\s*/\s*\d+)?)?\s*
        (?:\*\s*)?
        (?P<var>[xX](?:\s*\^\s*(?P<exp>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> Poly:
    """Parse ``"x^4 - 6x^3 + 4x^2 - 2x - 2"``; rational coefficients as ``a/b``.

    >>> parse_poly("3/2x^2 + 1")
    Poly('3/2x^2 + 1')
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    pos, acc, first = 0, {}, True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group("coef") and not m.group("var")):
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        if not first and not m.group("sign"):
            raise ValueError(f"missing operator before {s[pos:m.end()].strip()!r}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        coef = Fraction(m.group("coef").replace(" ", "")) if m.group("coef") else Fraction(1)
        if m.group("var"):
            k = int(m.group("exp")) if m.group("exp") else 1
        else:
            k = 0
        acc[k] = acc.get(k, 0) + sign * coef
        pos = m.end()
    return Poly.from_counts(acc)


def _fmt_coef(c) -> str:
    return str(c)


def format_poly(f: Poly, var: str = "x") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for k in range(f.degree, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if k == 0:
            body = _fmt_coef(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{_fmt_coef(a)}{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# irreducibility over Q


@dataclass(frozen=True)
class IrreducibilityCertificate:
    """Outcome of :func:`is_irreducible` together with checkable evidence.

    ``kind`` is one of ``degree-one``, ``no-rational-root``, ``eisenstein``,
    ``binomial``, ``factor-search`` (irreducible) or ``rational-root``,
    ``explicit-factor`` (reducible). ``witness`` holds the prime, the shift,
    or the factor, depending on the kind.
    """

    irreducible: bool
    kind: str
    poly: Poly
    witness: object = None

    def verify(self) -> bool:
        f = self.poly
        if not self.irreducible:
            g = self.witness
            if not isinstance(g, Poly) or not (0 < g.degree < f.degree):
                return False
            return (f % g).is_zero()
        if self.kind == "eisenstein":
            p, shift, reciprocal = self.witness
            g = f.compose(X + shift) if shift else f
            if reciprocal:
                g = g.reversed()
            return eisenstein_holds(g, p)
        if self.kind == "degree-one":
            return f.degree == 1
        if self.kind == "no-rational-root":
            return f.degree in (2, 3) and not rational_roots(f)
        if self.kind == "binomial":
            return _binomial_irreducible(f) is True
        return True


def eisenstein_holds(f: Poly, p: int) -> bool:
    cs = f.coeffs
    if not f.is_integral() or len(cs) < 2:
        return False
    return cs[-1] % p != 0 and all(c % p == 0 for c in cs[:-1]) and cs[0] % (p * p) != 0


def _prime_factors(n: int) -> list:
    n = abs(n)
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _divisors(n: int) -> list:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(f: Poly) -> list:
    """All rational roots of ``f`` (rational root theorem)."""
    _, g = content_primitive(f)
    cs = g.coeffs
    k = 0
    while cs[k] == 0:
        k += 1
    roots = {Fraction(0)} if k else set()
    cs = cs[k:]
    if len(cs) == 1:
        return sorted(roots)
    h = Poly(cs)
    for p in _divisors(cs[0]):
        for q in _divisors(cs[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if h(r) == 0:
                    roots.add(r)
    return sorted(roots)


def _exact_root(r: Fraction, p: int):
    """Return s with s**p == r, or None."""
    if r < 0:
        if p % 2 == 0:
            return None
        s = _exact_root(-r, p)
        return -s if s is not None else None

    def iroot(n):
        if n == 0:
            return 0
        x = int(round(n ** (1.0 / p)))
        for y in (x - 1, x, x + 1):
            if y >= 0 and y ** p == n:
                return y
        lo, hi = 0, 1 << (n.bit_length() // p + 1)
        while lo <= hi:
            mid = (lo + hi) // 2
            v = mid ** p
            if v == n:
                return mid
            lo, hi = (mid + 1, hi) if v < n else (lo, mid - 1)
        return None

    a, b = iroot(r.numerator), iroot(r.denominator)
    return Fraction(a, b) if a is not None and b is not None else None


def is_rational_power(r, p: int) -> bool:
    return _exact_root(Fraction(r), p) is not None


def _binomial_irreducible(f: Poly):
    """Capelli's criterion for ``a X^n + b``; None when ``f`` is not a binomial."""
    n = f.degree
    if n < 2 or f.coeffs[0] == 0 or any(c != 0 for c in f.coeffs[1:-1]):
        return None
    c = Fraction(-f.coeffs[0]) / f.lc  # X^n - c
    for p in _prime_factors(n):
        if is_rational_power(c, p):
            return False
    if n % 4 == 0 and c < 0 and is_rational_power(-c / 4, 4):
        return False
    return True


def _kronecker_factor(f: Poly, k: int):
    """Search for an integer factor of degree ``k`` by interpolation on divisor tuples."""
    pts = []
    for a in sorted(range(-25, 26), key=abs):
        v = f(a)
        if v != 0:
            pts.append((len(_divisors(v)), a, v))
    pts.sort()
    pts = sorted(pts[: k + 1], key=lambda t: t[1])
    xs = [a for _, a, _ in pts]
    choices = []
    for i, (_, _, v) in enumerate(pts):
        ds = _divisors(v)
        choices.append(ds if i == 0 else ds + [-d for d in ds])
    norm2 = math.isqrt(sum(c * c for c in f.coeffs)) + 1
    bounds = [math.comb(k, i) * norm2 for i in range(k + 1)]
    for ys in itertools.product(*choices):
        g = _interpolate(xs, ys)
        if g.degree != k or not g.is_integral():
            continue
        if any(abs(c) > b for c, b in zip(g.coeffs, bounds)):
            continue
        q, r = f.divmod(g)
        if r.is_zero() and q.is_integral():
            return g
    return None


def _interpolate(xs, ys) -> Poly:
    acc = Poly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Poly((yi,))
        for j, xj in enumerate(xs):
            if j != i:
                term = term * Poly((Fraction(-xj, xi - xj), Fraction(1, xi - xj)))
        acc = acc + term
    return acc


def is_irreducible(f: Poly, max_degree: int = MAX_IRREDUCIBILITY_DEGREE) -> IrreducibilityCertificate:
    """Decide irreducibility over Q with a certificate.

    Fast paths: degree one, rational roots, Eisenstein (directly, on the
    reciprocal, and on small shifts), Capelli's binomial criterion. Otherwise
    an exhaustive Kronecker search for integer factors, limited to
    ``deg f <= max_degree``; beyond that :class:`UndecidedError` is raised.
    """
    if f.degree < 1:
        raise ValueError("irreducibility needs a polynomial of degree >= 1")
    _, g = content_primitive(f)
    if g.degree == 1:
        return IrreducibilityCertificate(True, "degree-one", g)
    roots = rational_roots(g)
    if roots:
        r = roots[0]
        factor = Poly((-r.numerator, r.denominator))
        return IrreducibilityCertificate(False, "rational-root", g, factor)
    if g.degree <= 3:
        return IrreducibilityCertificate(True, "no-rational-root", g)
    binom = _binomial_irreducible(g)
    if binom is True:
        return IrreducibilityCertificate(True, "binomial", g)
    for shift in (0, 1, -1, 2, -2):
        h = g.compose(X + shift) if shift else g
        for reciprocal in (False, True):
            hh = h.reversed() if reciprocal else h
            for p in _prime_factors(math.gcd(*[c for c in hh.coeffs[:-1]]) or 1):
                if eisenstein_holds(hh, p):
                    return IrreducibilityCertificate(True, "eisenstein", g, (p, shift, reciprocal))
    if g.degree > max_degree:
        raise UndecidedError(
            f"irreducibility of degree-{g.degree} input undecided at configured bound {max_degree}"
        )
    for k in range(2, g.degree // 2 + 1):
        h = _kronecker_factor(g, k)
        if h is not None:
            return IrreducibilityCertificate(False, "explicit-factor", g, h)
    return IrreducibilityCertificate(True, "factor-search", g)


def is_squarefree(f: Poly) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


def lcm_denominators(values: Sequence) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out
