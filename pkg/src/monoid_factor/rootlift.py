"""Transfer between N0[q] and N0[alpha] with ``alpha**n = q``.

Writing ``k' = k*n + r`` turns ``alpha^k'`` into ``alpha^r * q^k``, so a
factorization over N0[alpha] is the same thing as ``n`` factorizations over
N0[q], one per residue ``r``.  Lengths add, and an element of N0[alpha] with
canonical coordinates ``t_0 .. t_(n-1)`` has length set equal to the sumset of
the length sets of the ``t_r`` in N0[q].  Everything here is a second,
independent computation path for the direct search.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import Poly
from .factorize import Factorization, canonicalize, is_member, length_set
from .invariants import betti_graph
from .monoid import IrreducibleRoot, MonoidSpec, spec_from_q


@dataclass(frozen=True)
class LiftedFactorization:
    """``n`` factorizations over N0[q]; component ``r`` collects exponents ``= r mod n``."""

    components: tuple

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def length(self) -> int:
        return sum(z.length for z in self.components)


def split_factorization(z: Factorization, n: int) -> LiftedFactorization:
    parts: list = [[] for _ in range(n)]
    for k, c in z.counts:
        parts[k % n].append((k // n, c))
    return LiftedFactorization(tuple(Factorization.from_pairs(p) for p in parts))


def join(lf: LiftedFactorization) -> Factorization:
    n = lf.n
    return Factorization.from_pairs(
        (k * n + r, c) for r, z in enumerate(lf.components) for k, c in z.counts
    )


def _root_params(spec: MonoidSpec):
    if not isinstance(spec.route, IrreducibleRoot):
        raise ValueError("spec must come from an IrreducibleRoot route")
    return spec.route.q, spec.route.n


def coordinates(b, spec: MonoidSpec) -> tuple:
    """Canonical coordinates ``t_0 .. t_(n-1)`` of ``b`` (rationals)."""
    return canonicalize(b, spec)


def sumset(sets) -> list:
    acc = {0}
    for s in sets:
        acc = {a + b for a in acc for b in s}
    return sorted(acc)


@dataclass(frozen=True)
class LiftedLengths:
    lengths: tuple
    component_lengths: tuple
    complete: bool


def lifted_length_set(b, spec: MonoidSpec, D: Optional[int] = None, budget=None) -> LiftedLengths:
    """Length set of ``b`` as the sumset of its coordinates' length sets in N0[q].

    ``D`` bounds exponents over N0[alpha]; it is required when ``q < 1`` and
    translated per residue.  Raises ``ValueError`` when some coordinate is
    outside N0[q] (then ``b`` is outside N0[alpha]).
    """
    q, n = _root_params(spec)
    base = spec_from_q(q)
    parts, complete = [], True
    for r, t in enumerate(coordinates(b, spec)):
        Dr = None if D is None else max(0, (D - r) // n)
        if t < 0:
            raise ValueError(f"coordinate {r} is negative: element not in the monoid")
        inside, definitive = is_member(Poly((t,)), base, D=Dr, budget=budget)
        if not inside:
            if definitive:
                raise ValueError(f"coordinate {r} = {t} is not in N0[{q}]: element not in the monoid")
            raise ValueError(f"coordinate {r} = {t} not found in N0[{q}] within the bounds")
        res = length_set(Poly((t,)), base, D=Dr, budget=budget)
        parts.append(tuple(res.lengths))
        complete = complete and res.complete
    return LiftedLengths(tuple(sumset(parts)), tuple(parts), complete)


def betti_family(q: Fraction, n: int, m_max: int) -> list:
    """``num^(m+1) / den^m * alpha^r`` for ``m <= m_max`` and ``r < n``, by value then r."""
    out = []
    for m in range(m_max + 1):
        v = Fraction(q.numerator ** (m + 1), q.denominator**m)
        for r in range(n):
            out.append(Poly.monomial(r) * v)
    return out


@dataclass
class LiftedBettiReport:
    family: list
    confirmed: list
    non_betti_checked: list
    failures: list
    complete: bool

    @property
    def ok(self) -> bool:
        return not self.failures and len(self.confirmed) == len(self.family)


def _base_elements(q: Fraction, support: int, coeff_max: int) -> list:
    vals = set()
    for k in range(support + 1):
        for c in range(1, coeff_max + 1):
            vals.add(c * q**k)
    fam = [Fraction(q.numerator ** (m + 1), q.denominator**m) for m in range(support)]
    return sorted(vals | set(fam))


def lifted_betti(
    spec: MonoidSpec, m_max: int, samples: int = 10, seed: int = 0, D: Optional[int] = None, budget=None
) -> LiftedBettiReport:
    """Betti family of N0[alpha] up to ``m_max`` with direct confirmation.

    Every family member is checked with :func:`betti_graph`.  Then ``samples``
    elements with two nonzero coordinates (drawn from small elements of N0[q],
    including Betti elements of N0[q]) are checked to be non-Betti.
    """
    q, n = _root_params(spec)
    if not spec.alpha_gt_one and D is None:
        D = n * (m_max + 3)
    fam = betti_family(q, n, m_max)
    rep = LiftedBettiReport(fam, [], [], [], True)
    for x in fam:
        g = betti_graph(x, spec, D=D, budget=budget)
        rep.complete = rep.complete and g.complete
        if g.is_betti:
            rep.confirmed.append(x)
        else:
            rep.failures.append(("family member not Betti", x))
    rng = random.Random(seed)
    pool = _base_elements(q, 2, 3)
    seen = set()
    while len(rep.non_betti_checked) < samples and len(seen) < n * n * len(pool) ** 2:
        r1, r2 = rng.sample(range(n), 2)
        t1, t2 = rng.choice(pool), rng.choice(pool)
        x = Poly.monomial(r1) * t1 + Poly.monomial(r2) * t2
        key = canonicalize(x, spec)
        if key in seen:
            continue
        seen.add(key)
        g = betti_graph(x, spec, D=D, budget=budget)
        rep.complete = rep.complete and g.complete
        rep.non_betti_checked.append(x)
        if g.is_betti:
            rep.failures.append(("two-coordinate element is Betti", x))
    return rep


def element_from_coordinates(coords) -> Poly:
    return Poly(tuple(Fraction(c) for c in coords))


def sample_elements(spec: MonoidSpec, count: int, seed: int = 0, support: int = 2, coeff_max: int = 3) -> list:
    """Random elements whose coordinates are sums ``sum c_k q^k`` (so in N0[q])."""
    q, n = _root_params(spec)
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        coords = [
            sum(rng.randint(0, coeff_max) * q**k for k in range(support + 1)) for _ in range(n)
        ]
        if not any(coords):
            coords[0] = Fraction(1)
        out.append(element_from_coordinates(coords))
    return out

