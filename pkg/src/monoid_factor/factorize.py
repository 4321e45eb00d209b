"""Elements, canonical values and factorization sets.

An element is written as a polynomial ``x`` and denotes ``x(alpha)``.  Two
expressions are the same element iff the minimal polynomial divides their
difference, so the remainder modulo it (the *canonical value*) is a complete
invariant.

A factorization is a multiset of atoms ``alpha^k``, stored as sorted
``(exponent, count)`` pairs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import kernels
from ._search import prepare, scaled_target
from .exact import Poly, UndecidedError, parse_poly
from .monoid import MonoidSpec
from .realroot import floor_log, sign_at_root

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "MONOID_FACTOR_BUDGET"


def default_budget() -> int:
    v = os.environ.get(BUDGET_ENV)
    return int(v) if v else DEFAULT_BUDGET


@dataclass(frozen=True, order=True)
class Factorization:
    """Multiset of atoms ``alpha^k`` as sorted ``(k, count)`` pairs with count > 0."""

    counts: tuple = ()

    @classmethod
    def from_vector(cls, vec: Sequence[int]) -> "Factorization":
        return cls(tuple((k, int(c)) for k, c in enumerate(vec) if c))

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "Factorization":
        acc: dict = {}
        for k, c in pairs:
            if c < 0:
                raise ValueError("negative multiplicity")
            acc[int(k)] = acc.get(int(k), 0) + int(c)
        return cls(tuple(sorted((k, c) for k, c in acc.items() if c)))

    @property
    def length(self) -> int:
        return sum(c for _, c in self.counts)

    def __len__(self) -> int:
        return self.length

    def as_dict(self) -> dict:
        return dict(self.counts)

    def vector(self, D: int) -> list:
        out = [0] * (D + 1)
        for k, c in self.counts:
            out[k] = c
        return out

    @property
    def max_exponent(self) -> int:
        return self.counts[-1][0] if self.counts else -1

    def as_poly(self) -> Poly:
        return Poly.from_counts(self.counts)

    def to_json(self) -> list:
        return [[k, c] for k, c in self.counts]

    @classmethod
    def from_json(cls, obj) -> "Factorization":
        return cls.from_pairs(obj)

    def __str__(self) -> str:
        if not self.counts:
            return "0"
        return " + ".join(f"{c}*a^{k}" for k, c in self.counts)


@dataclass(frozen=True)
class FactorizationSetResult:
    """Enumerated factorizations with a completeness certificate.

    ``complete`` holds only when alpha > 1, ``D`` reaches ``floor_log`` of the
    value and every cap is at least the derived bound; then the list is all of
    Z(x).  Otherwise it is Z(x) restricted to the bounds.
    """

    factorizations: tuple
    complete: bool
    D: int
    caps: tuple
    nodes: int
    budget_exhausted: bool

    def lengths(self) -> list:
        return sorted({z.length for z in self.factorizations})

    def __len__(self):
        return len(self.factorizations)

    def __iter__(self):
        return iter(self.factorizations)


@dataclass(frozen=True)
class LengthSetResult:
    lengths: tuple
    complete: bool
    D: int
    caps: tuple
    states: int
    budget_exhausted: bool

    @property
    def min(self):
        return self.lengths[0] if self.lengths else None


def as_element(x) -> Poly:
    """Coerce ints, Fractions, strings (``"x^5 + 6x^2"``, ``"9/2"``) and Factorizations."""
    if isinstance(x, Poly):
        return x
    if isinstance(x, Factorization):
        return x.as_poly()
    if isinstance(x, str):
        return parse_poly(x)
    if isinstance(x, (int, Fraction)):
        return Poly((x,))
    raise TypeError(f"cannot interpret {x!r} as an element")


def canonicalize(x, spec: MonoidSpec) -> tuple:
    """Coordinates of ``x(alpha)`` in the basis ``1, alpha, ..., alpha^(rank-1)``."""
    r = as_element(x) % spec.min_poly
    return tuple(Fraction(c) for c in r.padded(spec.rank))


def equal_in_monoid(x, y, spec: MonoidSpec) -> bool:
    return ((as_element(x) - as_element(y)) % spec.min_poly).is_zero()


def value_sign(x, spec: MonoidSpec) -> int:
    return sign_at_root(as_element(x), spec.alpha)


def compare_values(x, y, spec: MonoidSpec) -> int:
    """Sign of ``x(alpha) - y(alpha)``."""
    return sign_at_root(as_element(x) - as_element(y), spec.alpha)


def floor_ratio(x: Poly, k: int, spec: MonoidSpec) -> int:
    """Largest ``c >= 0`` with ``c * alpha^k <= x(alpha)`` (x(alpha) >= 0)."""
    alpha = spec.alpha
    if alpha.is_rational():
        v = Fraction(x(alpha.rational_value())) / alpha.rational_value() ** k
        return max(0, v.numerator // v.denominator)
    xk = Poly.monomial(k)
    try:
        a = alpha.approx(15)
        c = max(0, int(float(x(Fraction(a))) / a**k))
    except OverflowError:
        c = 0
    while c > 0 and sign_at_root(x - xk * c, alpha) < 0:
        c = max(0, c // 2 if c > 8 else c - 1)
    step = 1
    while sign_at_root(x - xk * (c + step), alpha) >= 0:
        c += step
        step *= 2
    # now c feasible, c + step infeasible
    while step > 1:
        step //= 2
        if sign_at_root(x - xk * (c + step), alpha) >= 0:
            c += step
    return c


def derived_caps(x: Poly, spec: MonoidSpec, D: int) -> list:
    return [floor_ratio(x, k, spec) for k in range(D + 1)]


def _derived(x: Poly, spec: MonoidSpec, D: int) -> list:
    s = sign_at_root(x, spec.alpha)
    if s < 0:
        raise ValueError("element value is negative")
    return derived_caps(x, spec, D) if s > 0 else [0] * (D + 1)


def _solve(spec, x, D, caps, atoms, limit=None, budget=None, want="enumerate", derived=None):
    """Shared driver: enumerate (or length mask) over exponents in ``atoms`` up to ``D``."""
    x = as_element(x)
    budget = default_budget() if budget is None else budget
    if derived is None:
        derived = _derived(x, spec, D)
    if caps is None:
        caps = derived
    else:
        caps = [min(int(a), b) for a, b in zip(list(caps) + [0] * (D + 1 - len(caps)), derived)]
    allowed = set(atoms)
    caps = [c if k in allowed else 0 for k, c in enumerate(caps[: D + 1])]
    prob = prepare(spec.min_poly, D, caps)
    T = scaled_target(x % spec.min_poly, spec.rank, prob.L)
    if want == "enumerate":
        if T is None:
            return FactorizationSetResult((), False, D, tuple(caps), 0, False)
        sols, nodes, ex = kernels.enumerate_solutions(prob, T, budget, limit)
        fs = tuple(sorted((Factorization.from_vector(v) for v in sols), key=_counts))
        return FactorizationSetResult(fs, False, D, tuple(caps), nodes, ex)
    if want == "lengths":
        if T is None:
            return LengthSetResult((), False, D, tuple(caps), 0, False)
        mask, states, ex = kernels.length_mask(prob, T, budget)
        ls = tuple(i for i in range(mask.bit_length()) if mask >> i & 1)
        return LengthSetResult(ls, False, D, tuple(caps), states, ex)
    if want == "exists":
        if T is None:
            return False, 0, False
        return kernels.exists(prob, T, budget)
    raise ValueError(want)


def _counts(z):
    return z.counts


def _resolve_bounds(x: Poly, spec: MonoidSpec, D: Optional[int]):
    """Exponent bound and whether it certifies completeness."""
    if spec.flag("atomic") is False:
        raise ValueError("the monoid is not atomic; factorizations are not defined")
    s = sign_at_root(x, spec.alpha)
    if s < 0:
        raise ValueError("element value is negative")
    if spec.alpha_gt_one:
        if s == 0 or sign_at_root(x - 1, spec.alpha) < 0:
            need = 0
        else:
            need = floor_log(x, spec.alpha)
        if D is None:
            return need, True
        return D, D >= need
    if D is None:
        raise UndecidedError("alpha <= 1: an explicit exponent bound D is required")
    return D, False


def _check_support(x: Poly, spec: MonoidSpec, atom_exps):
    if not x.is_integral() or any(c < 0 for c in x.coeffs):
        return
    bad = [k for k in x.support() if k not in atom_exps]
    if bad:
        raise ValueError(f"expression uses non-atom exponent(s) {sorted(bad)}")


def enumerate_factorizations(
    x, spec: MonoidSpec, D: Optional[int] = None, caps=None, budget: Optional[int] = None,
    limit: Optional[int] = None,
) -> FactorizationSetResult:
    """All factorizations of ``x`` with exponents ``<= D`` and counts ``<= caps``.

    ``D`` defaults to ``floor_log(x)`` when alpha > 1 and is required
    otherwise; caps default to the derived bounds ``floor(x / alpha^k)``.
    A node budget (default ``10**7`` or ``$MONOID_FACTOR_BUDGET``) guards the
    search; hitting it yields ``budget_exhausted=True`` and ``complete=False``.
    """
    x = as_element(x)
    D, bound_ok = _resolve_bounds(x, spec, D)
    atom_exps = spec.atom_exponents(max(D, x.degree))
    _check_support(x, spec, set(atom_exps))
    derived = _derived(x, spec, D)
    res = _solve(spec, x, D, caps, atom_exps, limit=limit, budget=budget, derived=derived)
    caps_ok = caps is None or all(c >= d for c, d in zip(list(caps) + [0] * (D + 1), derived))
    complete = bound_ok and caps_ok and spec.alpha_gt_one and not res.budget_exhausted
    complete = complete and (limit is None or len(res.factorizations) < limit)
    return FactorizationSetResult(res.factorizations, complete, res.D, res.caps, res.nodes, res.budget_exhausted)


def length_set(
    x, spec: MonoidSpec, D: Optional[int] = None, caps=None, budget: Optional[int] = None,
    method: str = "dp",
) -> LengthSetResult:
    """Set of lengths of ``x`` with the same bounds and completeness rules as
    :func:`enumerate_factorizations`.

    ``method="dp"`` memoizes on residual states instead of listing every
    factorization, which is much cheaper when factorizations are numerous.
    """
    x = as_element(x)
    if method == "enumerate":
        r = enumerate_factorizations(x, spec, D, caps, budget)
        return LengthSetResult(tuple(r.lengths()), r.complete, r.D, r.caps, r.nodes, r.budget_exhausted)
    D, bound_ok = _resolve_bounds(x, spec, D)
    atom_exps = spec.atom_exponents(max(D, x.degree))
    _check_support(x, spec, set(atom_exps))
    derived = _derived(x, spec, D)
    res = _solve(spec, x, D, caps, atom_exps, budget=budget, want="lengths", derived=derived)
    caps_ok = caps is None or all(c >= d for c, d in zip(list(caps) + [0] * (D + 1), derived))
    complete = bound_ok and caps_ok and spec.alpha_gt_one and not res.budget_exhausted
    return LengthSetResult(res.lengths, complete, res.D, res.caps, res.states, res.budget_exhausted)


def is_member(x, spec: MonoidSpec, D: Optional[int] = None, budget: Optional[int] = None):
    """Whether ``x(alpha)`` lies in N0[alpha]; ``(answer, definitive)``."""
    x = as_element(x)
    s = sign_at_root(x, spec.alpha)
    if s < 0:
        return False, True
    if s == 0:
        return True, True
    D, bound_ok = _resolve_bounds(x, spec, D)
    atom_exps = spec.atom_exponents(D)
    found, _, ex = _solve(spec, x, D, None, atom_exps, budget=budget, want="exists")
    if found:
        return True, True
    return False, bound_ok and spec.alpha_gt_one and not ex
