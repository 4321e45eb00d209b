"""Descriptions of N0[alpha]: minimal polynomial, chosen root, atoms and
classification flags.

A spec is built from one of three routes::

    make_spec(RationalCyclic(Fraction(3, 2)))           # N0[3/2]
    make_spec(IrreducibleRoot(Fraction(3, 2), 2))       # N0[sqrt(3/2)]
    make_spec(AlgebraicEval(parse_poly("x^2 - x - 1"))) # N0[golden ratio]

Classification only applies a fixed list of known rules (see ``classify``);
anything they do not decide is reported as unknown rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .exact import (
    Poly,
    UndecidedError,
    content_primitive,
    format_poly,
    is_irreducible,
    is_rational_power,
    _prime_factors,
)
from .realroot import AlgebraicNumber, compare_to_one, isolate_positive_roots

CITED = "cited-rule"
COMPUTED = "computed"
UNKNOWN = "unknown"

FLAG_NAMES = ("atomic", "BF", "ACCP", "UFM")

# atoms of N0[alpha] for alpha > 1 are checked eagerly up to this exponent
EAGER_ATOM_BOUND = 12


# --- construction routes ---------------------------------------------------


@dataclass(frozen=True)
class RationalCyclic:
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))


@dataclass(frozen=True)
class IrreducibleRoot:
    q: Fraction
    n: int

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))


@dataclass(frozen=True)
class AlgebraicEval:
    min_poly: Poly
    root_index: Optional[int] = None


Route = Union[RationalCyclic, IrreducibleRoot, AlgebraicEval]


def route_to_json(route) -> dict:
    if isinstance(route, RationalCyclic):
        return {"kind": "rational", "q": str(route.q)}
    if isinstance(route, IrreducibleRoot):
        return {"kind": "root", "q": str(route.q), "n": route.n}
    return {
        "kind": "min-poly",
        "min_poly": [str(c) for c in route.min_poly.coeffs],
        "root_index": route.root_index,
    }


def route_from_json(obj: dict):
    kind = obj["kind"]
    if kind == "rational":
        return RationalCyclic(Fraction(obj["q"]))
    if kind == "root":
        return IrreducibleRoot(Fraction(obj["q"]), int(obj["n"]))
    if kind == "min-poly":
        return AlgebraicEval(Poly(Fraction(c) for c in obj["min_poly"]), obj.get("root_index"))
    raise ValueError(f"unknown route kind {kind!r}")


# --- descriptions ----------------------------------------------------------


@dataclass(frozen=True)
class AtomDescription:
    """``all-powers``, ``finite`` (with ``exponents``) or ``bounded-unknown``.

    For ``bounded-unknown`` every exponent up to ``verified_through`` is known
    to be an atom and nothing is claimed beyond it.
    """

    kind: str
    exponents: tuple = ()
    verified_through: int = -1

    def contains(self, k: int):
        """True/False when decided, None when unknown."""
        if self.kind == "all-powers":
            return True
        if self.kind == "finite":
            return k in self.exponents
        return True if k <= self.verified_through else None

    def to_json(self) -> dict:
        return {"kind": self.kind, "exponents": list(self.exponents), "verified_through": self.verified_through}

    @classmethod
    def from_json(cls, obj: dict) -> "AtomDescription":
        return cls(obj["kind"], tuple(obj.get("exponents", ())), obj.get("verified_through", -1))


ALL_POWERS = AtomDescription("all-powers")


@dataclass(frozen=True)
class Flag:
    value: Optional[bool]
    provenance: str
    reason: str = ""

    def to_json(self) -> dict:
        return {"value": self.value, "provenance": self.provenance, "reason": self.reason}


@dataclass(frozen=True)
class MinimalPair:
    """``p - q == min_poly`` with nonnegative coefficients and disjoint supports."""

    p: Poly
    q: Poly


@dataclass(frozen=True)
class MonoidSpec:
    route: object
    min_poly: Poly
    alpha: AlgebraicNumber
    atoms: AtomDescription
    flags: dict
    alpha_gt_one: bool
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def rank(self) -> int:
        return self.min_poly.degree

    @property
    def is_rational(self) -> bool:
        return self.rank == 1

    @property
    def q(self) -> Fraction:
        """The rational ``q`` with ``alpha = q`` or ``alpha**n = q`` for binomial minimal polynomials."""
        b = binomial_shape(self.min_poly)
        if b is None:
            raise ValueError("minimal polynomial is not of the form dX^n - c")
        return b[1]

    def flag(self, name: str) -> Optional[bool]:
        return self.flags[name].value

    def atom_exponents(self, D: int) -> list:
        """Atom exponents in ``[0, D]``.

        Exact for all-powers and finite descriptions, and for alpha > 1 (where
        it extends the verified prefix on demand).  Raises when atoms are
        unknown for alpha <= 1.
        """
        a = self.atoms
        if a.kind == "all-powers":
            return list(range(D + 1))
        if a.kind == "finite":
            return [k for k in a.exponents if k <= D]
        if not self.alpha_gt_one:
            raise UndecidedError("atom set unknown for alpha <= 1 beyond the cited rules")
        known = self._cache.setdefault("atom_prefix", [a.verified_through, None])
        while known[1] is None and known[0] < D:
            k = known[0] + 1
            if _refute_atom_gt_one(self, k) is None:
                known[0] = k
            else:
                known[1] = k
        top = known[0] if known[1] is None else known[1] - 1
        return list(range(min(D, top) + 1))

    def describe(self) -> str:
        lines = [
            f"route: {route_label(self.route)}",
            f"min_poly: {format_poly(self.min_poly)}",
            f"alpha in ({self.alpha.lo}, {self.alpha.hi}) ~ {self.alpha.approx(10):.10g}",
            f"rank: {self.rank}",
            f"atoms: {atoms_label(self.atoms)}",
        ]
        for name in FLAG_NAMES:
            f = self.flags[name]
            v = {True: "yes", False: "no", None: "unknown"}[f.value]
            lines.append(f"{name}: {v} [{f.provenance}] {f.reason}".rstrip())
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "route": route_to_json(self.route),
            "min_poly": [int(c) for c in self.min_poly.coeffs],
            "interval": [str(self.alpha.lo), str(self.alpha.hi)],
            "root_index": self.alpha.root_index,
            "alpha_approx": self.alpha.approx(12),
            "alpha_gt_one": self.alpha_gt_one,
            "rank": self.rank,
            "atoms": self.atoms.to_json(),
            "flags": {k: self.flags[k].to_json() for k in FLAG_NAMES},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MonoidSpec":
        mp = Poly(obj["min_poly"])
        alpha = AlgebraicNumber(mp, Fraction(obj["interval"][0]), Fraction(obj["interval"][1]), obj["root_index"])
        flags = {k: Flag(v["value"], v["provenance"], v.get("reason", "")) for k, v in obj["flags"].items()}
        return cls(
            route_from_json(obj["route"]),
            mp,
            alpha,
            AtomDescription.from_json(obj["atoms"]),
            flags,
            bool(obj["alpha_gt_one"]),
        )


def route_label(route) -> str:
    if isinstance(route, RationalCyclic):
        return f"rational q = {route.q}"
    if isinstance(route, IrreducibleRoot):
        return f"root q = {route.q}, n = {route.n}"
    idx = "largest" if route.root_index is None else route.root_index
    return f"min-poly {format_poly(route.min_poly)}, root {idx}"


def atoms_label(a: AtomDescription) -> str:
    if a.kind == "all-powers":
        return "all powers alpha^k"
    if a.kind == "finite":
        return "alpha^k for k in {" + ", ".join(map(str, a.exponents)) + "}"
    return f"unknown (atoms verified through exponent {a.verified_through})"


# --- shape helpers ---------------------------------------------------------


def binomial_shape(f: Poly):
    """``(n, q)`` when ``f`` is ``d X^n - c`` with ``c, d > 0`` (so ``alpha**n = c/d``)."""
    cs = f.coeffs
    if len(cs) < 2 or cs[0] == 0 or any(c != 0 for c in cs[1:-1]):
        return None
    if not (cs[-1] > 0 and cs[0] < 0):
        return None
    return f.degree, Fraction(-cs[0], cs[-1])


def _is_prime(n: int) -> bool:
    return n >= 2 and _prime_factors(n) == [n]


def realization_shape(f: Poly):
    """Match ``pX^d - c`` / ``cX^d - p`` with p prime, p < c, p not dividing c.

    Returns ``("p-lead", p, c, d)``, ``("c-lead", p, c, d)`` or None.
    """
    b = binomial_shape(f)
    if b is None:
        return None
    d = f.degree
    lead, const = f.lc, -f.coeffs[0]
    if _is_prime(lead) and lead < const and const % lead:
        return ("p-lead", lead, const, d)
    if _is_prime(const) and const < lead and lead % const:
        return ("c-lead", const, lead, d)
    return None


# --- construction ----------------------------------------------------------


def make_spec(route) -> MonoidSpec:
    """Resolve a route into a fully classified spec.

    Raises ``ValueError`` for non-positive ``q``, reducible minimal polynomials,
    or when no positive root exists, and ``UndecidedError`` when irreducibility
    cannot be decided within the configured degree bound.
    """
    if isinstance(route, RationalCyclic):
        q = route.q
        if q <= 0:
            raise ValueError("q must be positive")
        mp = Poly((-q.numerator, q.denominator))
        idx = 0
    elif isinstance(route, IrreducibleRoot):
        q, n = route.q, route.n
        if q <= 0:
            raise ValueError("q must be positive")
        if n < 2:
            raise ValueError("n must be at least 2")
        for p in _prime_factors(n):
            if is_rational_power(q, p):
                raise ValueError(f"x^{n} - {q} is reducible: {q} is a {p}-th power")
        mp = Poly([-q.numerator] + [0] * (n - 1) + [q.denominator])
        idx = 0
    elif isinstance(route, AlgebraicEval):
        if route.min_poly.degree < 1:
            raise ValueError("minimal polynomial must have degree >= 1")
        _, mp = content_primitive(route.min_poly)
        if mp.lc < 0:
            mp = -mp
        cert = is_irreducible(mp)
        if not cert.irreducible:
            raise ValueError(f"{format_poly(mp)} is reducible: factor {format_poly(cert.witness)}")
        idx = route.root_index
    else:
        raise TypeError(f"unsupported route {route!r}")
    roots = isolate_positive_roots(mp)
    if not roots:
        raise ValueError(f"{format_poly(mp)} has no positive real root")
    if idx is None:
        idx = len(roots) - 1
    if not (0 <= idx < len(roots)):
        raise ValueError(f"root index {idx} out of range: {len(roots)} positive root(s)")
    alpha = roots[idx]
    gt1 = compare_to_one(alpha) > 0
    spec = MonoidSpec(route, mp, alpha, AtomDescription("bounded-unknown"), {}, gt1)
    atoms, flags = classify(spec)
    return MonoidSpec(route, mp, alpha, atoms, flags, gt1)


def spec_from_q(q) -> MonoidSpec:
    return make_spec(RationalCyclic(Fraction(q)))


def spec_from_root(q, n: int) -> MonoidSpec:
    return make_spec(IrreducibleRoot(Fraction(q), n))


def spec_from_min_poly(f, root_index=None) -> MonoidSpec:
    from .exact import parse_poly

    if isinstance(f, str):
        f = parse_poly(f)
    return make_spec(AlgebraicEval(f, root_index))


def minimal_pair(spec: MonoidSpec) -> MinimalPair:
    """Sign split of the primitive minimal polynomial into nonnegative parts."""
    f = spec.min_poly
    return MinimalPair(Poly(max(c, 0) for c in f.coeffs), Poly(max(-c, 0) for c in f.coeffs))


def classify(spec: MonoidSpec):
    """Atom description and flags ``atomic/BF/ACCP/UFM``, each with provenance.

    Rules applied, in order:

    * rational ``q``: integer ``q`` gives N0 (UFM, single atom); otherwise atomic
      iff ``1/q`` is not an integer >= 2, with every power of ``q`` an atom;
    * ``alpha**n = q`` with ``q`` and ``1/q`` not integers: atomic, all powers atoms;
    * ``alpha > 1``: bounded factorization, hence ACCP, hence atomic;
    * ``pX^d - c`` (p prime, p < c, p not dividing c): ACCP;
      ``cX^d - p``: atomic, ACCP fails; in both cases every power is an atom;
    * not UFM when both halves of the minimal pair are atom combinations.
    """
    f = spec.min_poly
    flags: dict = {}
    atoms = None

    def put(name, value, prov, reason):
        if name not in flags:
            flags[name] = Flag(value, prov, reason)

    if f.degree == 1:
        q = Fraction(-f.coeffs[0], f.coeffs[1])
        if q.denominator == 1:
            for name in FLAG_NAMES:
                put(name, True, CITED, "integer q: the monoid is N0")
            atoms = AtomDescription("finite", (0,))
        elif q.numerator == 1:
            put("atomic", False, CITED, "1/q is an integer >= 2")
        else:
            put("atomic", True, CITED, "rational q with 1/q not an integer")
            atoms = ALL_POWERS
    else:
        b = binomial_shape(f)
        if b is not None:
            n, q = b
            if q.denominator != 1 and q.numerator != 1:
                put("atomic", True, CITED, f"alpha^{n} = {q} with q, 1/q non-integers")
                atoms = ALL_POWERS
    if spec.alpha_gt_one:
        put("BF", True, CITED, "alpha > 1")
    shape = realization_shape(f)
    if shape is not None:
        kind, p, c, d = shape
        why = f"{format_poly(f, 'X')} with {p} prime, {p} < {c}"
        if kind == "p-lead":
            put("ACCP", True, CITED, why)
            put("atomic", True, CITED, why)
        else:
            put("atomic", True, CITED, why)
            put("ACCP", False, CITED, why)
        if atoms is None:
            atoms = ALL_POWERS

    _propagate(flags, put)

    if atoms is None and spec.alpha_gt_one and flags.get("atomic", Flag(None, UNKNOWN)).value:
        atoms = _atoms_gt_one(spec)

    if "UFM" not in flags and atoms is not None and flags.get("atomic", Flag(None, "")).value:
        mp = minimal_pair(spec)
        inside = all(atoms.contains(k) for k in mp.p.support() | mp.q.support())
        if inside:
            put("UFM", False, COMPUTED, "p(alpha) = q(alpha) gives two distinct factorizations")
        elif atoms.kind == "finite" and atoms.exponents == tuple(range(spec.rank)):
            put("UFM", True, COMPUTED, "the atoms are the basis 1, alpha, ..., alpha^(rank-1)")
        elif atoms.kind == "finite" and len(atoms.exponents) > spec.rank:
            put("UFM", False, COMPUTED, "more atoms than the rank forces a linear relation")
    _propagate(flags, put)
    for name in FLAG_NAMES:
        put(name, None, UNKNOWN, "not decided by the implemented rules")
    if atoms is None:
        atoms = AtomDescription("bounded-unknown", (), -1)
    return atoms, {name: flags[name] for name in FLAG_NAMES}


def _propagate(flags, put):
    """UFM => BF => ACCP => atomic, and the contrapositives."""
    chain = ("UFM", "BF", "ACCP", "atomic")
    for i, name in enumerate(chain):
        f = flags.get(name)
        if f is None:
            continue
        if f.value is True:
            for weaker in chain[i + 1:]:
                put(weaker, True, f.provenance, f"implied by {name}")
        if f.value is False:
            for stronger in chain[:i]:
                put(stronger, False, f.provenance, f"implied by not {name}")
    # a second pass settles flags set during the first
    for i, name in enumerate(chain):
        f = flags.get(name)
        if f is not None and f.value is False:
            for stronger in chain[:i]:
                put(stronger, False, f.provenance, f"implied by not {name}")


def _refute_atom_gt_one(spec: MonoidSpec, k: int):
    """A representation of ``alpha^k`` by lower powers, or None (alpha > 1)."""
    if k == 0:
        return None
    from .factorize import _solve

    res = _solve(spec, Poly.monomial(k), D=k - 1, caps=None, atoms=range(k), limit=1, budget=10**7)
    if res.budget_exhausted:
        raise UndecidedError(f"budget exhausted deciding whether alpha^{k} is an atom")
    return res.factorizations[0] if res.factorizations else None


def _atoms_gt_one(spec: MonoidSpec) -> AtomDescription:
    """For alpha > 1 the atoms are a prefix ``alpha^0 .. alpha^(K-1)``."""
    for k in range(1, EAGER_ATOM_BOUND + 1):
        if _refute_atom_gt_one(spec, k) is not None:
            return AtomDescription("finite", tuple(range(k)))
    return AtomDescription("bounded-unknown", (), EAGER_ATOM_BOUND)


@dataclass(frozen=True)
class AtomVerdict:
    """Whether ``alpha^exponent`` is an atom.

    ``definitive`` is False for "atom within the searched bound" answers.
    ``refutation`` is a representation of ``alpha^exponent`` by other powers.
    """

    exponent: int
    is_atom: bool
    definitive: bool
    refutation: object = None


def atoms_up_to(spec: MonoidSpec, K: int, extra: Optional[int] = None, budget: int = 10**6) -> list:
    """Search-based atom verdicts for exponents ``0..K``.

    For alpha > 1 a power is a non-atom iff it is a combination of lower powers,
    which the complete search decides.  For alpha <= 1 the search also uses up
    to ``extra`` higher exponents (default ``2 * rank + 2``) and positive
    verdicts only hold within that bound.
    """
    from .factorize import _solve

    out = []
    if spec.is_rational and spec.q == 1:
        # every power equals 1; exponent 0 names the single atom
        for k in range(K + 1):
            wit = None if k == 0 else _single(0)
            out.append(AtomVerdict(k, k == 0, True, wit))
        return out
    if extra is None:
        extra = 2 * spec.rank + 2
    for k in range(K + 1):
        if spec.alpha_gt_one:
            if k == 0:
                out.append(AtomVerdict(0, True, True))
                continue
            res = _solve(spec, Poly.monomial(k), D=k - 1, caps=None, atoms=range(k), limit=1, budget=budget)
            definitive = not res.budget_exhausted
        else:
            D = k + extra
            res = _solve(
                spec, Poly.monomial(k), D=D, caps=None, atoms=[i for i in range(D + 1) if i != k],
                limit=1, budget=budget,
            )
            definitive = False
        if res.factorizations:
            out.append(AtomVerdict(k, False, True, res.factorizations[0]))
        else:
            out.append(AtomVerdict(k, True, definitive))
    return out


def _single(k):
    from .factorize import Factorization

    return Factorization(((k, 1),))
