"""Invariants of factorization sets: gcd, distance, catenary degree, Betti
elements, AP/AAP structure of length sets, and furcus witnesses.

Two scanning strategies are used for Betti elements.  An element ``x`` is a
Betti element iff its *atom graph* is disconnected: the vertices are the atoms
``a`` with ``x - a`` in the monoid, and ``a, b`` are joined when ``x - a - b``
is in the monoid.  This graph has the same number of components as the Betti
graph, but only needs membership tests, so it scales to elements with millions
of factorizations.  Explicit Betti graphs (union-find over the enumerated
factorizations) are used to cross-check.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .exact import Poly
from .factorize import (
    Factorization,
    as_element,
    canonicalize,
    enumerate_factorizations,
    is_member,
    length_set,
)
from .monoid import MonoidSpec
from .realroot import floor_log, sign_at_root


# --- gcd and distance ------------------------------------------------------


def fact_gcd(z: Factorization, w: Factorization) -> Factorization:
    """Atom-wise minimum of multiplicities."""
    b = w.as_dict()
    return Factorization(tuple((k, min(c, b[k])) for k, c in z.counts if k in b))


def distance(z: Factorization, w: Factorization) -> int:
    g = fact_gcd(z, w).length
    return max(z.length - g, w.length - g)


# --- catenary degree -------------------------------------------------------


@dataclass(frozen=True)
class CatenaryResult:
    value: int
    complete: bool
    count: int

    @property
    def is_lower_bound(self) -> bool:
        return not self.complete


def catenary_of_set(facts) -> int:
    """Catenary degree of a finite factorization set.

    The least ``N`` making the threshold graph (edges of distance ``<= N``)
    connected is the largest edge of a minimum spanning tree.
    """
    facts = list(facts)
    if len(facts) <= 1:
        return 0
    D = max(z.max_exponent for z in facts)
    Z = np.array([z.vector(D) for z in facts], dtype=np.int64)
    return int(kernels.mst_bottleneck(Z))


def catenary_element(x, spec: MonoidSpec, D=None, caps=None, budget=None) -> CatenaryResult:
    """``c(x)``; when the enumeration is incomplete the value is only a bound
    for the restricted factorization set."""
    r = enumerate_factorizations(x, spec, D=D, caps=caps, budget=budget)
    if r.budget_exhausted:
        raise RuntimeError("node budget exhausted while enumerating factorizations")
    return CatenaryResult(catenary_of_set(r.factorizations), r.complete, len(r))


# --- Betti graphs ----------------------------------------------------------


@dataclass(frozen=True)
class BettiReport:
    element: tuple
    components: tuple
    is_betti: bool
    complete: bool

    def to_json(self) -> dict:
        return {
            "element": [str(c) for c in self.element],
            "components": [[z.to_json() for z in comp] for comp in self.components],
            "is_betti": self.is_betti,
            "complete": self.complete,
        }


def betti_components(facts) -> list:
    """Connected components under ``gcd != 0``, via union-find over shared atoms."""
    facts = sorted(facts)
    parent = list(range(len(facts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict = {}
    for i, z in enumerate(facts):
        for k, _ in z.counts:
            j = owner.setdefault(k, i)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict = {}
    for i, z in enumerate(facts):
        groups.setdefault(find(i), []).append(z)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def betti_graph(x, spec: MonoidSpec, D=None, caps=None, budget=None) -> BettiReport:
    r = enumerate_factorizations(x, spec, D=D, caps=caps, budget=budget)
    if r.budget_exhausted:
        raise RuntimeError("node budget exhausted while enumerating factorizations")
    comps = betti_components(r.factorizations)
    return BettiReport(canonicalize(x, spec), tuple(comps), len(comps) >= 2, r.complete)


def _components_from_adjacency(vertices, adj) -> list:
    """Components of a graph on ``vertices`` given ``adj[v]`` as sets."""
    seen, out = set(), []
    for v in vertices:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return sorted(out)


def atom_graph(x, spec: MonoidSpec, D=None, budget=None):
    """Components of the atom graph of ``x`` as lists of exponents, plus completeness."""
    x = as_element(x)
    if spec.alpha_gt_one:
        top = floor_log(x, spec.alpha) if sign_at_root(x - 1, spec.alpha) >= 0 else -1
        if D is not None:
            top = min(top, D)
    else:
        if D is None:
            raise ValueError("alpha <= 1: an explicit exponent bound D is required")
        top = D
    atoms = spec.atom_exponents(top) if top >= 0 else []
    memo: dict = {}
    complete = True

    def member(y):
        nonlocal complete
        key = canonicalize(y, spec)
        if key not in memo:
            ans, definitive = is_member(y, spec, D=D, budget=budget)
            memo[key] = ans
            complete = complete and definitive
        return memo[key]

    verts = [k for k in atoms if member(x - Poly.monomial(k))]
    adj = {k: set() for k in verts}
    for a, b in itertools.combinations(verts, 2):
        if member(x - Poly.monomial(a) - Poly.monomial(b)):
            adj[a].add(b)
            adj[b].add(a)
    return _components_from_adjacency(verts, adj), complete and spec.alpha_gt_one


# --- element scans ---------------------------------------------------------


def scan_elements(spec: MonoidSpec, support: int, coeff_max: int):
    """Distinct elements ``sum c_i alpha^i`` with ``i <= support`` and ``c_i <= coeff_max``.

    Returns ``(canonical value, representative poly)`` pairs in increasing order
    of value; the representative is the first expression met in lexicographic
    order of coefficient vectors.
    """
    if spec.is_rational:
        return _scan_rational(spec.q, support, coeff_max)
    seen: dict = {}
    for cs in itertools.product(range(coeff_max + 1), repeat=support + 1):
        if not any(cs):
            continue
        p = Poly(cs)
        key = canonicalize(p, spec)
        if key not in seen:
            seen[key] = p
    items = list(seen.items())

    def cmp(a, b):
        s = sign_at_root(a[1] - b[1], spec.alpha)
        return s if s else (a[0] > b[0]) - (a[0] < b[0])

    approx = Fraction(spec.alpha.approx(15))
    items.sort(key=lambda kv: float(kv[1](approx)))
    items.sort(key=functools.cmp_to_key(cmp))
    return items


def _scan_rational(q: Fraction, support: int, coeff_max: int):
    n, d = q.numerator, q.denominator
    S = support
    weights = np.array([n**i * d ** (S - i) for i in range(S + 1)], dtype=object)
    if max(weights) * coeff_max * (S + 1) < 1 << 62:
        weights = weights.astype(np.int64)
    grid = np.indices((coeff_max + 1,) * (S + 1)).reshape(S + 1, -1).T
    scaled = grid @ weights
    uniq, first = np.unique(scaled, return_index=True)
    out = []
    for N, i in zip(uniq.tolist(), first.tolist()):
        if N == 0:
            continue
        out.append(((Fraction(int(N), d**S),), Poly(grid[i].tolist())))
    return out


class RationalGrid:
    """Membership table for N0[n/d] (n > d) on the values ``v / d^K``.

    Built by an unbounded knapsack per atom ``(n/d)^i`` with ``i <= K``;
    since every factorization of a value ``<= top`` uses only exponents
    ``<= floor_log(top)``, membership is exact for values up to ``top``.
    """

    def __init__(self, q: Fraction, top: Fraction):
        n, d = q.numerator, q.denominator
        if not n > d:
            raise ValueError("grid needs q > 1")
        K = 0
        while Fraction(n, d) ** (K + 1) <= top:
            K += 1
        self.n, self.d, self.K = n, d, K
        self.scale = d**K
        size = int(top * self.scale) + 1
        self.size = size
        member = np.zeros(size, dtype=bool)
        member[0] = True
        for i in range(K + 1):
            s = n**i * d ** (K - i)
            if s >= size:
                continue
            pad = (-size) % s
            buf = np.concatenate([member, np.zeros(pad, dtype=bool)]).reshape(-1, s)
            np.logical_or.accumulate(buf, axis=0, out=buf)
            member = buf.reshape(-1)[:size]
        self.member = member
        self.atom_values = [n**i * d ** (K - i) for i in range(K + 1)]

    def scaled(self, v: Fraction) -> int:
        s = v * self.scale
        if s.denominator != 1:
            raise ValueError("value not on the grid")
        return s.numerator

    def contains_scaled(self, N: int) -> bool:
        if N < 0:
            return False
        if N >= self.size:
            raise ValueError("value beyond the grid")
        return bool(self.member[N])

    def disconnected(self, Ns) -> np.ndarray:
        """Vectorized Betti test: whether the atom graph of each scaled value is disconnected."""
        Ns = np.asarray(Ns, dtype=np.int64)
        A = np.array(self.atom_values, dtype=np.int64)
        k = len(A)

        def member(idx):
            ok = idx >= 0
            out = np.zeros(idx.shape, dtype=bool)
            out[ok] = self.member[idx[ok]]
            return out

        V = member(Ns[:, None] - A[None, :])
        E = member(Ns[:, None, None] - A[None, :, None] - A[None, None, :])
        E &= V[:, :, None] & V[:, None, :]
        big = np.int64(k)
        labels = np.where(V, np.arange(k)[None, :], big)
        for _ in range(k):
            cand = np.where(E, labels[:, None, :], big).min(axis=2)
            new = np.minimum(labels, cand)
            if np.array_equal(new, labels):
                break
            labels = new
        roots = (labels == np.arange(k)[None, :]) & V
        return roots.sum(axis=1) >= 2

    def atom_graph(self, N: int):
        verts = [i for i, a in enumerate(self.atom_values) if a <= N and self.member[N - a]]
        adj = {i: set() for i in verts}
        for a, b in itertools.combinations(verts, 2):
            r = N - self.atom_values[a] - self.atom_values[b]
            if r >= 0 and self.member[r]:
                adj[a].add(b)
                adj[b].add(a)
        return _components_from_adjacency(verts, adj)


@dataclass
class BettiScanReport:
    betti: list = field(default_factory=list)
    scanned: int = 0
    complete: bool = True
    formula: Optional[list] = None
    isolated: dict = field(default_factory=dict)
    method: str = ""

    def matches_formula(self) -> Optional[bool]:
        if self.formula is None:
            return None
        return sorted(self.betti) == sorted(self.formula)


def rational_betti_family(q: Fraction, values) -> list:
    """Members of ``{n^(m+1) / d^m : m >= 0}`` among ``values``."""
    n, d = q.numerator, q.denominator
    values = set(values)
    out, m = [], 0
    top = max(values) if values else 0
    while Fraction(n ** (m + 1), d**m) <= top or (q < 1 and m < 64):
        v = Fraction(n ** (m + 1), d**m)
        if v in values:
            out.append(v)
        m += 1
        if q >= 1 and m > 10**4:
            break
    return sorted(out)


def predicted_isolated_vertex(q: Fraction, m: int) -> Factorization:
    """The single-atom factorization isolated in the Betti graph of ``n^(m+1)/d^m``."""
    n, d = q.numerator, q.denominator
    if d < n:
        return Factorization(((m + 1, d),))
    return Factorization(((m, n),))


def betti_scan(spec: MonoidSpec, support: int = 4, coeff_max: int = 4, D=None, budget=None) -> BettiScanReport:
    """Classify every scanned element (see :func:`scan_elements`) as Betti or not.

    Rational ``q > 1`` uses an exact membership grid; other specs use the
    search kernels.  For rational specs the formula family restricted to the
    scanned values is attached for comparison, and for Betti elements the
    single-atom components are recorded in ``isolated``.
    """
    items = scan_elements(spec, support, coeff_max)
    rep = BettiScanReport(scanned=len(items))
    if spec.is_rational and spec.alpha_gt_one and spec.flag("UFM") is not True:
        q = spec.q
        values = [kv[0][0] for kv in items]
        grid = RationalGrid(q, max(values))
        rep.method = "rational-grid"
        Ns = [grid.scaled(v) for v in values]
        flags = np.zeros(len(Ns), dtype=bool)
        for start in range(0, len(Ns), 20000):
            flags[start:start + 20000] = grid.disconnected(Ns[start:start + 20000])
        for v, N, hit in zip(values, Ns, flags.tolist()):
            if not hit:
                continue
            comps = grid.atom_graph(N)
            rep.betti.append(v)
            rep.isolated[v] = [
                Factorization(((c[0], v / q ** c[0]),))
                for c in comps
                if len(c) == 1 and (v / q ** c[0]).denominator == 1
            ]
        rep.formula = rational_betti_family(q, values)
        return rep
    rep.method = "atom-graph"
    for key, p in items:
        comps, complete = atom_graph(p, spec, D=D, budget=budget)
        rep.complete = rep.complete and complete
        if len(comps) >= 2:
            rep.betti.append(key if not spec.is_rational else key[0])
    if spec.is_rational and spec.flag("atomic") and spec.q.denominator != 1:
        rep.formula = rational_betti_family(spec.q, [kv[0][0] for kv in items])
    return rep


# --- catenary scans --------------------------------------------------------


@dataclass
class CatenaryScanReport:
    observed: int = 0
    witness: Optional[Poly] = None
    values: dict = field(default_factory=dict)
    scanned: int = 0
    complete: bool = True
    formula: Optional[int] = None
    largest_set: int = 0

    def exceeds_formula(self) -> list:
        if self.formula is None:
            return []
        return [k for k, v in self.values.items() if v > self.formula]


def catenary_monoid_scan(
    spec: MonoidSpec, support: int = 4, coeff_max: int = 4, D=None, budget=None
) -> CatenaryScanReport:
    """Largest ``c(x)`` over the scanned elements.

    For alpha <= 1 factorizations are restricted to exponents ``<= D``
    (default ``support``).  Rational non-integer atomic specs also get the
    closed form ``max(n, d)`` attached.
    """
    items = scan_elements(spec, support, coeff_max)
    rep = CatenaryScanReport(scanned=len(items))
    if not spec.alpha_gt_one and D is None:
        D = support
    for key, p in items:
        r = enumerate_factorizations(p, spec, D=D, budget=budget)
        if r.budget_exhausted:
            raise RuntimeError("node budget exhausted during catenary scan")
        c = catenary_of_set(r.factorizations)
        rep.values[key] = c
        rep.complete = rep.complete and r.complete
        rep.largest_set = max(rep.largest_set, len(r))
        if c > rep.observed:
            rep.observed, rep.witness = c, p
    if spec.is_rational and spec.flag("atomic") and spec.flag("UFM") is False:
        q = spec.q
        rep.formula = max(q.numerator, q.denominator)
    return rep


# --- AP / AAP --------------------------------------------------------------


@dataclass(frozen=True)
class LengthSetReport:
    lengths: tuple
    is_ap: bool
    difference: Optional[int]
    aap: Optional[dict]
    complete: bool = True

    def to_json(self) -> dict:
        return {
            "lengths": list(self.lengths),
            "is_ap": self.is_ap,
            "difference": self.difference,
            "aap": self.aap,
            "complete": self.complete,
        }


def _ap_difference(S):
    if len(S) == 1:
        return 0
    diffs = {b - a for a, b in zip(S, S[1:])}
    return diffs.pop() if len(diffs) == 1 else None


def aap_decomposition(S, d: int, N: int, require_residue: bool = True):
    """An AAP decomposition of ``S`` with difference ``d`` and bound ``N``, or None.

    Returns ``{"c", "d", "N", "head", "core", "tail"}`` with head/core/tail
    shifted by ``c`` (so ``min core = 0``).  With ``require_residue`` every
    element must be congruent to ``c`` modulo ``d``.
    """
    S = sorted(set(S))
    Sset = set(S)
    best = None
    for c in S:
        if require_residue and any((s - c) % d for s in S):
            continue
        K = 0
        while c + (K + 1) * d in Sset:
            K += 1
        end = c + K * d
        if any(c < s < end and (s - c) % d for s in S):
            continue
        if S[0] < c - N or S[-1] > end + N:
            continue
        cand = {
            "c": c,
            "d": d,
            "N": N,
            "head": [s - c for s in S if s < c],
            "core": [s - c for s in S if c <= s <= end],
            "tail": [s - c for s in S if s > end],
        }
        if best is None or len(cand["core"]) > len(best["core"]):
            best = cand
    return best


def ap_aap_analyze(
    S, d: Optional[int] = None, N: Optional[int] = None, max_N: int = 8, complete: bool = True,
    require_residue: bool = True,
) -> LengthSetReport:
    """AP test plus an AAP decomposition.

    With ``d`` and ``N`` given the decomposition is checked for exactly those;
    otherwise every ``d`` up to the largest gap and ``N <= max_N`` is tried,
    smallest ``N`` first.
    """
    S = tuple(sorted(set(S)))
    if not S:
        raise ValueError("empty length set")
    diff = _ap_difference(S)
    is_ap = diff is not None
    if d is not None:
        dec = aap_decomposition(S, d, N if N is not None else 0, require_residue)
        return LengthSetReport(S, is_ap, diff, dec, complete)
    gaps = [b - a for a, b in zip(S, S[1:])] or [1]
    dec = None
    for n in range(max_N + 1):
        for dd in range(1, max(gaps) + 1):
            dec = aap_decomposition(S, dd, n, require_residue)
            if dec is not None:
                break
        if dec is not None:
            break
    return LengthSetReport(S, is_ap, diff, dec, complete)


# --- furcus ----------------------------------------------------------------


@dataclass(frozen=True)
class FurcusWitness:
    element: Poly
    min_length: int
    lengths: tuple
    tried: int


def furcus_witness(spec: MonoidSpec, k: int, budget: int = 2000, support: int = 3, coeff_max: int = 3):
    """First element whose shortest factorization is longer than ``k``.

    Natural numbers ``1..budget`` are tried first, then small-support
    expressions.  Returns None when nothing is found; that is not a proof
    that the monoid is ``k``-furcus.
    """
    if not spec.alpha_gt_one:
        raise ValueError("furcus search needs alpha > 1 for complete length sets")
    tried = 0
    if k <= 0:
        a = Poly((1,))
        return FurcusWitness(a, 1, (1,), 1)
    candidates = itertools.chain(
        (Poly((N,)) for N in range(1, budget + 1)),
        (p for _, p in scan_elements(spec, support, coeff_max)),
    )
    for p in candidates:
        tried += 1
        r = length_set(p, spec)
        if not r.complete:
            continue
        if r.lengths and r.lengths[0] > k:
            return FurcusWitness(p, r.lengths[0], r.lengths, tried)
    return None
