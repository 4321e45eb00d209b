"""Reference cases replayed by ``monoid-factor reproduce``.

Each case recomputes a known result from scratch and compares it with the
expected value; nothing is cached between runs, so the table is deterministic.
Scan sizes are kept small enough for the whole set to finish in about a
minute; the acceptance tests use the larger scans.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Poly, X, format_poly
from .factorize import equal_in_monoid, length_set
from .invariants import (
    ap_aap_analyze,
    betti_scan,
    catenary_element,
    catenary_monoid_scan,
    furcus_witness,
)
from .monoid import atoms_up_to, spec_from_min_poly, spec_from_q, spec_from_root
from .realroot import isolate_positive_roots
from .rootlift import lifted_betti, lifted_length_set, sample_elements

NON_AP_POLY = "X^4 - 6X^3 + 4X^2 - 2X - 2"
TWO_ROOT_POLY = "X^4 - X^3 - X^2 - X + 1"


@dataclass
class CaseResult:
    case: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"case": self.case, "passed": self.passed, "seconds": round(self.seconds, 3), "details": self.details}


def y_element(k: int) -> Poly:
    """``alpha^(3k+1) + 1``."""
    return Poly.monomial(3 * k + 1) + 1


def y_identity_rhs(k: int) -> Poly:
    """``alpha^(3k) + alpha + sum_{i<=k} alpha^(3i-1)``."""
    p = Poly.monomial(3 * k) + Poly.monomial(1)
    for i in range(1, k + 1):
        p = p + Poly.monomial(3 * i - 1)
    return p


def case_non_ap_lengths() -> dict:
    spec = spec_from_min_poly(NON_AP_POLY)
    verdicts = atoms_up_to(spec, 7)
    atoms = [v.exponent for v in verdicts if v.is_atom]
    x = X**5 + X**2 * 6
    L = length_set(x, spec)
    rep = ap_aap_analyze(L.lengths)
    ok = (
        atoms == [0, 1, 2, 3, 4, 5]
        and L.complete
        and {7, 17, 22} <= set(L.lengths)
        and 12 not in L.lengths
        and not rep.is_ap
    )
    return {"passed": ok, "atoms": atoms, "lengths": list(L.lengths), "complete": L.complete, "is_ap": rep.is_ap}


def case_aap_roots(k_max: int = 5) -> dict:
    m = spec_from_min_poly(TWO_ROOT_POLY).min_poly
    pos = isolate_positive_roots(m)
    neg = isolate_positive_roots(m.compose(-X))
    approx = sorted([round(r.approx(6), 3) for r in pos] + [-round(r.approx(6), 3) for r in neg])
    spec = spec_from_min_poly(TWO_ROOT_POLY)
    gaps = {}
    ok = approx == [0.581, 1.722] and m(0) != 0
    for k in range(1, k_max + 1):
        L = length_set(y_element(k), spec)
        inner = [l for l in L.lengths if 3 <= l <= k + 1]
        gaps[k] = {"min_two": L.lengths[:2], "between_3_and_k+1": inner}
        ok = ok and L.complete and 2 in L.lengths and k + 2 in L.lengths and 1 not in L.lengths and not inner
        ok = ok and equal_in_monoid(y_element(k), y_identity_rhs(k), spec)
    return {"passed": ok, "real_roots": approx, "y_k": gaps}


def case_betti_3_2() -> dict:
    rep = betti_scan(spec_from_q("3/2"), support=6, coeff_max=8)
    q = Fraction(3, 2)
    iso_ok = all(
        any(z.counts == ((m + 1, 2),) for z in rep.isolated.get(v, []))
        for m, v in enumerate(rep.betti)
    )
    ok = rep.matches_formula() and iso_ok and rep.betti[:4] == [q.numerator ** (m + 1) / Fraction(2) ** m for m in range(4)]
    return {"passed": bool(ok), "betti": [str(v) for v in rep.betti], "scanned": rep.scanned}


def case_catenary_2x2_3() -> dict:
    spec = spec_from_min_poly("2X^2 - 3")
    rep = catenary_monoid_scan(spec, support=3, coeff_max=3)
    ok = spec.flag("ACCP") is True and spec.rank == 2 and rep.observed == 3
    return {"passed": ok, "observed": rep.observed, "witness": format_poly(rep.witness), "scanned": rep.scanned}


def case_catenary_rational() -> dict:
    out, ok = {}, True
    for q in ("3/2", "5/2", "4/3"):
        rep = catenary_monoid_scan(spec_from_q(q), support=3, coeff_max=4)
        out[q] = {"observed": rep.observed, "formula": rep.formula}
        ok = ok and rep.observed == rep.formula and not rep.exceeds_formula()
    return {"passed": ok, "scans": out}


def case_infinite_catenary(k_max: int = 4) -> dict:
    spec = spec_from_min_poly(TWO_ROOT_POLY)
    values = []
    for k in range(1, k_max + 1):
        r = catenary_element(y_element(k), spec)
        values.append(r.value)
    # c(y_k) >= k + 2: the chain must step from length 2 to a length >= k + 2
    ok = all(a <= b for a, b in zip(values, values[1:])) and all(v >= k + 2 for k, v in enumerate(values, 1))
    return {"passed": ok, "catenary": values}


def case_root_betti() -> dict:
    spec = spec_from_root("3/2", 2)
    rep = lifted_betti(spec, 2)
    return {
        "passed": rep.ok and rep.complete,
        "family": [format_poly(p) for p in rep.family],
        "non_betti_checked": len(rep.non_betti_checked),
    }


def case_root_ap(count: int = 20) -> dict:
    spec = spec_from_root("5/2", 2)
    ok = True
    bad = []
    for b in sample_elements(spec, count, seed=1):
        direct = length_set(b, spec)
        lifted = lifted_length_set(b, spec)
        rep = ap_aap_analyze(direct.lengths)
        good = direct.complete and tuple(lifted.lengths) == tuple(direct.lengths)
        good = good and rep.is_ap and rep.difference in (0, 3)
        if not good:
            bad.append(format_poly(b))
        ok = ok and good
    return {"passed": ok, "checked": count, "failures": bad}


def case_furcus() -> dict:
    spec = spec_from_q("3/2")
    found = {}
    ok = True
    for k in (2, 3, 4):
        w = furcus_witness(spec, k)
        if w is None:
            ok = False
            found[k] = None
            continue
        L = length_set(w.element, spec)
        found[k] = {"element": format_poly(w.element), "min_length": w.min_length}
        ok = ok and L.complete and L.lengths[0] > k
    return {"passed": ok, "witnesses": found}


CASES = {
    "nonAP-lengths": case_non_ap_lengths,
    "aap-roots": case_aap_roots,
    "betti-3-2": case_betti_3_2,
    "catenary-2x2-3": case_catenary_2x2_3,
    "catenary-rational": case_catenary_rational,
    "infinite-catenary": case_infinite_catenary,
    "root-betti": case_root_betti,
    "root-ap": case_root_ap,
    "furcus": case_furcus,
}


def run_case(name: str) -> CaseResult:
    if name not in CASES:
        raise KeyError(f"unknown case {name!r}; have {', '.join(CASES)}")
    t = time.perf_counter()
    try:
        out = CASES[name]()
    except Exception as exc:  # a crash is a failed case, reported like any other
        out = {"passed": False, "error": f"{type(exc).__name__}: {exc}"}
    passed = bool(out.pop("passed"))
    return CaseResult(name, passed, out, time.perf_counter() - t)


def run_all() -> list:
    return [run_case(name) for name in CASES]
