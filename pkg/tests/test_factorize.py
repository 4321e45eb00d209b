from fractions import Fraction

import pytest

from monoid_factor.exact import Poly, UndecidedError, X, parse_poly
from monoid_factor.factorize import (
    Factorization,
    as_element,
    canonicalize,
    derived_caps,
    enumerate_factorizations,
    equal_in_monoid,
    floor_ratio,
    is_member,
    length_set,
)
from monoid_factor.monoid import spec_from_min_poly, spec_from_q, spec_from_root

from oracles import box_factorizations

NON_AP = "X^4 - 6X^3 + 4X^2 - 2X - 2"
TWO_ROOTS = "X^4 - X^3 - X^2 - X + 1"


@pytest.fixture(scope="module")
def non_ap():
    return spec_from_min_poly(NON_AP)


def test_canonicalize():
    s = spec_from_min_poly(TWO_ROOTS)
    # one division step: X^4 = X^3 + X^2 + X - 1
    assert canonicalize(X**4 + 1, s) == (0, 1, 1, 1)
    assert canonicalize(X**2, spec_from_q("3/2")) == (Fraction(9, 4),)
    assert canonicalize(Poly(), s) == (0, 0, 0, 0)


def test_equal_in_monoid(non_ap):
    assert equal_in_monoid("x^5 + 6x^2", "5x^4 + 2x^3 + 4x^2 + 4x + 2", non_ap)
    assert equal_in_monoid("x^5 + 6x^2", "4x^4 + 8x^3 + 6x + 4", non_ap)
    assert equal_in_monoid("x^7 + 1", "x^6 + x^5 + x^2 + x", spec_from_min_poly(TWO_ROOTS))
    assert not equal_in_monoid("x", "x^2", spec_from_q("3/2"))


def test_non_ap_element(non_ap):
    r = enumerate_factorizations("x^5 + 6x^2", non_ap)
    assert r.complete and not r.budget_exhausted
    expected = {
        Factorization.from_pairs([(5, 1), (2, 6)]),
        Factorization.from_pairs([(4, 5), (3, 2), (2, 4), (1, 4), (0, 2)]),
        Factorization.from_pairs([(4, 4), (3, 8), (1, 6), (0, 4)]),
    }
    assert set(r.factorizations) == expected
    assert r.lengths() == [7, 17, 22]
    L = length_set("x^5 + 6x^2", non_ap)
    assert L.lengths == (7, 17, 22) and L.complete and 12 not in L.lengths


def test_three_in_three_halves():
    s = spec_from_q("3/2")
    r = enumerate_factorizations(3, s)
    assert r.complete
    expected = box_factorizations(Poly([3]), s.min_poly, derived_caps(Poly([3]), s, 2))
    assert sorted(z.vector(2) for z in r) == sorted(list(v) for v in expected)
    assert [str(z) for z in r] == ["3*a^0", "2*a^1"]


def test_five_in_five_halves():
    s = spec_from_q("5/2")
    caps = derived_caps(Poly([5]), s, 1)
    oracle = {sum(v) for v in box_factorizations(Poly([5]), s.min_poly, caps)}
    assert oracle == {2, 5}
    assert length_set(5, s).lengths == (2, 5)


@pytest.mark.parametrize("spec", [lambda: spec_from_q("3/2"), lambda: spec_from_root("3/2", 2),
                                  lambda: spec_from_min_poly(NON_AP)])
def test_atom_factors_uniquely(spec):
    s = spec()
    r = enumerate_factorizations(X, s)
    assert list(r) == [Factorization(((1, 1),))]
    assert length_set(X, s).lengths == (1,)


def test_alpha_below_one_needs_bound():
    s = spec_from_q("2/3")
    with pytest.raises(UndecidedError):
        enumerate_factorizations(3, s)
    r = enumerate_factorizations(2, s, D=3)
    assert not r.complete
    caps = derived_caps(Poly([2]), s, 3)
    assert sorted(z.vector(3) for z in r) == sorted(list(v) for v in box_factorizations(Poly([2]), s.min_poly, caps))


def test_not_atomic_rejected():
    with pytest.raises(ValueError):
        enumerate_factorizations(1, spec_from_q("1/2"), D=3)


def test_negative_and_non_atom_inputs(non_ap):
    with pytest.raises(ValueError):
        enumerate_factorizations("x - 10", non_ap)
    with pytest.raises(ValueError, match="non-atom"):
        enumerate_factorizations("x^6", non_ap)


def test_user_caps_make_result_incomplete():
    s = spec_from_q("3/2")
    r = enumerate_factorizations(3, s, caps=[2, 5])
    assert list(r) == [Factorization(((1, 2),))]
    assert not r.complete


def test_limit_and_budget():
    s = spec_from_q("3/2")
    r = enumerate_factorizations(30, s, limit=2)
    assert len(r) == 2 and not r.complete
    r = enumerate_factorizations(300, s, budget=5)
    assert r.budget_exhausted and not r.complete


def test_budget_env(monkeypatch):
    from monoid_factor import factorize

    monkeypatch.setenv(factorize.BUDGET_ENV, "7")
    assert factorize.default_budget() == 7
    assert enumerate_factorizations(300, spec_from_q("3/2")).budget_exhausted


def test_floor_ratio():
    s = spec_from_min_poly("x^2 - 2")
    assert floor_ratio(Poly([5]), 1, s) == 3  # 5 / sqrt(2) = 3.53
    assert floor_ratio(Poly([5]), 4, s) == 1
    assert floor_ratio(Poly([5]), 5, s) == 0
    assert derived_caps(Poly([Fraction(9, 2)]), spec_from_q("3/2"), 3) == [4, 3, 2, 1]


def test_membership():
    s = spec_from_q("3/2")
    assert is_member(Fraction(9, 4), s) == (True, True)
    assert is_member(Fraction(1, 2), s) == (False, True)
    assert is_member(Fraction(-1), s) == (False, True)
    t = spec_from_min_poly("x^2 - 2")
    assert is_member(parse_poly("x + 3"), t) == (True, True)
    assert is_member(parse_poly("3/2"), t) == (False, True)


def test_as_element():
    assert as_element("9/2") == Poly([Fraction(9, 2)])
    assert as_element(3) == Poly([3])
    assert as_element(Factorization(((2, 1),))) == X**2
    with pytest.raises(TypeError):
        as_element(1.5)


def test_factorization_basics():
    z = Factorization.from_pairs([(2, 1), (0, 3), (2, 1)])
    assert z.counts == ((0, 3), (2, 2)) and z.length == 5
    assert z.vector(3) == [3, 0, 2, 0]
    assert Factorization.from_json(z.to_json()) == z
    assert str(Factorization()) == "0"
    with pytest.raises(ValueError):
        Factorization.from_pairs([(0, -1)])


def test_length_dp_matches_enumeration():
    s = spec_from_min_poly(TWO_ROOTS)
    for k in range(1, 4):
        y = Poly.monomial(3 * k + 1) + 1
        a = length_set(y, s)
        b = length_set(y, s, method="enumerate")
        assert a.lengths == b.lengths and a.complete and b.complete
