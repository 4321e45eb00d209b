from fractions import Fraction

import pytest

from monoid_factor.exact import Poly, parse_poly
from monoid_factor.factorize import Factorization, equal_in_monoid
from monoid_factor.monoid import (
    AlgebraicEval,
    IrreducibleRoot,
    MonoidSpec,
    RationalCyclic,
    atoms_up_to,
    make_spec,
    minimal_pair,
    spec_from_min_poly,
    spec_from_q,
    spec_from_root,
)

NON_AP = "X^4 - 6X^3 + 4X^2 - 2X - 2"


def test_rational_three_halves():
    s = spec_from_q("3/2")
    assert s.min_poly == Poly([-3, 2])
    assert s.rank == 1 and s.atoms.kind == "all-powers"
    assert s.flag("atomic") is True and s.flag("UFM") is False


def test_root_of_three_halves():
    s = make_spec(IrreducibleRoot(Fraction(3, 2), 2))
    assert s.min_poly == parse_poly("2x^2 - 3")
    assert s.rank == 2 and s.atoms.kind == "all-powers"
    assert s.flag("atomic") is True


def test_one_half_not_atomic():
    s = spec_from_q("1/2")
    assert s.flag("atomic") is False
    assert s.flag("UFM") is False and s.flag("ACCP") is False


@pytest.mark.parametrize("q", ["2", "1", "7"])
def test_integer_q_is_n0(q):
    s = spec_from_q(q)
    assert s.flag("UFM") is True
    assert s.atoms.kind == "finite" and s.atoms.exponents == (0,)
    assert all(s.flag(n) for n in ("atomic", "BF", "ACCP"))


@pytest.mark.parametrize(
    "spec, p, q",
    [
        (lambda: spec_from_q("3/2"), "2x", "3"),
        (lambda: spec_from_min_poly("x^2 - x - 1"), "x^2", "x + 1"),
        (lambda: spec_from_min_poly(NON_AP), "x^4 + 4x^2", "6x^3 + 2x + 2"),
    ],
)
def test_minimal_pair(spec, p, q):
    mp = minimal_pair(spec())
    assert (mp.p, mp.q) == (parse_poly(p), parse_poly(q))
    assert not (mp.p.support() & mp.q.support())


def test_realization_shapes():
    a = spec_from_min_poly("2X^2 - 3")
    assert a.flag("ACCP") is True and a.rank == 2
    b = spec_from_min_poly("3X^2 - 2")
    assert b.flag("atomic") is True and b.flag("ACCP") is False
    assert b.flag("BF") is False and b.flag("UFM") is False


def test_flag_order_and_provenance():
    s = spec_from_min_poly("3X^2 - 2")
    assert list(s.flags) == ["atomic", "BF", "ACCP", "UFM"]
    assert s.flags["ACCP"].provenance == "cited-rule"


def test_basis_atoms_give_ufm():
    s = spec_from_min_poly("x^2 - 2")
    assert s.atoms.exponents == (0, 1)
    assert s.flag("UFM") is True and s.flags["UFM"].provenance == "computed"


def test_unknown_flags_are_reported_not_guessed():
    s = spec_from_q("4/3")
    assert s.flag("UFM") is False
    t = spec_from_min_poly("5x^3 - 2x - 2")
    for name in ("atomic", "BF", "ACCP", "UFM"):
        f = t.flags[name]
        assert f.value is None or f.provenance in ("cited-rule", "computed")


def test_atoms_non_ap_poly():
    s = spec_from_min_poly(NON_AP)
    verdicts = atoms_up_to(s, 7)
    assert [v.exponent for v in verdicts if v.is_atom] == [0, 1, 2, 3, 4, 5]
    for v in verdicts:
        assert v.definitive
        if not v.is_atom:
            z = v.refutation
            assert z.max_exponent < v.exponent
            assert equal_in_monoid(z.as_poly(), Poly.monomial(v.exponent), s)
    assert s.atoms.kind == "finite" and s.atoms.exponents == (0, 1, 2, 3, 4, 5)


def test_atoms_rational():
    assert [v.exponent for v in atoms_up_to(spec_from_q("3/2"), 4) if v.is_atom] == [0, 1, 2, 3, 4]
    two = atoms_up_to(spec_from_q("2"), 3)
    assert [v.exponent for v in two if v.is_atom] == [0]
    assert all(v.definitive for v in two)


def test_atoms_lazy_extension():
    s = spec_from_min_poly("X^4 - X^3 - X^2 - X + 1")
    assert s.atoms.kind == "bounded-unknown" and s.atoms.verified_through >= 12
    assert s.atom_exponents(15) == list(range(16))


def test_root_choice():
    s = spec_from_min_poly("X^4 - X^3 - X^2 - X + 1", root_index=0)
    assert not s.alpha_gt_one
    with pytest.raises(ValueError):
        spec_from_min_poly("X^4 - X^3 - X^2 - X + 1", root_index=2)


@pytest.mark.parametrize(
    "route",
    [
        RationalCyclic(Fraction(-1)),
        IrreducibleRoot(Fraction(4), 2),
        IrreducibleRoot(Fraction(9, 4), 2),
        AlgebraicEval(parse_poly("x^2 - 1")),
        AlgebraicEval(parse_poly("x^2 + 1")),
    ],
)
def test_bad_routes(route):
    with pytest.raises(ValueError):
        make_spec(route)


def test_spec_json_round_trip():
    for s in (spec_from_q("3/2"), spec_from_root("5/2", 2), spec_from_min_poly(NON_AP)):
        t = MonoidSpec.from_json(s.to_json())
        assert t.min_poly == s.min_poly and t.alpha == s.alpha
        assert t.atoms == s.atoms and t.flags == s.flags and t.route == s.route


def test_describe_mentions_everything():
    text = spec_from_q("3/2").describe()
    for word in ("min_poly", "rank", "atoms", "atomic", "UFM"):
        assert word in text


def test_refutation_is_factorization():
    v = atoms_up_to(spec_from_q("2"), 2)[1]
    assert v.refutation == Factorization(((0, 2),))
