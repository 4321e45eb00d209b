from fractions import Fraction

import pytest

from monoid_factor.exact import (
    Poly,
    UndecidedError,
    X,
    content_primitive,
    denom,
    eval_at_one,
    format_poly,
    is_irreducible,
    numer,
    parse_poly,
    poly_gcd,
    rational_roots,
)

M = parse_poly("X^4 - 6X^3 + 4X^2 - 2X - 2")


def test_rational_accessors():
    assert (numer(Fraction(6, 4)), denom(Fraction(6, 4))) == (3, 2)
    assert (numer(Fraction(-3, 9)), denom(Fraction(-3, 9))) == (-1, 3)


def test_division_exact():
    q, r = divmod(X**2 - 1, X - 1)
    assert q == X + 1 and r.is_zero()


def test_product_with_cyclotomic_factor():
    # the X^2 coefficient cancels; all other coefficients after the lead are negative
    prod = M * (X**2 + X + 1)
    assert prod == parse_poly("X^6 - 5X^5 - X^4 - 4X^3 - 4X - 2")
    assert divmod(prod, M) == (X**2 + X + 1, Poly([]))


def test_division_by_hand():
    # X^5 = X*m + 6X^4 - 4X^3 + 2X^2 + 2X, then 6X^4 = 6m + 36X^3 - 24X^2 + 12X + 12
    q, r = divmod(X**5 + 6 * X**2, M)
    assert q == X + 6
    assert r == Poly([12, 14, -16, 32])
    assert q * M + r == X**5 + 6 * X**2


def test_gcd():
    assert poly_gcd(X**2 - 1, X - 1) == X - 1
    assert poly_gcd(X**2 + 1, X - 1) == Poly([1])


@pytest.mark.parametrize(
    "f, content, prim",
    [
        (Poly([-3, 2]), 1, Poly([-3, 2])),
        (Poly([-6, 0, 4]), 2, Poly([-3, 0, 2])),
        (Poly([-1, Fraction(2, 3)]), Fraction(1, 3), Poly([-3, 2])),
    ],
)
def test_content_primitive(f, content, prim):
    c, p = content_primitive(f)
    assert (c, p) == (content, prim)
    assert p * c == f


def test_eval_at_one():
    assert eval_at_one(X**5 + 6 * X**2) == 7
    assert eval_at_one(Poly()) == 0
    assert eval_at_one(parse_poly("5x^4 + 2x^3 + 4x^2 + 4x + 2")) == 17
    assert eval_at_one(parse_poly("4 + 6x + 8x^3 + 4x^4")) == 22


def test_irreducible_eisenstein():
    cert = is_irreducible(M)
    assert cert.irreducible and cert.kind == "eisenstein"
    assert cert.witness[0] == 2
    assert cert.verify()


def test_reducible_with_factor():
    cert = is_irreducible(X**2 - 1)
    assert not cert.irreducible
    assert (X**2 - 1) % cert.witness == Poly()
    assert cert.verify()


def test_two_x_squared_minus_three():
    assert is_irreducible(parse_poly("2x^2 - 3")).irreducible


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x^4 + 4", False),  # (x^2 + 2x + 2)(x^2 - 2x + 2)
        ("x^4 - 2x^2 + 9", True),
        ("x^4 - x^3 - x^2 - x + 1", True),
        ("x^3 - x - 1", True),
        ("x^6 - 1", False),
        ("x^2 - x - 1", True),
        ("x^4 - 10x^2 + 1", True),
    ],
)
def test_irreducibility_table(text, expected):
    cert = is_irreducible(parse_poly(text))
    assert cert.irreducible is expected
    assert cert.verify()


def test_irreducibility_degree_limit():
    with pytest.raises(UndecidedError):
        is_irreducible(parse_poly("x^10 + x^9 + 3x + 1"), max_degree=8)


def test_rational_roots():
    assert sorted(rational_roots(parse_poly("2x^2 - 3x + 1"))) == [Fraction(1, 2), 1]


@pytest.mark.parametrize(
    "text",
    ["x^4 - 6x^3 + 4x^2 - 2x - 2", "3/2x^2 + 1", "x", "-x^3 + 7", "0", "5/3"],
)
def test_parse_format_round_trip(text):
    assert parse_poly(format_poly(parse_poly(text))) == parse_poly(text)


def test_parse_variants():
    assert parse_poly("2*X^2 - 3") == parse_poly("2x^2-3")
    assert parse_poly("x + x") == 2 * X


@pytest.mark.parametrize("bad", ["", "x^", "2x 3", "y + 1", "3+"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_poly(bad)


def test_poly_normal_form():
    p = Poly([1, 2, 0, 0])
    assert p.degree == 1 and p.lc == 2
    assert p.support() == {0, 1}
    assert Poly([0]).is_zero() and Poly().degree == -1
