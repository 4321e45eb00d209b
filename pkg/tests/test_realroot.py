import threading
from fractions import Fraction

import pytest

from monoid_factor.exact import Poly, UndecidedError, X, parse_poly
from monoid_factor.realroot import (
    AlgebraicNumber,
    compare_to_one,
    floor_log,
    isolate_positive_roots,
    sign_at_root,
)


def sqrt2():
    (a,) = isolate_positive_roots(X**2 - 2)
    return a


def test_sqrt2_interval():
    a = sqrt2()
    assert 0 < a.lo < a.hi
    assert a.lo**2 < 2 < a.hi**2
    r = a.refine(Fraction(1, 2))
    assert 1 <= r.lo and r.hi <= 2


def test_two_positive_roots():
    roots = isolate_positive_roots(parse_poly("X^4 - X^3 - X^2 - X + 1"))
    assert len(roots) == 2
    assert [r.root_index for r in roots] == [0, 1]
    beta, alpha = roots
    assert abs(beta.approx(6) - 0.5807) < 1e-3
    assert abs(alpha.approx(6) - 1.7221) < 1e-3


def test_interval_contains_sign_change():
    m = parse_poly("X^4 - 6X^3 + 4X^2 - 2X - 2")
    assert (m(5), m(6)) == (-37, 130)
    (a,) = isolate_positive_roots(m)
    a = a.refine(Fraction(1, 100))
    assert 5 < a.lo and a.hi < 6


def test_no_positive_root():
    assert isolate_positive_roots(X**2 + 1) == []
    assert isolate_positive_roots(X + 3) == []


def test_refinement_keeps_root():
    a = sqrt2()
    for w in (Fraction(1, 10), Fraction(1, 1000), Fraction(1, 10**9)):
        r = a.refine(w)
        assert r.width < w
        assert a.lo <= r.lo and r.hi <= a.hi
        assert r.lo**2 < 2 < r.hi**2


def test_sign_at_root():
    a = sqrt2()
    assert sign_at_root(X**2 - 2, a) == 0
    assert sign_at_root(X - 1, a) == 1
    assert sign_at_root(X**3 - 5, a) == -1  # 2*sqrt(2) < 5
    assert sign_at_root(X**3 - 2 * X, a) == 0
    assert sign_at_root(Poly([Fraction(-141421, 100000), 1]), a) == 1
    assert sign_at_root(Poly([Fraction(-141422, 100000), 1]), a) == -1


def test_sign_rational_root():
    (q,) = isolate_positive_roots(Poly([-3, 2]))
    assert q.rational_value() == Fraction(3, 2)
    assert sign_at_root(X**2 - Fraction(9, 4), q) == 0
    assert sign_at_root(X - 2, q) == -1


def test_compare_to_one():
    assert compare_to_one(sqrt2()) == 1
    (b,) = isolate_positive_roots(parse_poly("3x^2 - 2"))
    assert compare_to_one(b) == -1


@pytest.mark.parametrize(
    "poly, v, expected",
    [("x^2 - 2", "2", 2), ("2x - 3", "5", 3), ("2x - 3", "1", 0), ("x^2 - 2", "x^5 + 1", 5)],
)
def test_floor_log(poly, v, expected):
    (a,) = isolate_positive_roots(parse_poly(poly))
    assert floor_log(parse_poly(v), a) == expected


def test_floor_log_errors():
    (b,) = isolate_positive_roots(parse_poly("3x^2 - 2"))
    with pytest.raises(UndecidedError):
        floor_log(Poly([5]), b)
    with pytest.raises(ValueError):
        floor_log(Poly([Fraction(1, 2)]), sqrt2())


def test_json_round_trip():
    a = sqrt2()
    assert AlgebraicNumber.from_json(a.to_json()) == a


def test_bad_interval():
    with pytest.raises(ValueError):
        AlgebraicNumber(X**2 - 2, Fraction(0), Fraction(2))


def test_sign_threads_agree():
    roots = isolate_positive_roots(parse_poly("X^4 - X^3 - X^2 - X + 1"))
    g = parse_poly("x^3 - x^2 - 1")
    expected = [sign_at_root(g, r) for r in roots]
    out = []

    def work():
        out.append([sign_at_root(g, r) for r in roots])

    ts = [threading.Thread(target=work) for _ in range(4)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert all(o == expected for o in out)
