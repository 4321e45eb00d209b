import random
from fractions import Fraction

import pytest

from monoid_factor.exact import Poly, parse_poly
from monoid_factor.factorize import Factorization, enumerate_factorizations, equal_in_monoid, length_set
from monoid_factor.invariants import betti_graph
from monoid_factor.monoid import spec_from_q, spec_from_root
from monoid_factor.rootlift import (
    LiftedFactorization,
    betti_family,
    join,
    lifted_betti,
    lifted_length_set,
    sample_elements,
    split_factorization,
    sumset,
)

F = Factorization.from_pairs
R32 = spec_from_root("3/2", 2)


def test_split_example():
    lf = split_factorization(F([(0, 1), (1, 2), (2, 1)]), 2)
    assert lf.components == (F([(0, 1), (1, 1)]), F([(0, 2)]))
    assert lf.length == 4


def test_split_empty():
    assert split_factorization(Factorization(), 3).components == (Factorization(),) * 3


def test_round_trip_random():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(2, 4)
        z = F([(rng.randint(0, 12), rng.randint(1, 5)) for _ in range(rng.randint(0, 6))])
        lf = split_factorization(z, n)
        assert join(lf) == z and lf.length == z.length
        assert split_factorization(join(lf), n) == lf


def test_components_project_to_same_element():
    # two factorizations of one element have value-equal components
    q = Fraction(3, 2)
    base = spec_from_q(q)
    x = parse_poly("3 + 9/2x")
    zs = list(enumerate_factorizations(x, R32))
    assert len(zs) > 1
    for z in zs:
        parts = split_factorization(z, 2).components
        assert equal_in_monoid(parts[0].as_poly(), 3, base)
        assert equal_in_monoid(parts[1].as_poly(), Fraction(9, 2), base)


def test_lifted_lengths_examples():
    assert lifted_length_set(Poly([3]), R32).lengths == (2, 3)
    assert lifted_length_set(Poly([0, 1]), R32).lengths == (1,)
    assert lifted_length_set(Poly([3, 3]), R32).lengths == (4, 5, 6)
    assert sumset([{2, 3}, {2, 3}]) == [4, 5, 6]


def test_lifted_matches_direct():
    s = spec_from_root("5/2", 2)
    for b in sample_elements(s, 15, seed=3):
        a = lifted_length_set(b, s)
        d = length_set(b, s)
        assert a.complete and d.complete
        assert a.lengths == d.lengths


def test_coordinate_outside_base():
    with pytest.raises(ValueError, match="not in"):
        lifted_length_set(Poly([Fraction(1, 2)]), R32)
    with pytest.raises(ValueError):
        lifted_length_set(Poly([-1, 1]), R32)


def test_family():
    fam = betti_family(Fraction(3, 2), 2, 1)
    assert fam == [Poly([3]), Poly([0, 3]), Poly([Fraction(9, 2)]), Poly([0, Fraction(9, 2)])]


def test_lifted_betti_small():
    rep = lifted_betti(R32, 1, samples=4)
    assert rep.ok and rep.complete and len(rep.non_betti_checked) == 4
    rep5 = lifted_betti(spec_from_root("5/2", 2), 0, samples=0)
    assert rep5.confirmed == [Poly([5]), Poly([0, 5])]


def test_two_coordinates_not_betti():
    assert not betti_graph(parse_poly("x + 3"), R32).is_betti


def test_needs_root_route():
    with pytest.raises(ValueError):
        lifted_length_set(Poly([3]), spec_from_q("3/2"))


def test_lifted_type():
    lf = LiftedFactorization((F([(0, 1)]), Factorization()))
    assert lf.n == 2 and join(lf) == F([(0, 1)])
