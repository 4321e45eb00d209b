"""Both backends must agree with each other and with a box-search oracle."""

import random
from fractions import Fraction

import numpy as np
import pytest

from monoid_factor import kernels
from monoid_factor._search import prepare, scaled_target
from monoid_factor.exact import Poly
from monoid_factor.factorize import derived_caps, enumerate_factorizations, is_member, length_set
from monoid_factor.monoid import spec_from_min_poly, spec_from_q, spec_from_root

from oracles import box_factorizations, lattice_factorizations

SPECS = {
    "3/2": lambda: spec_from_q("3/2"),
    "5/2": lambda: spec_from_q("5/2"),
    "4/3": lambda: spec_from_q("4/3"),
    "2/3": lambda: spec_from_q("2/3"),
    "root 3/2": lambda: spec_from_root("3/2", 2),
    "root 5/2": lambda: spec_from_root("5/2", 2),
    "golden": lambda: spec_from_min_poly("x^2 - x - 1"),
    "2x^2-3": lambda: spec_from_min_poly("2x^2 - 3"),
    "3x^2-2": lambda: spec_from_min_poly("3x^2 - 2"),
    "two roots": lambda: spec_from_min_poly("X^4 - X^3 - X^2 - X + 1"),
}


def _instances(count=100, seed=11):
    rng = random.Random(seed)
    names = sorted(SPECS)
    specs = {n: SPECS[n]() for n in names}
    out = []
    for _ in range(count):
        name = rng.choice(names)
        s = specs[name]
        D = rng.randint(1, 4)
        atoms = s.atom_exponents(D)
        x = Poly([rng.randint(0, 3) if k in atoms else 0 for k in range(D + 1)])
        if x.is_zero():
            x = Poly([1])
        out.append((name, s, x, D))
    return out


@pytest.mark.parametrize("name, spec, x, D", _instances(), ids=lambda v: v if isinstance(v, str) else None)
def test_dfs_matches_box_oracle(name, spec, x, D, backend):
    D = max(D, x.degree)
    caps = [min(c, 6) for c in derived_caps(x, spec, D)]
    atoms = spec.atom_exponents(D)
    r = enumerate_factorizations(x, spec, D=D, caps=caps)
    got = sorted(tuple(z.vector(D)) for z in r)
    expected = sorted(box_factorizations(x, spec.min_poly, caps, atoms))
    assert got == expected
    assert sorted(lattice_factorizations(x, spec.min_poly, caps, atoms)) == expected
    L = length_set(x, spec, D=D, caps=caps)
    assert L.lengths == tuple(sorted({sum(v) for v in expected}))


def test_backends_agree_long_lengths():
    # lengths far above 64 exercise the arbitrary-size length masks
    s = spec_from_q("3/2")
    x = Poly([200])
    out = {}
    for b in kernels.AVAILABLE:
        old = kernels.set_backend(b)
        try:
            out[b] = (length_set(x, s).lengths, len(enumerate_factorizations(Poly([40]), s)))
        finally:
            kernels.set_backend(old)
    assert len(set(out.values())) == 1
    assert max(out[kernels.AVAILABLE[0]][0]) == 200


def test_backends_agree_y6():
    s = spec_from_min_poly("X^4 - X^3 - X^2 - X + 1")
    y = Poly.monomial(19) + 1  # y_6
    res = []
    for b in kernels.AVAILABLE:
        old = kernels.set_backend(b)
        try:
            res.append(length_set(y, s).lengths)
        finally:
            kernels.set_backend(old)
    assert all(r == res[0] for r in res)
    assert res[0][:2] == (2, 8)


def test_exists(backend):
    s = spec_from_min_poly("x^2 - 2")
    assert is_member(Poly([Fraction(3, 2)]), s) == (False, True)
    assert is_member(Poly([7, 2]), s) == (True, True)


def test_mst_bottleneck(backend):
    Z = np.array([[3, 0], [0, 2], [1, 2]])
    assert kernels.mst_bottleneck(Z) == 2
    assert kernels.mst_bottleneck(Z[:1]) == 0


def test_fits_int64_rejects_huge():
    s = spec_from_q("3/2")
    x = Poly([10**30])
    prob = prepare(s.min_poly, 3, [10**30] * 4)
    T = scaled_target(x % s.min_poly, s.rank, prob.L)
    assert not kernels.fits_int64(prob, T)


def test_set_backend_validates():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")
    assert kernels.get_backend() in kernels.AVAILABLE
