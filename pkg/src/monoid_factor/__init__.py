"""Factorization invariants of N0[alpha] for positive algebraic alpha.

    >>> from monoid_factor import spec_from_q, length_set
    >>> length_set("5", spec_from_q("5/2")).lengths
    (2, 5)
"""

from .exact import Poly, UndecidedError, format_poly, parse_poly
from .factorize import (
    Factorization,
    canonicalize,
    enumerate_factorizations,
    equal_in_monoid,
    is_member,
    length_set,
)
from .invariants import (
    ap_aap_analyze,
    betti_graph,
    betti_scan,
    catenary_element,
    catenary_monoid_scan,
    distance,
    fact_gcd,
    furcus_witness,
)
from .kernels import BACKEND
from .monoid import (
    AlgebraicEval,
    IrreducibleRoot,
    MonoidSpec,
    RationalCyclic,
    atoms_up_to,
    make_spec,
    spec_from_min_poly,
    spec_from_q,
    spec_from_root,
)
from .realroot import AlgebraicNumber
from .rootlift import join, lifted_betti, lifted_length_set, split_factorization

__version__ = "0.1.0"
