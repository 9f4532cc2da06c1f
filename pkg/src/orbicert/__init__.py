"""Exact certificates for presentations with orbifold exponents.

For ``< x1..xd | u1^m1..ur^mr >`` with each ``u_i`` of order exactly ``m_i``,
``orbicert`` checks that hypothesis (coset enumeration, permutation witness,
or abelianization), computes ``chi = 1 - d + sum 1/m_i`` and reports what it
implies: order bounds for finite groups, infiniteness, failure of property
(T), the absence of infinite amenable normal subgroups, and a lower bound on
the first l2-Betti number.  For finite groups it also builds the orbihedral
universal cover and checks its Euler characteristic identity exactly.
"""

__version__ = "0.1.0"

from .certify import (
    Certificate,
    Kind,
    Method,
    Status,
    WitnessQuotient,
    apply_theorems,
    chi_orb,
    l2_betti1_lower_bound,
    parse_witness,
    verify_orders,
)
from .coset_enum import (
    CosetTable,
    EnumerationLimits,
    NonTermination,
    Strategy,
    element_order,
    enumerate_cosets,
    standardize,
    trace,
)
from .orbicomplex import (
    OrderMismatch,
    betti_numbers,
    build_cayley_graph,
    build_orbihedral_cover,
    cycle_space_dim,
    euler_identity_check,
)
from .presentation import Presentation, Relator, parse_presentation, parse_word

__all__ = [
    "__version__",
    "Certificate",
    "CosetTable",
    "EnumerationLimits",
    "Kind",
    "Method",
    "NonTermination",
    "OrderMismatch",
    "Presentation",
    "Relator",
    "Status",
    "Strategy",
    "WitnessQuotient",
    "apply_theorems",
    "betti_numbers",
    "build_cayley_graph",
    "build_orbihedral_cover",
    "chi_orb",
    "cycle_space_dim",
    "element_order",
    "enumerate_cosets",
    "euler_identity_check",
    "l2_betti1_lower_bound",
    "parse_presentation",
    "parse_word",
    "parse_witness",
    "standardize",
    "trace",
    "verify_orders",
]
