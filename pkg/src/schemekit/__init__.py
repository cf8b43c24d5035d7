"""Exact computer-algebra toolkit for projective schemes.

Sparse polynomials over Q, Q(√d) and finite fields; Buchberger Gröbner
bases; ideal quotients, saturation, elimination and Hilbert data;
predicates on projective schemes; multi-modular rational reconstruction;
and a multi-prime hyperplane search harness.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BadReductionError,
    DegreeCapExceeded,
    NotZeroDimensionalError,
    ParseError,
    ReconstructionError,
    SchemeKitError,
)
from .fields import QQ, GaloisField, PrimeField, QuadraticField  # noqa: E402
from .groebner import GroebnerBasis, buchberger, normal_form, s_polynomial  # noqa: E402
from .idealops import (  # noqa: E402
    Ideal,
    eliminate,
    hilbert_data,
    intersect,
    quotient,
    reduced_degree,
    saturate,
    zero_dim_radical,
)
from .numbers import (  # noqa: E402
    ConjugatePair,
    QuadExt,
    ResidueTable,
    crt_combine,
    lift_to_rationals,
    quad_lift,
    rational_reconstruct,
)
from .polyring import GREVLEX, LEX, MonomialOrder, Polynomial, PolyRing  # noqa: E402
from .projscheme import (  # noqa: E402
    LinearSystem,
    ProjScheme,
    divisor_double_check,
    forms_through,
    is_empty,
    member_of_system,
    singular_locus,
)
