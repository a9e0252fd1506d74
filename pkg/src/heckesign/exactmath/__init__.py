"""Exact arithmetic substrate: rationals, cyclotomic fields, polynomials,
resultants, Sturm sequences and certified real intervals."""

from fractions import Fraction as BigRational

from .cyclotomic import CycNumber, as_cyc, cyc_canonicalize, cyc_embed, cyclotomic_polynomial, euler_phi
from .factor import BadPrime, Verdict, degree_pattern_mod_p, irreducibility_certificate, rational_roots
from .interval import RealInterval, Sign
from .poly import ZERO_DEGREE, Poly, integer_model, poly_gcd, poly_resultant, scalar, squarefree_part
from .sturm import Undecided, UndecidedSign, real_sign, sturm_count_real_roots

__all__ = [
    "BigRational",
    "CycNumber",
    "as_cyc",
    "cyc_canonicalize",
    "cyc_embed",
    "cyclotomic_polynomial",
    "euler_phi",
    "BadPrime",
    "Verdict",
    "degree_pattern_mod_p",
    "irreducibility_certificate",
    "rational_roots",
    "RealInterval",
    "Sign",
    "ZERO_DEGREE",
    "Poly",
    "integer_model",
    "poly_gcd",
    "poly_resultant",
    "scalar",
    "squarefree_part",
    "Undecided",
    "UndecidedSign",
    "real_sign",
    "sturm_count_real_roots",
]
