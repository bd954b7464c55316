"""
Exact symbolic computation in the rank-one affine Hecke algebra, its
asymptotic companion algebra, and their convolution action on invariant
functions on the punctured plane.
"""

__version__ = "0.1.0"

from .coeffring import Laurent, TruncSeries, expand_rational
from .weyl import WeylElt, parse_word, word
from .hecke import HeckeElt, convert_basis, j_involution, mul_hecke
from .jalg import JElt, gamma, j_mul, phi_finite, phi_inverse, tw_in_t
from .plane import PlaneFunction, act_simple, act_t, t_action

__all__ = [
    "__version__",
    "Laurent", "TruncSeries", "expand_rational",
    "WeylElt", "parse_word", "word",
    "HeckeElt", "convert_basis", "j_involution", "mul_hecke",
    "JElt", "gamma", "j_mul", "phi_finite", "phi_inverse", "tw_in_t",
    "PlaneFunction", "act_simple", "act_t", "t_action",
]
