"""Decision procedures for exponential equations over F_p[x1..xr].

Equations of the shape sum_i Q_i * P_i1^n1 * .. * P_it^nt = 0 are decided
by compiling the solution set into a finite automaton over base-p digit
tuples of the exponents.  The same machinery covers coefficients that are
themselves matrices over a quotient ring F_p[x..][xi]/(m) via companion
matrices, and systems of several simultaneous equations whose summands
carry polynomial coefficients in the unknowns.
"""

from .companion import (
    CompanionSpec,
    MatrixEde,
    PolyMatrix,
    companion_matrix,
    conjugator,
    evaluate_at_companion,
)
from .companion import build_automaton as build_matrix_automaton
from .companion import degree_bound as matrix_degree_bound
from .digits import DigitWord, alphabet, decode, digit_length, encode
from .errors import (
    AlphabetError,
    CapacityError,
    SingularConjugatorError,
    SpecFileError,
    StructureError,
)
from .fsa import Automaton
from .gfpoly import Poly, PrimeField, format_poly, parse_poly, section_table
from .oracle import Mismatch, VerificationReport, compare, evaluate, is_solution
from .scalar import ScalarEde
from .scalar import build_automaton as build_scalar_automaton
from .scalar import degree_bound as scalar_degree_bound
from .systems import Summand, SystemSpec, peel_last_digits, solve_system

__version__ = "0.1.0"

__all__ = [
    "AlphabetError",
    "Automaton",
    "CapacityError",
    "CompanionSpec",
    "DigitWord",
    "MatrixEde",
    "Mismatch",
    "Poly",
    "PolyMatrix",
    "PrimeField",
    "ScalarEde",
    "SingularConjugatorError",
    "SpecFileError",
    "StructureError",
    "Summand",
    "SystemSpec",
    "VerificationReport",
    "alphabet",
    "build_matrix_automaton",
    "build_scalar_automaton",
    "companion_matrix",
    "compare",
    "conjugator",
    "decode",
    "digit_length",
    "encode",
    "evaluate",
    "evaluate_at_companion",
    "format_poly",
    "is_solution",
    "matrix_degree_bound",
    "parse_poly",
    "peel_last_digits",
    "scalar_degree_bound",
    "section_table",
    "solve_system",
    "__version__",
]
