"""ncdioph: exact equation machinery over polynomial rings, free associative
algebras and group algebras, with solution-preserving reductions from integer
systems and bounded-solution solvers."""

from .errors import (NCDiophError, NotASolutionError, NotInDomainError,
                     ParseError, StructureMismatchError, UnsupportedTargetError)
from .fields import GF, QI, QQ, Fp, GaussianRational, field_arith, rat, solve_field_system
from .polyring import (PellEnumeration, Poly, PolynomialRing, QuadExt,
                       chebyshev, chebyshev_pair, ideal_membership,
                       laurent_pell_family, pell_check, pell_enumerate,
                       poly_arith, value_at_one_equiv)
from .freealg import (FreeAlgebra, NCPoly, conjoin, degree, disjoin, is_unit,
                      nc_arith, retract, width)
from .groupalg import (CentralizerReport, FreeAbelianGroup, FreeGroup,
                       GroupAlgebra, GroupAlgElement, Raag,
                       centralizer_support_check, commutes_in_algebra,
                       express_in_basis, ga_arith, laurent_iso,
                       laurent_iso_inverse)
from .eqsys import (Add, Const, EqSystem, Mul, Neg, Pow, Sub, Term, Var,
                    check_solution, evaluate, parse_expression, parse_structure,
                    parse_system, serialize_system, serialize_term,
                    system_from_json, system_to_json, system_to_json_text)
from .wordsolve import WordEquation, parse_word_system, word_solve, word_str
from .reports import (SAT, UNKNOWN, UNSAT_COMPLETE, UNSAT_WITHIN_BOUNDS,
                      SolveReport, SolveStats)

__all__ = [name for name in dir() if not name.startswith("_")]
