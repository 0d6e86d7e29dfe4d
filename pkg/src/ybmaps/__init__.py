"""Yang-Baxter maps and 3D-compatible ternary systems over exact fields.

The library constructs parametric Yang-Baxter maps from ternary systems on
quasigroups (and back), and verifies the defining identities -- the YB
equation, the dynamical YB equation, 3D consistency, symmetry and invariance
conditions, Lax refactorization -- by randomized identity testing in exact
rational or prime-field arithmetic.
"""

from .carrier import Carrier, matrix_carrier, scalar_carrier
from .catalog import (CatalogEntry, get_lax, get_map, get_ternary,
                      list_entries, lookup, run_all)
from .construct import (ConstructionRecipe, dynamical_yb_from_ternary,
                        roundtrip_check, ternary_from_dynamical,
                        ternary_from_yb, yb_from_ternary)
from .core import (DynamicalYBMap, ParametricTernarySystem, ParametricYBMap,
                   VerificationReport, check_3d_consistency,
                   check_dynamical_yb, check_invariance, check_involution,
                   check_symmetry, check_yb, lift_to_dynamical,
                   maps_equal_pointwise, scalar_ternary, scalar_yb_map,
                   ternaries_equal_pointwise)
from .dsl import (DefinitionFile, evaluate, parse, parse_expression,
                  parse_file, print_definition, print_expression, to_ternary,
                  to_yb_map)
from .errors import (ArityMismatchError, IncompatibleStructureError,
                     ParseError, PreconditionFailedError, SamplingExhausted,
                     SingularMatrixError, UnboundSymbolError,
                     UndeclaredSymbolError, UnknownEntryError,
                     UnknownQuasigroupError, UnsupportedOrderError)
from .field import (DEFAULT_MODULUS, Field, FieldConfig, FpElement, is_prime,
                    make_field, sample)
from .glmatrix import (CharCoeffs, CommutingFamily, char_coeffs,
                       check_commutation, check_matrix_invariant,
                       check_spectral_invariants, diagonal_family, gl_ternary,
                       gl_yb_map, polynomial_family)
from .lax import LaxMatrix, check_refactorization, check_strongness
from .matrix import SquareMatrix
from .quasigroup import (LawCheck, QuasigroupStructure, builtin,
                         check_axioms, flags_consistent, reversed_group)
from .reduce import (ConstraintFunction, case_one_lax, case_one_map,
                     check_compatibility, constant_constraint,
                     expression_constraint, reduce_lax, reduce_map,
                     reindex_lax_params, reindex_map_params,
                     spread_substitution, zero_constraint)

__version__ = "0.1.0"
