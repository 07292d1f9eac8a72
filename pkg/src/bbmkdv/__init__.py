"""Exact symbolic toolkit for a two-parameter family of BBM-KdV systems.

Everything is computed over the rationals: Lie point symmetries with
membership certificates, adjoint systems through a formal Lagrangian,
nonlinear self-adjointness substitutions with their gating conditions,
and Ibragimov conserved vectors with divergence certificates and
triviality/equivalence classification.
"""

from .expr import (Assumptions, Expr, ExprError, Symbol, as_expr, const,
                   dep, equals, exp_, from_generator, func_symbol, indep,
                   jet, ln_, param, pow_, unknown)
from .jet import (DEFAULT_ORDER_CAP, OrderCapError, VectorField,
                  apply_generator, characteristics, commutator, d_multi,
                  linear_combination, prolong, prolong_characteristic,
                  substitute_dependent, total_derivative, vector_field)
from .linsolve import (InconsistentSystemError, LinearSolution,
                       UnlicensedPivotError, solve_linear, split_linear)
from .parse import ParseError, parse, to_text
from .system import (FormalLagrangian, PDESystem, adjoint_system, bbm_kdv,
                     euler_lagrange, formal_lagrangian, preset,
                     reduce_equal_components)
from .reduce import (DEFAULT_LADDER, MembershipCertificate, equation_id,
                     find_flux_potential, prolong_system, solution_point,
                     vanishes_on_solutions, vanishes_with_ladder)
from .symmetry import (CatalogEntry, SymmetryCase, SymmetryResult, catalog,
                       case_system, combination, determining_equations,
                       instantiate_conditions, invariance_defect,
                       is_symmetry, same_span, solve_symmetries,
                       standard_generators, table_cases, verify_cell)
from .selfadjoint import (Classification, Gate, Substitution,
                          SubstitutionFamily, branch_of,
                          classify_selfadjointness, identity_substitution,
                          is_substitution, solve_substitutions,
                          strict_conditions, substituted_adjoint,
                          substitution_defect, substitution_family)
from .conslaw import (CATALOG_IDS, ConservedVector, EquivalenceResult,
                      SweepRecord, catalog_prop3, catalog_system,
                      conserved_vector, equivalence_classify, is_trivial,
                      obvious_vectors, reference_vectors, sweep_all,
                      sweep_branch, triviality_potential, verify_divergence)

__version__ = "0.1.0"
