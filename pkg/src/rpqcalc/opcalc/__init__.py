"""Graded operators, Heisenberg-Witt generators, brackets and closure analysis."""

from .central import (
    CI_COCYCLE,
    CI_PROPOSITION,
    CentralTerms,
    alpha_twist,
    c_l_reflection_factor,
    central_terms,
    half_ratio,
    jacobi_residual,
    plain_jacobi_residual,
    q_case_display,
)
from .closure import ClosureAnalysis, closure_analyze, family_closure
from .grade import GradeFunction, PointwiseGrade, number_grade
from .heisenberg import (
    CONVENTIONS,
    PAPER_ZM,
    SHIFTED,
    basis_bracket,
    basis_product,
    build_derivative,
    build_I,
    build_L,
    creation,
    number_operator,
    displayed_coefficients,
    verify_oscillator,
)
from .operators import GradedOperator, bracket, commutator, compose
