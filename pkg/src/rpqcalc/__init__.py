"""Exact workbench for R(p,q)-deformed calculus, operator algebras and matrix-model identities."""

from .errors import (
    ConfigurationError,
    DivergenceError,
    EvaluationError,
    ParameterDomainError,
    PoleError,
    RpqError,
    ShapeError,
    SizeError,
)
from .kernel import (
    AlgebraSpec,
    Kind,
    deformed_binomial,
    deformed_factorial,
    deformed_number,
    load_algebra,
    make_algebra,
    parse_algebra_config,
    powered,
    structure_consistency,
)
from .laurent import LaurentPoly, MultiLaurent

__version__ = "0.1.0"
