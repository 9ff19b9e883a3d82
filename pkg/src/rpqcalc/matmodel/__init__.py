"""Matrix models: truncated t-series, ensembles, matrix operators and
Virasoro-type constraints."""

from .constraints import (
    PREFACTOR_VARIANTS,
    ZD_TAG,
    build_expanded_T,
    build_toy_I,
    build_toy_T,
    dn_operator,
    dn_polynomial,
    k_factor,
    toy_annihilation_scan,
    toy_partition_series,
)
from .ensemble import (
    EnsembleConfig,
    MomentValue,
    NormalizationCertificate,
    PartitionValue,
    coupling_exponential,
    interaction_polynomial,
    moment_closed,
    moment_quadrature,
    moment_series,
    normalization_certificate,
    partition_eigenvalue,
    partition_nested,
)
from .matrix import (
    DISPLAYED_VARIANT,
    SHIFTED_VARIANT,
    MatrixCommutatorReport,
    MatrixT,
    build_matrix_T,
    check_matrix_commutator,
    chi,
    displayed_x,
)
from .series import DiffOperator, DiffTerm, OperatorImage, TruncatedSeries, bell_series

__all__ = [name for name in dir() if not name.startswith("_")]
