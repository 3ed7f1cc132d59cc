"""Finite-grid fermionic chaos, Malliavin calculus and Ito-Clifford integrals.

Time is cut into ``d`` slots of equal width; degree-``n`` antisymmetric tensors are stored
by their coefficients on ``e_{S_1} ^ ... ^ e_{S_n}`` and elements of the Clifford algebra by
their chaos expansions. A Jordan-Wigner matrix representation serves as an independent check.
"""
from .antisym import AntiTensor, DenseAntiFn, antisymmetrize, conj, contract, inner, plain_l2_norm, reverse, wedge
from .chaos import (
    CliffordElement,
    adjoint,
    beta,
    cond_expect,
    is_self_adjoint,
    l2_inner,
    multiply,
    power,
    state_m,
)
from .errors import (
    DegreeMismatchError,
    DimensionCapError,
    GridMismatchError,
    NotAdaptedError,
    NotSelfAdjointError,
)
from .grid import TimeGrid, indicator_vector
from .ito import check_adapted, clark_ocone, increment, ito_integral, martingale_projection, reconstruct
from .malliavin import (
    ProcessElement,
    carre_norm,
    derivative,
    derivative_at,
    divergence,
    inv_number,
    number_operator,
    process_inner,
    process_square,
)
from .oracle import MatrixRep, Spectrum, field_matrix, from_matrix, functional_calculus, operator_norm, spectral, to_matrix
from .report import Assertion, Report, emit_report

__all__ = [
    "AntiTensor", "Assertion", "CliffordElement", "DegreeMismatchError", "DenseAntiFn", "DimensionCapError",
    "GridMismatchError", "MatrixRep", "NotAdaptedError", "NotSelfAdjointError", "ProcessElement", "Report",
    "Spectrum", "TimeGrid", "adjoint", "antisymmetrize", "beta", "carre_norm", "check_adapted", "clark_ocone",
    "cond_expect", "conj", "contract", "derivative", "derivative_at", "divergence", "emit_report", "field_matrix",
    "from_matrix", "functional_calculus", "increment", "indicator_vector", "inner", "inv_number",
    "is_self_adjoint", "ito_integral", "l2_inner", "martingale_projection", "multiply", "number_operator",
    "operator_norm", "plain_l2_norm", "power", "process_inner", "process_square", "reconstruct", "reverse",
    "spectral", "state_m", "to_matrix", "wedge",
]
