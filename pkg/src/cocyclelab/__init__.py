"""Lyapunov exponents, stationary measures and limit laws for 2x2 cocycles
that mix rank-one and invertible matrices."""

__version__ = "0.1.0"

from .errors import (BlockCapExceeded, BudgetExceeded, CocycleError, DegenerateVariance,
                     DomainError, InvalidMatrix, PrimitivityError, RankError, SpecError,
                     ZeroMatrixError)
from .linalg2 import Mat2, MatrixClass, ProjPoint, classify, diag, rot, svd2
from .model import (CocycleSpec, ValidationReport, Word, certify_null_free, find_null_words,
                    fiber_product, validate)
from .stationary import (AtomicMeasure, Observable, apply_Q, apply_Qn, check_stationarity,
                         stationary_measure)
from .lyapunov import (L1Estimate, l1_furstenberg, l1_induced, l1_monte_carlo, l1_series,
                       reference_l1)
from .limitlaws import clt_experiment, ldt_experiment, variance_empirical, variance_gl
from .families import FamilySpec, craig_simon, rotation_family, scan, verify_winding, winding_speed

__all__ = [
    "__version__", "AtomicMeasure", "BlockCapExceeded", "BudgetExceeded", "CocycleError",
    "CocycleSpec", "DegenerateVariance", "DomainError", "FamilySpec", "InvalidMatrix",
    "L1Estimate", "Mat2", "MatrixClass", "Observable", "PrimitivityError", "ProjPoint",
    "RankError", "SpecError", "ValidationReport", "Word", "ZeroMatrixError", "apply_Q",
    "apply_Qn", "certify_null_free", "check_stationarity", "classify", "clt_experiment",
    "craig_simon", "diag", "fiber_product", "find_null_words", "l1_furstenberg", "l1_induced",
    "l1_monte_carlo", "l1_series", "ldt_experiment", "reference_l1", "rot", "rotation_family",
    "scan", "stationary_measure", "svd2", "validate", "variance_empirical", "variance_gl",
    "verify_winding", "winding_speed",
]
