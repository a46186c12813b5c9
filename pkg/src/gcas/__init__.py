"""Generate and exactly verify two-dimensional Golay complementary array sets."""

from .construct import (
    DEFAULT_STRATEGY,
    ArraySet,
    DuplicateMembersWarning,
    OffsetStrategy,
    ParameterError,
    Theorem1Params,
    Theorem2Params,
    build_t1_base_set,
    build_t1_set,
    build_t2_set,
    validate_t1,
    validate_t2,
)
from .cyclotomic import CyclotomicSum, cyclotomic_polynomial, is_zero, to_complex
from .egbf import ExponentArray, Theorem1Function, Theorem2Function, eval_t1, eval_t2, materialize
from .verify import Shift, VerificationReport, aacf, aacf_set_sum, check_conjugate_symmetry, check_gcas

__version__ = "0.1.0"
