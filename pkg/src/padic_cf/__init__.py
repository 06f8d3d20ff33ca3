"""Schneider's p-adic continued fractions, the digit shift, and their conjugacy."""

from .conjugacy import (
    FImage,
    IrrationalPreimage,
    RationalPreimage,
    check_one_step_identity,
    classify_preimage,
    f_approx,
    f_inverse_approx,
    f_inverse_dyadic,
    f_of_expansion,
    f_rational,
)
from .dynamics import (
    DEFAULT_CAP,
    CFExpansion,
    CFPair,
    OrbitRecord,
    Terminal,
    cf_eval_exact,
    cf_eval_limit,
    cf_expand,
    convergent,
    convergents,
    sigma_orbit,
    sigma_shift_stream,
    sigma_step,
    tau,
    tau_orbit,
    tau_step,
)
from .errors import *  # noqa: F401,F403
from .padic_core import (
    INFINITY,
    DigitStream,
    PAdicApprox,
    PrimeContext,
    abs_p,
    approx_add,
    approx_from_rational,
    approx_inv,
    approx_mul,
    approx_truncation_value,
    digit_stream_to_rational,
    epsilon,
    floor_p,
    is_prime,
    rational_to_digit_stream,
    valuation,
)

__version__ = "0.1.0"
