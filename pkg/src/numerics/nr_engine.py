"""Newton-Raphson iteration X' = X (3 - a X^2) / 2 in truncating fixed point."""
import logging
from typing import List, Optional

from ..exceptions import DivergenceError
from ..models.arithmetic import FixedPoint, IterationTrace, Seed
from ..models.fp import MANTISSA_BITS, ExactScaled, FpValue
from .fp_core import error_exponent, ref_rsqrt, ulp_error

logger = logging.getLogger(__name__)

DEFAULT_FRACTION_BITS = 30
DEFAULT_MAX_ITER = 4


def operand(x: FpValue, fraction_bits: int = DEFAULT_FRACTION_BITS) -> FixedPoint:
    """The NR operand a: the mantissa m, or 2m when the exponent is odd."""
    shift = fraction_bits - MANTISSA_BITS + (x.exponent & 1)
    if shift < 0:
        raise ValueError(f"fraction_bits must be at least {MANTISSA_BITS}")
    return FixedPoint(value=x.mantissa << shift, fraction_bits=fraction_bits)


def nr_step(a: FixedPoint, x: FixedPoint) -> FixedPoint:
    """One step: three truncating multiplies, one subtract, one shift.

    Raises DivergenceError when a * x^2 >= 3, i.e. when the next iterate
    would not be positive.
    """
    g = a.fraction_bits
    xv = x.with_fraction_bits(g).value
    square = (xv * xv) >> g
    product = (a.value * square) >> g
    three = 3 << g
    if product >= three:
        raise DivergenceError(product, g)
    scaled = (xv * (three - product)) >> g
    return FixedPoint(value=scaled >> 1, fraction_bits=g)


def iterate(
    a: FixedPoint,
    x0: Seed,
    x_input: FpValue,
    max_iter: int = DEFAULT_MAX_ITER,
    target_ulps: float = 1.0,
    record_min: int = 0,
    reference: Optional[ExactScaled] = None,
) -> IterationTrace:
    """Run NR steps until the iterate is within target_ulps of the reference.

    record_min keeps stepping past convergence so that at least that many
    error exponents are recorded; the extra steps do not count towards
    iterations_to_converge.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    r = reference if reference is not None else ref_rsqrt(x_input)
    x = x0.mantissa_part.with_fraction_bits(a.fraction_bits)
    final_x = x.scaled(x0.result_exponent)
    final_error = ulp_error(final_x, x_input, r)
    exponents: List[float] = []
    converged_at: Optional[int] = None

    for step in range(1, max(max_iter, record_min) + 1):
        try:
            x = nr_step(a, x)
        except DivergenceError as exc:
            logger.debug(f"Divergence at step {step} for exponent {x_input.exponent}: {exc}")
            break
        error = ulp_error(x.scaled(x0.result_exponent), x_input, r)
        exponents.append(error_exponent(error))
        if converged_at is None:
            final_x, final_error = x.scaled(x0.result_exponent), error
            if error.ulps < target_ulps:
                converged_at = step
            elif step >= max_iter:
                break
        if converged_at is not None and step >= record_min:
            break

    return IterationTrace(
        error_exponents=exponents,
        iterations_to_converge=converged_at,
        diverged=converged_at is None,
        final_ulp=final_error,
        final_iterate=final_x,
    )
