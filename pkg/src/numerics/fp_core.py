import math
from typing import Optional, Union

from ..exceptions import ExponentRangeError, FloatDomainError
from ..models.arithmetic import FixedPoint
from ..models.fp import (
    EXPONENT_BIAS,
    MANTISSA_BITS,
    MAX_EXPONENT,
    MIN_EXPONENT,
    ExactScaled,
    FpValue,
    UlpError,
)

FRACTION_MASK = (1 << MANTISSA_BITS) - 1
EXPONENT_FIELD_MAX = 0xFF
DEFAULT_PRECISION_BITS = 64

# Error exponent reported for an exact result.
EXACT_RESULT = -math.inf

Approximation = Union[FixedPoint, FpValue, ExactScaled]


def classify(bits: int) -> str:
    """Name the IEEE-754 class of a 32-bit pattern."""
    exponent_field = (bits >> MANTISSA_BITS) & EXPONENT_FIELD_MAX
    fraction = bits & FRACTION_MASK
    if exponent_field == EXPONENT_FIELD_MAX:
        return "nan" if fraction else "infinity"
    if exponent_field == 0:
        return "zero" if fraction == 0 else "subnormal"
    if bits >> 31:
        return "negative"
    return "normal"


def decompose(bits: int) -> FpValue:
    """Split a positive normal single-precision bit pattern into its fields."""
    if not 0 <= bits <= 0xFFFFFFFF:
        raise ValueError(f"not a 32-bit pattern: {bits:#x}")
    value_class = classify(bits)
    if value_class != "normal":
        raise FloatDomainError(value_class, bits)
    return FpValue(
        sign=0,
        exponent=((bits >> MANTISSA_BITS) & EXPONENT_FIELD_MAX) - EXPONENT_BIAS,
        fraction=bits & FRACTION_MASK,
    )


def compose(v: FpValue) -> int:
    """Inverse of decompose on positive normal numbers."""
    if not MIN_EXPONENT <= v.exponent <= MAX_EXPONENT:
        raise ExponentRangeError(v.exponent)
    return ((v.exponent + EXPONENT_BIAS) << MANTISSA_BITS) | (v.fraction & FRACTION_MASK)


def ref_rsqrt(x: FpValue, precision_bits: int = DEFAULT_PRECISION_BITS) -> ExactScaled:
    """1/sqrt(x) to better than 2^-(precision_bits - 8) relative, using only integers."""
    if precision_bits < 48:
        raise ValueError("precision_bits must be at least 48")
    mantissa = x.mantissa
    shift = x.exponent - MANTISSA_BITS
    # x = mantissa * 2^shift with shift even, so the root of 2^shift is exact.
    if shift & 1:
        mantissa <<= 1
        shift -= 1
    guard = precision_bits + 8
    root = math.isqrt(mantissa << (2 * guard))
    value = (1 << (precision_bits + 13 + guard)) // root
    return ExactScaled(value=value, scale_bits=precision_bits + 13 + shift // 2)


def _as_scaled(approx: Approximation) -> ExactScaled:
    if isinstance(approx, FixedPoint):
        return ExactScaled(value=approx.value, scale_bits=approx.fraction_bits)
    if isinstance(approx, FpValue):
        return ExactScaled(value=approx.mantissa, scale_bits=MANTISSA_BITS - approx.exponent)
    return approx


def ulp_error(
    approx: Approximation,
    x: FpValue,
    reference: Optional[ExactScaled] = None,
) -> UlpError:
    """|approx - 1/sqrt(x)| in units of 2^(e_r - 23), e_r being the reference's exponent."""
    r = reference if reference is not None else ref_rsqrt(x)
    a = _as_scaled(approx)
    scale = max(a.scale_bits, r.scale_bits)
    diff = abs((a.value << (scale - a.scale_bits)) - (r.value << (scale - r.scale_bits)))
    if diff == 0:
        return UlpError(ulps=0.0)
    # ulps = diff * 2^-scale / 2^(e_r - 23); keep the mantissa small enough for float().
    excess = max(diff.bit_length() - 64, 0)
    return UlpError(ulps=math.ldexp(float(diff >> excess), excess + MANTISSA_BITS - r.exponent - scale))


def error_exponent(e: UlpError) -> float:
    """log2(ulps) - 23; an error of exactly one ULP maps to -23."""
    if e.ulps == 0:
        return EXACT_RESULT
    return math.log2(e.ulps) - MANTISSA_BITS
