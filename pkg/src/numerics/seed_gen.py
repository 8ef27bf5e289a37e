import math

from ..models.arithmetic import SEED_FRACTION_BITS, FixedPoint, Seed
from ..models.fp import MANTISSA_BITS, FpValue
from ..models.tables import LookupTable, TableKind
from .lut_builder import decompress_word

SEED_ONE = 1 << SEED_FRACTION_BITS
# floor(2^26 / sqrt(2)) = 0.10110101000001001111001100 in binary
RSQRT2 = math.isqrt(1 << (2 * SEED_FRACTION_BITS - 1))


def table_address(table: LookupTable, x: FpValue) -> int:
    """Top addr_bits bits of the fraction field."""
    return x.fraction >> (MANTISSA_BITS - table.spec.addr_bits)


def _trunc_div(numerator: int, denominator: int) -> int:
    quotient = abs(numerator) // denominator
    return quotient if numerator >= 0 else -quotient


def interpolate_word(table: LookupTable, address: int) -> int:
    """Linear interpolation between the stored knots around a full-resolution address."""
    factor = table.spec.interp_factor
    knot, offset = divmod(address, factor)
    left = table.entries[knot]
    if offset == 0:
        return left
    right = table.entries[knot + 1]
    return left + _trunc_div(offset * (right - left), factor)


def table_word(table: LookupTable, address: int) -> int:
    """Full-width word at a full-resolution address, whatever the stored form."""
    spec = table.spec
    if spec.compressed:
        return decompress_word(table.entries[address], address, table.thresholds)
    if spec.interp_factor > 1:
        return interpolate_word(table, address)
    return table.entries[address]


def apply_exponent(mantissa_seed: FixedPoint, x_exponent: int) -> Seed:
    """Fold the operand exponent into a full-range seed.

    Odd exponents take one multiply by rsqrt(2); the seed then approximates
    rsqrt(2m) and the result exponent is -(e - 1) / 2.
    """
    part = mantissa_seed.with_fraction_bits(SEED_FRACTION_BITS)
    if x_exponent & 1:
        part = FixedPoint(value=(part.value * RSQRT2) >> SEED_FRACTION_BITS, fraction_bits=SEED_FRACTION_BITS)
    return Seed(mantissa_part=part, result_exponent=-(x_exponent // 2))


def _mlt_mantissa(table: LookupTable, word: int) -> FixedPoint:
    return FixedPoint(value=word, fraction_bits=table.spec.word_bits).with_fraction_bits(SEED_FRACTION_BITS)


def modified_operand(x: FpValue, addr_bits: int) -> int:
    """Mantissa with its low (23 - addr_bits) bits one's-complemented, in units of 2^-23."""
    low_mask = (1 << (MANTISSA_BITS - addr_bits)) - 1
    return (x.mantissa & ~low_mask) | (~x.fraction & low_mask)


def _alt_mantissa(table: LookupTable, coefficient: int, x: FpValue) -> FixedPoint:
    product = coefficient * modified_operand(x, table.spec.addr_bits)
    shift = table.spec.word_bits + MANTISSA_BITS - SEED_FRACTION_BITS
    value = product >> shift if shift >= 0 else product << -shift
    return FixedPoint(value=min(value, SEED_ONE), fraction_bits=SEED_FRACTION_BITS)


def seed_direct(table: LookupTable, x: FpValue) -> Seed:
    """Seed read straight from a full (possibly compressed) MLT."""
    word = table_word(table, table_address(table, x))
    return apply_exponent(_mlt_mantissa(table, word), x.exponent)


def seed_alt(table: LookupTable, x: FpValue) -> Seed:
    """Seed = coefficient * modified operand, truncated to 26 fraction bits."""
    coefficient = table_word(table, table_address(table, x))
    return apply_exponent(_alt_mantissa(table, coefficient, x), x.exponent)


def seed_interpolated(table: LookupTable, x: FpValue) -> Seed:
    """Seed from a table storing every F-th entry."""
    word = interpolate_word(table, table_address(table, x))
    if table.spec.kind is TableKind.ALT:
        return apply_exponent(_alt_mantissa(table, word, x), x.exponent)
    return apply_exponent(_mlt_mantissa(table, word), x.exponent)


def seed_for(table: LookupTable, x: FpValue) -> Seed:
    """Dispatch to the seeding path matching the table form."""
    if table.spec.interp_factor > 1:
        return seed_interpolated(table, x)
    if table.spec.kind is TableKind.ALT:
        return seed_alt(table, x)
    return seed_direct(table, x)
