import struct

INFINITY_BITS = 0x7F800000


def float_to_bits(value: float) -> int:
    """Single-precision bit pattern of a Python float (rounded to nearest).

    Finite values beyond the single-precision range map to infinity.
    """
    try:
        return struct.unpack(">I", struct.pack(">f", value))[0]
    except OverflowError:
        return INFINITY_BITS | (0x80000000 if value < 0 else 0)
