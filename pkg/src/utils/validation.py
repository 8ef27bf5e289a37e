import re
from typing import List

from .bits import float_to_bits

HEX_PATTERN = re.compile(r'^0[xX][0-9a-fA-F]{1,8}$')


def parse_operand(text: str) -> int:
    """32-bit pattern from a decimal float or a 0x-prefixed bit pattern."""
    cleaned = text.strip()
    if HEX_PATTERN.match(cleaned):
        return int(cleaned, 16)
    try:
        value = float(cleaned)
    except ValueError:
        raise ValueError(f"not a float or 0x bit pattern: {text!r}")
    return float_to_bits(value)


def parse_int_list(text: str) -> List[int]:
    """Comma-separated integers, e.g. '12,14,16'."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError("expected at least one integer")
    try:
        return [int(item) for item in items]
    except ValueError:
        raise ValueError(f"not a comma-separated integer list: {text!r}")
