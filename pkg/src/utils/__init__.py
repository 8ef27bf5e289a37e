from .bits import float_to_bits
from .logger import set_log_level, setup_logger
from .validation import parse_int_list, parse_operand

__all__ = [
    'setup_logger',
    'set_log_level',
    'float_to_bits',
    'parse_operand',
    'parse_int_list',
]
