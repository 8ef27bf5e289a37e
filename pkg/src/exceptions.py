import logging

logger = logging.getLogger(__name__)


class FloatDomainError(ValueError):
    """Raised when a bit pattern is not a positive normal single-precision number."""
    def __init__(self, value_class: str, bits: int):
        message = f"Unsupported operand 0x{bits:08X}: {value_class}"
        logger.error(message)
        super().__init__(message)
        self.value_class = value_class
        self.bits = bits


class ExponentRangeError(ValueError):
    """Raised when an unbiased exponent falls outside the normal range."""
    def __init__(self, exponent: int):
        message = f"Exponent out of range [-126, 127]: {exponent}"
        logger.error(message)
        super().__init__(message)
        self.exponent = exponent


class TableSpecError(ValueError):
    """Raised for table parameter combinations that cannot be built."""
    def __init__(self, message: str):
        logger.error(message)
        super().__init__(message)
        self.message = message


class TableStructureError(Exception):
    """Raised when a generated table violates the bit-pattern structure."""
    def __init__(self, message: str):
        logger.error(message)
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"TableStructureError: {self.message}"


class ThresholdMismatchError(Exception):
    """Raised when a computed threshold differs from the expected one by more than one address."""
    def __init__(self, name: str, expected: int, actual: int):
        message = f"Threshold {name} = {actual}, expected {expected} (±1)"
        logger.error(message)
        super().__init__(message)
        self.name = name
        self.expected = expected
        self.actual = actual


class TableFormatError(Exception):
    """Exception raised for malformed table files."""
    def __init__(self, message: str):
        logger.error(message)
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"TableFormatError: {self.message}"


class MagicMismatchError(TableFormatError):
    """Raised when a table file does not start with the expected magic."""
    def __init__(self, found: bytes):
        super().__init__(f"bad magic {found!r}")
        self.found = found


class TruncatedTableError(TableFormatError):
    """Raised when a table file ends before its declared contents."""
    def __init__(self, expected: int, available: int):
        super().__init__(f"truncated file: needed {expected} bytes, found {available}")
        self.expected = expected
        self.available = available


class WordWidthError(TableFormatError):
    """Raised when a stored entry does not fit the declared word width."""
    def __init__(self, address: int, value: int, width: int):
        super().__init__(f"entry {address} = {value:#x} exceeds {width} bits")
        self.address = address
        self.value = value
        self.width = width


class ReportError(Exception):
    """Exception raised when a report cannot be produced."""
    def __init__(self, message: str):
        logger.error(message)
        super().__init__(message)
        self.message = message


class DivergenceError(ArithmeticError):
    """Signals a Newton-Raphson step whose next iterate would be non-positive."""
    def __init__(self, product: int, fraction_bits: int):
        super().__init__(f"a*x^2 = {product / (1 << fraction_bits):.6f} >= 3")
        self.product = product
        self.fraction_bits = fraction_bits


class UsageError(Exception):
    """Raised for invalid command-line usage."""
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message
