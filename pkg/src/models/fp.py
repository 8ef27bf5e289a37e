from pydantic import BaseModel, ConfigDict, Field

MANTISSA_BITS = 23
EXPONENT_BIAS = 127
MIN_EXPONENT = -126
MAX_EXPONENT = 127


class FpValue(BaseModel):
    """Positive normal single-precision number split into its fields."""
    model_config = ConfigDict(frozen=True)

    sign: int = Field(default=0, ge=0, le=0, description="Sign bit, always 0 for accepted inputs")
    exponent: int = Field(..., ge=MIN_EXPONENT, le=MAX_EXPONENT, description="Unbiased exponent")
    fraction: int = Field(..., ge=0, lt=1 << MANTISSA_BITS, description="Fraction field in units of 2^-23")

    @property
    def mantissa(self) -> int:
        """Significand with the implicit leading one, in units of 2^-23."""
        return (1 << MANTISSA_BITS) | self.fraction

    def __float__(self) -> float:
        return self.mantissa * 2.0 ** (self.exponent - MANTISSA_BITS)


class ExactScaled(BaseModel):
    """Oracle result value * 2^-scale_bits."""
    model_config = ConfigDict(frozen=True)

    value: int = Field(..., ge=0)
    scale_bits: int

    @property
    def exponent(self) -> int:
        """Unbiased binary exponent of the represented number."""
        return self.value.bit_length() - 1 - self.scale_bits

    def __float__(self) -> float:
        return self.value * 2.0 ** -self.scale_bits


class UlpError(BaseModel):
    """Distance to the reference in units of its last mantissa place."""
    model_config = ConfigDict(frozen=True)

    ulps: float = Field(..., ge=0)

    @property
    def acceptable(self) -> bool:
        return self.ulps < 1.0
