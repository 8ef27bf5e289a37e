from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .fp import UlpError

SEED_FRACTION_BITS = 26


class FixedPoint(BaseModel):
    """Unsigned fixed-point scalar value * 2^-fraction_bits."""
    model_config = ConfigDict(frozen=True)

    value: int = Field(..., ge=0)
    fraction_bits: int = 30

    @classmethod
    def from_ratio(cls, numerator: int, denominator: int, fraction_bits: int = 30) -> "FixedPoint":
        """Truncated fixed-point form of numerator / denominator."""
        return cls(value=(numerator << fraction_bits) // denominator, fraction_bits=fraction_bits)

    def with_fraction_bits(self, fraction_bits: int) -> "FixedPoint":
        """Re-express at another precision, truncating dropped bits."""
        shift = fraction_bits - self.fraction_bits
        value = self.value << shift if shift >= 0 else self.value >> -shift
        return FixedPoint(value=value, fraction_bits=fraction_bits)

    def scaled(self, exponent: int) -> "FixedPoint":
        """Exact multiplication by 2^exponent."""
        return FixedPoint(value=self.value, fraction_bits=self.fraction_bits - exponent)

    def __float__(self) -> float:
        return self.value * 2.0 ** -self.fraction_bits


class Seed(BaseModel):
    """Initial approximation mantissa_part * 2^result_exponent."""
    model_config = ConfigDict(frozen=True)

    mantissa_part: FixedPoint
    result_exponent: int

    @model_validator(mode="after")
    def check_range(self) -> "Seed":
        part = self.mantissa_part
        one = 1 << part.fraction_bits
        if not one >> 2 < part.value <= one:
            raise ValueError(f"seed mantissa {float(part)} outside (0.25, 1]")
        return self

    @property
    def absolute(self) -> FixedPoint:
        return self.mantissa_part.scaled(self.result_exponent)

    def __float__(self) -> float:
        return float(self.absolute)


class IterationTrace(BaseModel):
    """Per-sample Newton-Raphson history."""
    error_exponents: List[float] = Field(default_factory=list)
    iterations_to_converge: Optional[int] = None
    diverged: bool
    final_ulp: UlpError
    final_iterate: Optional[FixedPoint] = None

    @model_validator(mode="after")
    def check_consistency(self) -> "IterationTrace":
        if self.diverged != (self.iterations_to_converge is None):
            raise ValueError("diverged must hold exactly when iterations_to_converge is missing")
        return self
