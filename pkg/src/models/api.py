from typing import List, Optional

from pydantic import BaseModel, Field

from .tables import TableKind


class EvalRequest(BaseModel):
    """Single-operand evaluation request."""
    x: str = Field(..., description="decimal float or 0x-prefixed bit pattern")
    kind: TableKind = TableKind.MLT
    addr_bits: int = 11
    word_bits: Optional[int] = None
    interp: int = 1
    compressed: bool = False
    fraction_bits: Optional[int] = Field(default=None, ge=24, le=128)
    max_iter: Optional[int] = Field(default=None, ge=1, le=16)


class EvalResponse(BaseModel):
    table: str
    seed: float
    seed_error_exponent: Optional[float] = Field(default=None, description="None for an exact seed")
    error_exponents: List[Optional[float]] = Field(default_factory=list, description="None marks an exact iterate")
    iterations: Optional[int] = None
    diverged: bool
    final_ulp: float
    final_value: Optional[float] = None


class SweepRequest(BaseModel):
    kind: TableKind
    addr_bits: List[int] = Field(..., min_length=1)
    interp: List[int] = Field(default_factory=lambda: [1], min_length=1)
    word_bits: Optional[int] = None
    samples: Optional[int] = Field(default=None, ge=1)
    prng_seed: Optional[int] = Field(default=None, ge=0, lt=1 << 64)
    fraction_bits: Optional[int] = Field(default=None, ge=24, le=128)
    max_iter: Optional[int] = Field(default=None, ge=1, le=16)
