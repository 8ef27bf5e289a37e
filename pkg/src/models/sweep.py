import math
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from .fp import FpValue
from .tables import TableSpec


class Corpus(BaseModel):
    """Reproducible set of random positive normal operands."""
    model_config = ConfigDict(frozen=True)

    prng_seed: int = Field(..., ge=0, lt=1 << 64)
    count: int = Field(..., ge=1)
    samples: Tuple[FpValue, ...]

    @property
    def corpus_id(self) -> Tuple[int, int]:
        return (self.prng_seed, self.count)


class SweepRecord(BaseModel):
    """Aggregated statistics for one table configuration over one corpus."""
    model_config = ConfigDict(frozen=True)

    spec: TableSpec
    corpus_id: Tuple[int, int]
    fraction_bits: int
    max_iter: Optional[int] = None
    avg_error_exp_iter1: float
    avg_error_exp_iter2: float
    divergence_pct: float = Field(..., ge=0, le=100)
    avg_iterations: float
    acceptable_after_1: bool
    acceptable_after_2: bool

    @field_serializer("avg_error_exp_iter1", "avg_error_exp_iter2", "avg_iterations", when_used="json")
    def serialize_missing(self, value: float) -> Optional[float]:
        # nan when no sample converged
        return None if math.isnan(value) else value
