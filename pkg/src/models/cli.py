from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .tables import TableKind, TableSpec


class Command(str, Enum):
    GEN = "gen"
    EVAL = "eval"
    SWEEP = "sweep"
    VERIFY_BITS = "verify-bits"
    REPORT = "report"
    PROFILE = "profile"


class CliConfig(BaseModel):
    """Validated command-line options."""
    command: Command
    kind: Optional[TableKind] = None
    addr_bits: List[int] = Field(default_factory=list)
    word_bits: Optional[int] = None
    interp: List[int] = Field(default_factory=lambda: [1])
    compressed: bool = False
    samples: int = Field(default=10000, ge=1)
    prng_seed: int = Field(default=42, ge=0, lt=1 << 64)
    fraction_bits: int = Field(default=30, ge=24, le=128)
    max_iter: int = Field(default=4, ge=1, le=16)
    iterations: int = Field(default=3, ge=1, le=16)
    workers: int = Field(default=1, ge=1)
    x: Optional[str] = None
    table_file: Optional[Path] = None
    in_file: Optional[Path] = None
    out_file: Optional[Path] = None
    format: str = "bin"
    layout: str = "table2"
    expect_t2: Optional[int] = None
    expect_t3: Optional[int] = None

    @field_validator("addr_bits", "interp")
    @classmethod
    def validate_non_negative(cls, v: List[int]) -> List[int]:
        if any(item < 0 for item in v):
            raise ValueError("values must be non-negative")
        return v

    @model_validator(mode="after")
    def check_command_options(self) -> "CliConfig":
        single = {Command.GEN, Command.EVAL, Command.PROFILE}
        if self.command in single and self.table_file is None:
            if len(self.addr_bits) != 1 or len(self.interp) != 1:
                raise ValueError(f"{self.command.value} takes a single --addr-bits and --interp value")
            self.table_spec()
        if self.command is Command.SWEEP and self.compressed:
            raise ValueError("sweep does not take --compressed")
        if self.command is Command.VERIFY_BITS and (self.table_file is None) == (not self.addr_bits):
            raise ValueError("verify-bits needs exactly one of --addr-bits or --table-file")
        if self.command is Command.VERIFY_BITS and len(self.addr_bits) > 1:
            raise ValueError("verify-bits takes a single --addr-bits value")
        return self

    def table_spec(self) -> TableSpec:
        return TableSpec(
            kind=self.kind or TableKind.MLT,
            addr_bits=self.addr_bits[0],
            word_bits=self.word_bits,
            interp_factor=self.interp[0],
            compressed=self.compressed,
        )
