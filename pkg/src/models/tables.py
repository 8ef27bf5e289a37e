from enum import Enum
from typing import Any, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

INTERP_FACTORS = (1, 2, 4, 8, 16, 32, 64)
COMPRESSED_WIDTH = 20


class TableKind(str, Enum):
    MLT = "mlt"
    ALT = "alt"

    @property
    def code(self) -> int:
        return 0 if self is TableKind.MLT else 1

    @classmethod
    def from_code(cls, code: int) -> "TableKind":
        return {0: cls.MLT, 1: cls.ALT}[code]


DEFAULT_WORD_BITS = {TableKind.MLT: 23, TableKind.ALT: 25}
ADDR_BITS_RANGE = {TableKind.MLT: (4, 16), TableKind.ALT: (6, 16)}
WORD_BITS_RANGE = {TableKind.MLT: (2, 23), TableKind.ALT: (8, 32)}


class TableSpec(BaseModel):
    """Shape of a lookup table."""
    model_config = ConfigDict(frozen=True)

    kind: TableKind
    addr_bits: int
    word_bits: int
    interp_factor: int = 1
    compressed: bool = False

    @model_validator(mode="before")
    @classmethod
    def default_word_bits(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("word_bits") is None and "kind" in data:
            data = dict(data)
            data["word_bits"] = DEFAULT_WORD_BITS[TableKind(data["kind"])]
        return data

    @model_validator(mode="after")
    def check_shape(self) -> "TableSpec":
        low, high = ADDR_BITS_RANGE[self.kind]
        if not low <= self.addr_bits <= high:
            raise ValueError(f"{self.kind.value} addr_bits must be within [{low}, {high}]")
        low, high = WORD_BITS_RANGE[self.kind]
        if not low <= self.word_bits <= high:
            raise ValueError(f"{self.kind.value} word_bits must be within [{low}, {high}]")
        if self.interp_factor not in INTERP_FACTORS:
            raise ValueError(f"interp_factor must be one of {INTERP_FACTORS}")
        if (1 << self.addr_bits) % self.interp_factor:
            raise ValueError("interp_factor must divide 2^addr_bits")
        if self.compressed:
            if self.kind is not TableKind.MLT or self.word_bits != 23:
                raise ValueError("only 23-bit MLTs can be compressed")
            if self.interp_factor != 1:
                raise ValueError("compressed tables cannot be interpolated")
        return self

    @property
    def stored_entries(self) -> int:
        """Knots plus the trailing guard entry of interpolated tables."""
        count = (1 << self.addr_bits) // self.interp_factor
        return count + 1 if self.interp_factor > 1 else count

    @property
    def stored_width(self) -> int:
        return COMPRESSED_WIDTH if self.compressed else self.word_bits

    @property
    def label(self) -> str:
        return f"{self.kind.value.upper()} {1 << self.addr_bits}x{self.word_bits} F={self.interp_factor}"


class BitThresholds(BaseModel):
    """Address limits of the second and third most significant MLT bits."""
    model_config = ConfigDict(frozen=True)

    t2: int = Field(..., ge=0, description="Addresses below t2 have the second MSB set")
    t3: int = Field(..., ge=0, description="Addresses below t3 have the third MSB set")


class LookupTable(BaseModel):
    """Table spec plus its stored words."""
    model_config = ConfigDict(frozen=True)

    spec: TableSpec
    entries: Tuple[int, ...]
    thresholds: Optional[BitThresholds] = None

    @model_validator(mode="after")
    def check_entries(self) -> "LookupTable":
        spec = self.spec
        if len(self.entries) != spec.stored_entries:
            raise ValueError(f"{spec.label} needs {spec.stored_entries} entries, got {len(self.entries)}")
        limit = 1 << spec.stored_width
        for address, entry in enumerate(self.entries):
            if not 0 <= entry < limit:
                raise ValueError(f"entry {address} = {entry:#x} exceeds {spec.stored_width} bits")
        if spec.compressed and self.thresholds is None:
            raise ValueError("compressed tables carry their bit thresholds")
        if spec.kind is TableKind.MLT and not spec.compressed:
            if any(later > earlier for earlier, later in zip(self.entries, self.entries[1:])):
                raise ValueError("MLT entries must not increase with address")
        return self

    @property
    def storage_bits(self) -> int:
        return len(self.entries) * self.spec.stored_width
