import time
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from ..exceptions import TableSpecError, TableStructureError
from ..models.fp import MANTISSA_BITS, FpValue
from ..models.tables import (
    COMPRESSED_WIDTH,
    INTERP_FACTORS,
    BitThresholds,
    LookupTable,
    TableKind,
    TableSpec,
)
from ..utils.logger import setup_logger
from .fp_core import ref_rsqrt

logger = setup_logger(__name__)

MLT_WORD_BITS = 23
ALT_WORD_BITS = 25
DEFAULT_GRID_POINTS = 64
COMPRESSED_MASK = (1 << COMPRESSED_WIDTH) - 1
# Weights of the three leading bits of a 23-bit MLT word.
MSB1 = 1 << 22
MSB2 = 1 << 21
MSB3 = 1 << 20


def _dyadic(numerator: int, log_denominator: int) -> FpValue:
    """numerator / 2^log_denominator as an FpValue; the numerator must fit in 24 bits."""
    top = numerator.bit_length() - 1
    return FpValue(
        exponent=top - log_denominator,
        fraction=(numerator << (MANTISSA_BITS - top)) & ((1 << MANTISSA_BITS) - 1),
    )


def mlt_entry(address: int, addr_bits: int, word_bits: int = MLT_WORD_BITS) -> int:
    """Top word_bits fraction bits of rsqrt at the midpoint of segment `address`.

    Address 2^addr_bits is the virtual segment just past the table, used as
    the guard entry of interpolated tables.
    """
    midpoint = _dyadic((1 << (addr_bits + 1)) + 2 * address + 1, addr_bits + 1)
    r = ref_rsqrt(midpoint)
    return r.value >> (r.scale_bits - word_bits)


@lru_cache(maxsize=32)
def build_mlt(addr_bits: int, word_bits: int = MLT_WORD_BITS) -> LookupTable:
    """Full main lookup table over the mantissa segment [1, 2)."""
    spec = TableSpec(kind=TableKind.MLT, addr_bits=addr_bits, word_bits=word_bits)
    started = time.perf_counter()
    entries = tuple(mlt_entry(i, addr_bits, word_bits) for i in range(1 << addr_bits))
    logger.info(f"Built {spec.label} in {time.perf_counter() - started:.3f}s")
    return LookupTable(spec=spec, entries=entries)


def _alt_grid(segments: np.ndarray, addr_bits: int, grid_points: int) -> np.ndarray:
    """M(x) * sqrt(x) sampled on each segment; the seed error is c * grid - 1."""
    span = 1 << (MANTISSA_BITS - addr_bits)
    low = np.unique(np.rint(np.linspace(0, span - 1, grid_points)).astype(np.int64))
    base = segments.astype(np.int64)[:, None] * span
    operand = 1.0 + (base + low) / float(1 << MANTISSA_BITS)
    modified = 1.0 + (base + (span - 1 - low)) / float(1 << MANTISSA_BITS)
    return modified * np.sqrt(operand)


def alt_minimax(
    addr_bits: int,
    word_bits: int = ALT_WORD_BITS,
    grid_points: int = DEFAULT_GRID_POINTS,
    segments: Sequence[int] = (),
) -> Tuple[np.ndarray, np.ndarray]:
    """Minimax coefficients and their relative-error residuals, one per segment.

    With a single coefficient the relative error c*g - 1 is equioscillating at
    c = 2 / (max g + min g); the coefficient is then rounded to word_bits.
    """
    if grid_points < DEFAULT_GRID_POINTS:
        raise TableSpecError(f"grid_points must be at least {DEFAULT_GRID_POINTS}")
    index = np.asarray(segments if len(segments) else np.arange(1 << addr_bits), dtype=np.int64)
    grid = _alt_grid(index, addr_bits, grid_points)
    optimum = 2.0 / (grid.max(axis=1) + grid.min(axis=1))
    scale = float(1 << word_bits)
    coefficients = np.clip(np.rint(optimum * scale), 1, scale - 1).astype(np.int64)
    residuals = np.abs(coefficients[:, None] / scale * grid - 1.0).max(axis=1)
    return coefficients, residuals


@lru_cache(maxsize=32)
def build_alt(
    addr_bits: int,
    word_bits: int = ALT_WORD_BITS,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> LookupTable:
    """Auxiliary table of coefficients c with seed = c * M(x)."""
    spec = TableSpec(kind=TableKind.ALT, addr_bits=addr_bits, word_bits=word_bits)
    started = time.perf_counter()
    coefficients, residuals = alt_minimax(addr_bits, word_bits, grid_points)
    logger.info(
        f"Built {spec.label} in {time.perf_counter() - started:.3f}s, "
        f"worst residual 2^{np.log2(residuals.max()):.2f}"
    )
    return LookupTable(spec=spec, entries=tuple(int(c) for c in coefficients))


def guard_entry(spec: TableSpec, grid_points: int = DEFAULT_GRID_POINTS) -> int:
    """Generator value at virtual address 2^addr_bits."""
    past_end = 1 << spec.addr_bits
    if spec.kind is TableKind.MLT:
        return mlt_entry(past_end, spec.addr_bits, spec.word_bits)
    coefficients, _ = alt_minimax(spec.addr_bits, spec.word_bits, grid_points, segments=[past_end])
    return int(coefficients[0])


def reduce(table: LookupTable, factor: int, grid_points: int = DEFAULT_GRID_POINTS) -> LookupTable:
    """Keep every factor-th entry and append the guard entry."""
    spec = table.spec
    if spec.interp_factor != 1 or spec.compressed:
        raise TableSpecError("only full uncompressed tables can be reduced")
    if factor not in INTERP_FACTORS or (1 << spec.addr_bits) % factor:
        raise TableSpecError(f"interpolation factor {factor} does not divide 2^{spec.addr_bits}")
    if factor == 1:
        return table
    reduced = spec.model_copy(update={"interp_factor": factor})
    entries = table.entries[::factor] + (guard_entry(spec, grid_points),)
    logger.debug(f"Reduced {spec.label} to {len(entries)} stored entries")
    return LookupTable(spec=reduced, entries=entries)


def thresholds_from_entries(entries: Sequence[int]) -> BitThresholds:
    """Scan a full 23-bit MLT for the second/third MSB prefix structure."""
    if any(entry < MSB1 for entry in entries):
        raise TableStructureError("first MSB is not constant 1")
    second = [bool(entry & MSB2) for entry in entries]
    third = [bool(entry & MSB3) for entry in entries]

    t2 = next((i for i, bit in enumerate(second) if not bit), len(entries))
    if any(second[t2:]):
        raise TableStructureError(f"second MSB ones do not form a prefix ending at {t2}")
    t3 = next((i for i, bit in enumerate(third) if not bit), len(entries))
    for address in range(t3, len(entries)):
        if third[address] == second[address]:
            raise TableStructureError(f"third MSB is not the complement of the second at address {address}")

    logger.debug(f"Thresholds over {len(entries)} entries: t2={t2}, t3={t3}")
    return BitThresholds(t2=t2, t3=t3)


def compute_thresholds(addr_bits: int) -> BitThresholds:
    """Bit thresholds of the generated 23-bit MLT with 2^addr_bits words."""
    return thresholds_from_entries(build_mlt(addr_bits).entries)


def compress_words(table: LookupTable) -> LookupTable:
    """Drop the three reconstructible leading bits of every MLT word."""
    spec = table.spec
    if spec.kind is not TableKind.MLT or spec.compressed or spec.interp_factor != 1:
        raise TableSpecError("word compression applies to full uncompressed MLTs")
    if spec.word_bits != MLT_WORD_BITS:
        raise TableSpecError("word compression needs 23-bit words")
    thresholds = thresholds_from_entries(table.entries)
    compressed = spec.model_copy(update={"compressed": True})
    return LookupTable(
        spec=compressed,
        entries=tuple(entry & COMPRESSED_MASK for entry in table.entries),
        thresholds=thresholds,
    )


def decompress_word(word20: int, addr: int, thresholds: BitThresholds) -> int:
    """Rebuild a 23-bit MLT word from its low 20 bits and its address."""
    second = addr < thresholds.t2
    third = True if addr < thresholds.t3 else not second
    return MSB1 | (MSB2 if second else 0) | (MSB3 if third else 0) | (word20 & COMPRESSED_MASK)


def build_table(spec: TableSpec, grid_points: int = DEFAULT_GRID_POINTS) -> LookupTable:
    """Construct any table form described by a spec."""
    if spec.kind is TableKind.MLT:
        table = build_mlt(spec.addr_bits, spec.word_bits)
    else:
        table = build_alt(spec.addr_bits, spec.word_bits, grid_points)
    if spec.compressed:
        return compress_words(table)
    return reduce(table, spec.interp_factor, grid_points)
