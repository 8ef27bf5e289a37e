import csv
import io
import struct
from pathlib import Path
from typing import BinaryIO, Union

from pydantic import ValidationError

from ..exceptions import (
    MagicMismatchError,
    TableFormatError,
    TruncatedTableError,
    WordWidthError,
)
from ..models.tables import BitThresholds, LookupTable, TableKind, TableSpec
from ..utils.logger import setup_logger

logger = setup_logger(__name__)

MAGIC = b"RSQT"
VERSION = 1
HEADER = struct.Struct("<4sBBBBBBH")
THRESHOLDS = struct.Struct("<II")
COUNT = struct.Struct("<Q")
ENTRY = struct.Struct("<I")

Destination = Union[str, Path, BinaryIO]


def encode_table(table: LookupTable) -> bytes:
    """Serialize a table to the RSQT binary layout."""
    spec = table.spec
    parts = [HEADER.pack(
        MAGIC,
        VERSION,
        spec.kind.code,
        spec.addr_bits,
        spec.word_bits,
        spec.interp_factor.bit_length() - 1,
        int(spec.compressed),
        0,
    )]
    if spec.compressed:
        parts.append(THRESHOLDS.pack(table.thresholds.t2, table.thresholds.t3))
    parts.append(COUNT.pack(len(table.entries)))
    parts.append(struct.pack(f"<{len(table.entries)}I", *table.entries))
    return b"".join(parts)


def _take(data: bytes, offset: int, size: int) -> bytes:
    if offset + size > len(data):
        raise TruncatedTableError(offset + size, len(data))
    return data[offset:offset + size]


def decode_table(data: bytes) -> LookupTable:
    """Parse the RSQT binary layout, checking magic, lengths and word widths."""
    if len(data) >= len(MAGIC) and data[:len(MAGIC)] != MAGIC:
        raise MagicMismatchError(data[:len(MAGIC)])
    magic, version, kind, addr_bits, word_bits, log_factor, compressed, reserved = HEADER.unpack(
        _take(data, 0, HEADER.size)
    )
    if version != VERSION:
        raise TableFormatError(f"unsupported version {version}")
    if reserved != 0 or compressed > 1 or kind > 1:
        raise TableFormatError("malformed header fields")
    offset = HEADER.size
    try:
        spec = TableSpec(
            kind=TableKind.from_code(kind),
            addr_bits=addr_bits,
            word_bits=word_bits,
            interp_factor=1 << log_factor,
            compressed=bool(compressed),
        )
    except ValidationError as exc:
        raise TableFormatError(f"invalid table header: {exc.errors()[0]['msg']}") from exc

    thresholds = None
    if spec.compressed:
        t2, t3 = THRESHOLDS.unpack(_take(data, offset, THRESHOLDS.size))
        thresholds = BitThresholds(t2=t2, t3=t3)
        offset += THRESHOLDS.size
    (count,) = COUNT.unpack(_take(data, offset, COUNT.size))
    offset += COUNT.size
    if count != spec.stored_entries:
        raise TableFormatError(f"{spec.label} needs {spec.stored_entries} entries, header says {count}")
    entries = struct.unpack(f"<{count}I", _take(data, offset, count * ENTRY.size))
    limit = 1 << spec.stored_width
    for address, entry in enumerate(entries):
        if entry >= limit:
            raise WordWidthError(address, entry, spec.stored_width)
    try:
        return LookupTable(spec=spec, entries=entries, thresholds=thresholds)
    except ValidationError as exc:
        raise TableFormatError(f"inconsistent table contents: {exc.errors()[0]['msg']}") from exc


def write_table(table: LookupTable, destination: Destination) -> None:
    """Write a table file to a path or binary stream."""
    payload = encode_table(table)
    if isinstance(destination, (str, Path)):
        Path(destination).write_bytes(payload)
        logger.info(f"Wrote {table.spec.label} ({len(payload)} bytes) to {destination}")
    else:
        destination.write(payload)


def read_table(source: Destination) -> LookupTable:
    """Read a table file from a path or binary stream."""
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
        logger.info(f"Read {len(data)} bytes from {source}")
    else:
        data = source.read()
    return decode_table(data)


def export_csv(table: LookupTable) -> bytes:
    """One line per stored entry: address, value-hex, value-decimal."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["address", "value_hex", "value_decimal"])
    digits = (table.spec.stored_width + 3) // 4
    for address, entry in enumerate(table.entries):
        writer.writerow([address, f"0x{entry:0{digits}X}", entry])
    return buffer.getvalue().encode("utf-8")
