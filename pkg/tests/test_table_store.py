import io
import struct

import pytest

from src.exceptions import MagicMismatchError, TableFormatError, TruncatedTableError, WordWidthError
from src.infrastructure.table_store import (
    HEADER,
    decode_table,
    encode_table,
    export_csv,
    read_table,
    write_table,
)
from src.numerics.lut_builder import build_mlt, compress_words, reduce


@pytest.fixture(scope="module")
def small_mlt():
    return build_mlt(4)


def test_encoded_layout(small_mlt):
    data = encode_table(small_mlt)
    assert data[:4] == b"RSQT"
    assert HEADER.unpack(data[:HEADER.size])[1:] == (1, 0, 4, 23, 0, 0, 0)
    assert struct.unpack("<Q", data[12:20]) == (16,)
    assert len(data) == 20 + 16 * 4
    assert struct.unpack("<I", data[20:24]) == (small_mlt.entries[0],)


def test_compressed_table_survives_file(tmp_path, mlt11):
    compressed = compress_words(mlt11)
    path = tmp_path / "mlt11.rsqt"
    write_table(compressed, path)
    restored = read_table(path)
    assert restored == compressed
    assert restored.thresholds.t2 == 1593


def test_interpolated_table_survives_stream(mlt11):
    reduced = reduce(mlt11, 8)
    buffer = io.BytesIO()
    write_table(reduced, buffer)
    buffer.seek(0)
    assert read_table(buffer) == reduced


def test_bad_magic(small_mlt):
    data = b"XXXX" + encode_table(small_mlt)[4:]
    with pytest.raises(MagicMismatchError) as exc_info:
        decode_table(data)
    assert exc_info.value.found == b"XXXX"


def test_truncated(small_mlt):
    data = encode_table(small_mlt)
    with pytest.raises(TruncatedTableError):
        decode_table(data[:-1])
    with pytest.raises(TruncatedTableError):
        decode_table(data[:6])


def test_word_too_wide(small_mlt):
    data = bytearray(encode_table(small_mlt))
    data[20:24] = struct.pack("<I", 1 << 23)
    with pytest.raises(WordWidthError) as exc_info:
        decode_table(bytes(data))
    assert exc_info.value.address == 0
    assert exc_info.value.width == 23


@pytest.mark.parametrize("offset, value", [(4, 2), (8, 5), (10, 5)])
def test_malformed_header(small_mlt, offset, value):
    data = bytearray(encode_table(small_mlt))
    data[offset] = value
    with pytest.raises(TableFormatError):
        decode_table(bytes(data))


def test_entry_count_mismatch(small_mlt):
    data = bytearray(encode_table(small_mlt))
    data[12:20] = struct.pack("<Q", 15)
    with pytest.raises(TableFormatError):
        decode_table(bytes(data))


def test_non_monotone_mlt_rejected(small_mlt):
    data = bytearray(encode_table(small_mlt))
    data[24:28] = struct.pack("<I", (1 << 23) - 1)
    with pytest.raises(TableFormatError):
        decode_table(bytes(data))


def test_export_csv(mlt11):
    lines = export_csv(mlt11).decode("utf-8").splitlines()
    assert lines[0] == "address,value_hex,value_decimal"
    assert lines[1] == "0,0x7FFC00,8387584"
    assert len(lines) == 2049
    compressed = export_csv(compress_words(mlt11)).decode("utf-8").splitlines()
    assert compressed[1] == "0,0xFFC00,1047552"
