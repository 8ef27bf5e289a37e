import csv
import io
import math
from itertools import groupby
from typing import Callable, Dict, List, Sequence, Tuple, Union

from pydantic import ValidationError

from ..exceptions import ReportError
from ..models.sweep import SweepRecord
from ..models.tables import TableKind, TableSpec

CSV_COLUMNS = [
    "kind",
    "addr_bits",
    "word_bits",
    "interp_factor",
    "samples",
    "prng_seed",
    "g",
    "avg_error_exp_iter1",
    "avg_error_exp_iter2",
    "divergence_pct",
    "avg_iterations",
    "acceptable_after_1",
    "acceptable_after_2",
]
LAYOUTS = ("table1", "table2", "table3")
KIND_NAMES = {TableKind.MLT: "main", TableKind.ALT: "auxiliary"}


def _number(value: float) -> str:
    return "nan" if math.isnan(value) else f"{value:.4f}"


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _require(records: Sequence[SweepRecord]) -> None:
    if not records:
        raise ReportError("no sweep records to render")


def render_csv(records: Sequence[SweepRecord]) -> bytes:
    """UTF-8 CSV with a header row and LF line endings."""
    _require(records)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in records:
        seed, samples = record.corpus_id
        writer.writerow([
            record.spec.kind.value,
            record.spec.addr_bits,
            record.spec.word_bits,
            record.spec.interp_factor,
            samples,
            seed,
            record.fraction_bits,
            _number(record.avg_error_exp_iter1),
            _number(record.avg_error_exp_iter2),
            _number(record.divergence_pct),
            _number(record.avg_iterations),
            _flag(record.acceptable_after_1),
            _flag(record.acceptable_after_2),
        ])
    return buffer.getvalue().encode("utf-8")


def parse_csv(data: Union[bytes, str]) -> List[SweepRecord]:
    """Read records back from render_csv output."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or set(CSV_COLUMNS) - set(reader.fieldnames):
        raise ReportError("sweep CSV is missing required columns")
    records = []
    for line, row in enumerate(reader, start=2):
        try:
            spec = TableSpec(
                kind=row["kind"],
                addr_bits=int(row["addr_bits"]),
                word_bits=int(row["word_bits"]),
                interp_factor=int(row["interp_factor"]),
            )
            records.append(SweepRecord(
                spec=spec,
                corpus_id=(int(row["prng_seed"]), int(row["samples"])),
                fraction_bits=int(row["g"]),
                avg_error_exp_iter1=float(row["avg_error_exp_iter1"]),
                avg_error_exp_iter2=float(row["avg_error_exp_iter2"]),
                divergence_pct=float(row["divergence_pct"]),
                avg_iterations=float(row["avg_iterations"]),
                acceptable_after_1=row["acceptable_after_1"] == "true",
                acceptable_after_2=row["acceptable_after_2"] == "true",
            ))
        except (ValueError, ValidationError) as exc:
            raise ReportError(f"line {line}: {exc}") from exc
    _require(records)
    return records


def _verdict(ok: bool) -> str:
    return "Acceptable" if ok else "Unacceptable"


def _divergence(pct: float) -> str:
    return "None" if pct == 0 else f"{pct:.2f}%"


def _size(addr_bits: int) -> str:
    entries = 1 << addr_bits
    return f"{entries // 1024}k" if entries >= 1024 else str(entries)


def _storage(record: SweepRecord) -> str:
    return str(record.spec.stored_entries * record.spec.stored_width)


def _grid(title: str, axis: str, columns: List[str], rows: List[Tuple[str, List[str]]]) -> str:
    lines = [f"### {title}", "", "| " + " | ".join([axis] + columns) + " |"]
    lines.append("|" + "---|" * (len(columns) + 1))
    for label, cells in rows:
        lines.append("| " + " | ".join([label] + cells) + " |")
    return "\n".join(lines)


Row = Tuple[str, Callable[[SweepRecord], str]]


def _table1(records: Sequence[SweepRecord]) -> List[str]:
    rows: List[Row] = [
        ("Error", lambda r: _verdict(r.acceptable_after_2)),
        ("Divergence", lambda r: _divergence(r.divergence_pct)),
        ("Average # of iterations", lambda r: f"{r.avg_iterations:.3f}"),
        ("Table size (bits)", _storage),
    ]
    key = lambda r: (r.spec.kind.value, r.spec.interp_factor, r.spec.word_bits)
    blocks = []
    for (kind, factor, width), group in groupby(sorted(records, key=key), key=key):
        cells = sorted(group, key=lambda r: r.spec.addr_bits)
        title = f"Simulation results for various {KIND_NAMES[TableKind(kind)]} tables with {width}-bit contents"
        if factor > 1:
            title += f", interpolation factor {factor}"
        blocks.append(_grid(
            title,
            "# of address bits",
            [str(r.spec.addr_bits) for r in cells],
            [(label, [fmt(r) for r in cells]) for label, fmt in rows],
        ))
    return blocks


def _table2(records: Sequence[SweepRecord]) -> List[str]:
    rows: List[Row] = [
        ("Error after 1st iteration", lambda r: _verdict(r.acceptable_after_1)),
        ("Error after 2nd iteration", lambda r: _verdict(r.acceptable_after_2)),
        ("Divergence", lambda r: _divergence(r.divergence_pct)),
        ("# of iterations", lambda r: f"{r.avg_iterations:.2f}"),
        ("Table size (bits)", _storage),
    ]
    key = lambda r: (r.spec.kind.value, r.spec.addr_bits, r.spec.word_bits)
    blocks = []
    for (kind, addr_bits, width), group in groupby(sorted(records, key=key), key=key):
        cells = sorted(group, key=lambda r: r.spec.interp_factor)
        blocks.append(_grid(
            f"Characteristics of a {_size(addr_bits)}×{width} {KIND_NAMES[TableKind(kind)]} table",
            "Interpolation factor",
            [str(r.spec.interp_factor) for r in cells],
            [(label, [fmt(r) for r in cells]) for label, fmt in rows],
        ))
    return blocks


def _table3(records: Sequence[SweepRecord]) -> List[str]:
    blocks = []
    kind_key = lambda r: r.spec.kind.value
    for kind, group in groupby(sorted(records, key=kind_key), key=kind_key):
        group = list(group)
        factors = sorted({r.spec.interp_factor for r in group})
        by_cell: Dict[Tuple[int, int], SweepRecord] = {(r.spec.addr_bits, r.spec.interp_factor): r for r in group}
        rows = []
        for addr_bits in sorted({r.spec.addr_bits for r in group}):
            name = f"{addr_bits}-bit {kind.upper()}"
            cells = [by_cell.get((addr_bits, f)) for f in factors]
            rows.append((f"Final error for {name}", [_verdict(r.acceptable_after_2) if r else "-" for r in cells]))
            rows.append((f"Number of iterations for {name}", [f"{r.avg_iterations:.3f}" if r else "-" for r in cells]))
            rows.append((f"Divergence for {name}", [_divergence(r.divergence_pct) if r else "-" for r in cells]))
            rows.append((f"Table size for {name} (bits)", [_storage(r) if r else "-" for r in cells]))
        blocks.append(_grid(
            f"Characteristics of {kind.upper()} configurations",
            "Interpolation factor",
            [str(f) for f in factors],
            rows,
        ))
    return blocks


def render_markdown(records: Sequence[SweepRecord], layout: str) -> str:
    """Markdown result tables in one of the LAYOUTS."""
    _require(records)
    renderers = {"table1": _table1, "table2": _table2, "table3": _table3}
    if layout not in renderers:
        raise ReportError(f"unknown layout {layout}; expected one of {', '.join(LAYOUTS)}")
    return "\n\n".join(renderers[layout](records)) + "\n"
