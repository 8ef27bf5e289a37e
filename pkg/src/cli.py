"""Command-line front end: gen, eval, sweep, verify-bits, report, profile."""
import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

from .core.config import get_settings
from .core.harness import convergence_profile, gen_corpus, sweep
from .core.reports import LAYOUTS, parse_csv, render_csv, render_markdown
from .exceptions import (
    ExponentRangeError,
    FloatDomainError,
    ReportError,
    TableFormatError,
    TableSpecError,
    TableStructureError,
    ThresholdMismatchError,
    UsageError,
)
from .infrastructure.table_store import export_csv, read_table, write_table
from .models.cli import CliConfig, Command
from .models.tables import BitThresholds, LookupTable, TableKind
from .numerics.fp_core import decompose, error_exponent, ulp_error
from .numerics.lut_builder import build_table, compute_thresholds, thresholds_from_entries
from .numerics.nr_engine import iterate, operand
from .numerics.seed_gen import seed_for
from .utils.logger import set_log_level, setup_logger
from .utils.validation import parse_int_list, parse_operand

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_FORMAT = 2
EXIT_USAGE = 64


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems as exceptions."""

    def error(self, message: str) -> None:
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _int_list(text: str) -> List[int]:
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_table_options(parser: argparse.ArgumentParser, many: bool = False) -> None:
    parser.add_argument("--kind", choices=[k.value for k in TableKind], help="table kind: mlt (main) or alt (auxiliary)")
    if many:
        parser.add_argument("--addr-bits", type=_int_list, help="comma-separated address widths, e.g. 12,14,16")
        parser.add_argument("--interp", type=_int_list, default=[1], help="comma-separated interpolation factors (default 1)")
    else:
        parser.add_argument("--addr-bits", type=_int_list, help="address width k of the full table")
        parser.add_argument("--interp", type=_int_list, default=[1], help="interpolation factor F (default 1)")
        parser.add_argument("--compressed", action="store_true", help="trim the three leading MLT word bits")
    parser.add_argument("--word-bits", type=int, help="table word width (default 23 for mlt, 25 for alt)")


def _add_corpus_options(parser: argparse.ArgumentParser) -> None:
    settings = get_settings()
    parser.add_argument("--samples", type=int, default=settings.samples, help=f"corpus size (default {settings.samples})")
    parser.add_argument("--prng-seed", type=int, default=settings.prng_seed, help=f"splitmix64 seed (default {settings.prng_seed})")


def _add_engine_options(parser: argparse.ArgumentParser) -> None:
    settings = get_settings()
    parser.add_argument(
        "--fraction-bits", type=int, default=settings.fraction_bits,
        help=f"fixed-point fraction bits g of the iteration (default {settings.fraction_bits})",
    )
    parser.add_argument("--max-iter", type=int, default=settings.max_iter, help=f"iteration cap (default {settings.max_iter})")


def build_parser() -> CliParser:
    settings = get_settings()
    parser = CliParser(prog="rsqrt-lut", description="Reciprocal square root lookup-table study", allow_abbrev=False)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    def command(name: str, description: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=description, description=description, allow_abbrev=False)
        sub.add_argument(
            "--log-level", type=str.upper, default=settings.log_level,
            choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], help="logging level for stderr diagnostics",
        )
        return sub

    gen = command("gen", "Generate a lookup table file")
    _add_table_options(gen)
    gen.add_argument("--out-file", type=Path, help="destination (binary tables need a file; csv defaults to stdout)")
    gen.add_argument("--format", choices=["bin", "csv"], default="bin", help="binary table file or CSV export")

    ev = command("eval", "Seed and iterate a single operand")
    ev.add_argument("--x", required=True, help="operand as a decimal float or 0x-prefixed bit pattern")
    _add_table_options(ev)
    ev.add_argument("--table-file", type=Path, help="seed from a stored table instead of building one")
    _add_engine_options(ev)

    sw = command("sweep", "Evaluate a grid of table configurations and emit CSV")
    _add_table_options(sw, many=True)
    _add_corpus_options(sw)
    _add_engine_options(sw)
    sw.add_argument("--workers", type=int, default=settings.workers, help="worker processes per configuration")
    sw.add_argument("--out-file", type=Path, help="CSV destination (default stdout)")

    vb = command("verify-bits", "Compute the second/third MSB thresholds of an MLT")
    vb.add_argument("--addr-bits", type=_int_list, help="address width of a generated 23-bit MLT")
    vb.add_argument("--table-file", type=Path, help="MLT file to scan")
    vb.add_argument("--expect-t2", type=int, help="expected t2, compared with a tolerance of one address")
    vb.add_argument("--expect-t3", type=int, help="expected t3, compared with a tolerance of one address")

    rp = command("report", "Render markdown result tables from a sweep CSV")
    rp.add_argument("--in-file", type=Path, required=True, help="sweep CSV")
    rp.add_argument("--layout", choices=LAYOUTS, default="table2", help="table layout to mirror")
    rp.add_argument("--out-file", type=Path, help="markdown destination (default stdout)")

    pf = command("profile", "Average error exponent per iteration without early stopping")
    _add_table_options(pf)
    _add_corpus_options(pf)
    pf.add_argument(
        "--fraction-bits", type=int, default=settings.fraction_bits,
        help=f"fixed-point fraction bits g of the iteration (default {settings.fraction_bits})",
    )
    pf.add_argument("--iterations", type=int, default=3, help="number of steps to profile (default 3)")
    pf.add_argument("--out-file", type=Path, help="CSV destination (default stdout)")
    return parser


def parse_config(argv: Sequence[str]) -> CliConfig:
    namespace = vars(build_parser().parse_args(list(argv)))
    set_log_level(namespace.pop("log_level"))
    options = {key: value for key, value in namespace.items() if value is not None}
    return CliConfig(**options)


def _emit(data: bytes, out_file: Optional[Path]) -> None:
    if out_file is not None:
        out_file.write_bytes(data)
        logger.info(f"Wrote {len(data)} bytes to {out_file}")
        return
    sys.stdout.flush()
    sys.stdout.buffer.write(data)
    sys.stdout.buffer.flush()


def _load_or_build(config: CliConfig) -> LookupTable:
    if config.table_file is not None:
        return read_table(config.table_file)
    return build_table(config.table_spec(), get_settings().alt_grid_points)


def _gen(config: CliConfig) -> None:
    table = build_table(config.table_spec(), get_settings().alt_grid_points)
    if config.format == "csv":
        _emit(export_csv(table), config.out_file)
        return
    if config.out_file is None:
        raise UsageError("gen --format bin needs --out-file")
    write_table(table, config.out_file)
    print(f"{table.spec.label}: {len(table.entries)} entries, {table.storage_bits} bits")


def _eval(config: CliConfig) -> None:
    x = decompose(parse_operand(config.x))
    table = _load_or_build(config)
    seed = seed_for(table, x)
    trace = iterate(operand(x, config.fraction_bits), seed, x, max_iter=config.max_iter)
    seed_error = ulp_error(seed.absolute, x)
    lines = [
        f"operand: {config.x} (exponent {x.exponent}, fraction 0x{x.fraction:06X})",
        f"table: {table.spec.label}",
        f"seed: {float(seed):.10f} (error exponent {error_exponent(seed_error):.2f})",
    ]
    for step, value in enumerate(trace.error_exponents, start=1):
        lines.append(f"iteration {step}: error exponent {value:.2f}")
    if trace.diverged:
        lines.append(f"diverged after {len(trace.error_exponents)} iteration(s)")
    else:
        lines.append(f"converged after {trace.iterations_to_converge} iteration(s)")
    lines.append(f"result: {float(trace.final_iterate):.10f}")
    lines.append(f"final error: {trace.final_ulp.ulps:.6f} ulp")
    print("\n".join(lines))


def _sweep(config: CliConfig) -> None:
    if config.kind is None or not config.addr_bits:
        raise UsageError("sweep needs --kind and --addr-bits")
    corpus = gen_corpus(config.prng_seed, config.samples)
    records = sweep(
        config.kind,
        config.addr_bits,
        config.interp,
        corpus,
        fraction_bits=config.fraction_bits,
        max_iter=config.max_iter,
        word_bits=config.word_bits,
        workers=config.workers,
        grid_points=get_settings().alt_grid_points,
    )
    _emit(render_csv(records), config.out_file)


def _table_thresholds(table: LookupTable) -> BitThresholds:
    if table.spec.compressed:
        return table.thresholds
    if table.spec.kind is not TableKind.MLT or table.spec.interp_factor != 1 or table.spec.word_bits != 23:
        raise TableSpecError("verify-bits needs a full 23-bit MLT")
    return thresholds_from_entries(table.entries)


def _check(name: str, expected: Optional[int], actual: int) -> None:
    if expected is not None and abs(expected - actual) > 1:
        raise ThresholdMismatchError(name, expected, actual)


def _verify_bits(config: CliConfig) -> None:
    if config.table_file is not None:
        thresholds = _table_thresholds(read_table(config.table_file))
    else:
        thresholds = compute_thresholds(config.addr_bits[0])
    print(f"t2 = {thresholds.t2}")
    print(f"t3 = {thresholds.t3}")
    _check("t2", config.expect_t2, thresholds.t2)
    _check("t3", config.expect_t3, thresholds.t3)


def _report(config: CliConfig) -> None:
    records = parse_csv(config.in_file.read_bytes())
    _emit(render_markdown(records, config.layout).encode("utf-8"), config.out_file)


def _profile(config: CliConfig) -> None:
    corpus = gen_corpus(config.prng_seed, config.samples)
    profile = convergence_profile(
        config.table_spec(),
        corpus,
        fraction_bits=config.fraction_bits,
        iterations=config.iterations,
        grid_points=get_settings().alt_grid_points,
    )
    rows = ["iteration,avg_error_exponent"] + [f"{step},{value:.4f}" for step, value in enumerate(profile)]
    _emit(("\n".join(rows) + "\n").encode("utf-8"), config.out_file)


HANDLERS = {
    Command.GEN: _gen,
    Command.EVAL: _eval,
    Command.SWEEP: _sweep,
    Command.VERIFY_BITS: _verify_bits,
    Command.REPORT: _report,
    Command.PROFILE: _profile,
}


def run(argv: Sequence[str]) -> int:
    """Execute one command and return its exit status."""
    try:
        config = parse_config(argv)
        HANDLERS[config.command](config)
    except SystemExit as exc:
        # argparse --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except (UsageError, TableSpecError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"invalid options: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FloatDomainError, ExponentRangeError, TableStructureError, ThresholdMismatchError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DOMAIN
    except (TableFormatError, ReportError, OSError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FORMAT
    except ValueError as exc:
        # unparseable --x operands
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
