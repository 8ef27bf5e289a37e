import pytest

from src.cli import EXIT_DOMAIN, EXIT_FORMAT, EXIT_OK, EXIT_USAGE, parse_config, run
from src.core.reports import parse_csv
from src.models.cli import Command
from src.models.tables import TableKind


def test_parse_config_defaults():
    config = parse_config(["gen", "--kind", "alt", "--addr-bits", "12", "--out-file", "t.rsqt"])
    assert config.command is Command.GEN
    assert config.kind is TableKind.ALT
    assert config.table_spec().word_bits == 25
    assert config.interp == [1]
    assert config.format == "bin"


def test_verify_bits_generated(capsys):
    assert run(["verify-bits", "--addr-bits", "11"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "t2 = 1593" in out
    assert "t3 = 627" in out


def test_gen_then_verify_file(tmp_path, capsys):
    path = tmp_path / "mlt11.rsqt"
    assert run(["gen", "--kind", "mlt", "--addr-bits", "11", "--out-file", str(path)]) == EXIT_OK
    assert path.read_bytes()[:4] == b"RSQT"
    assert run(["verify-bits", "--table-file", str(path), "--expect-t2", "1593", "--expect-t3", "628"]) == EXIT_OK
    assert run(["verify-bits", "--table-file", str(path), "--expect-t2", "1500"]) == EXIT_DOMAIN


def test_verify_bits_compressed_file(tmp_path, capsys):
    path = tmp_path / "mlt12c.rsqt"
    assert run(["gen", "--addr-bits", "12", "--compressed", "--out-file", str(path)]) == EXIT_OK
    capsys.readouterr()
    assert run(["verify-bits", "--table-file", str(path)]) == EXIT_OK
    assert "t2 = 3186" in capsys.readouterr().out


def test_gen_csv_to_stdout(capsys):
    assert run(["gen", "--addr-bits", "4", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "address,value_hex,value_decimal"
    assert len(lines) == 17


def test_eval_prints_trace(capsys):
    assert run(["eval", "--x", "4.0", "--addr-bits", "11"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "table: MLT 2048x23 F=1" in out
    assert "converged after 1 iteration(s)" in out
    assert "final error: 0." in out


def test_eval_from_table_file(tmp_path, capsys):
    path = tmp_path / "alt.rsqt"
    assert run(["gen", "--kind", "alt", "--addr-bits", "12", "--interp", "4", "--out-file", str(path)]) == EXIT_OK
    assert run(["eval", "--x", "0x40490FDB", "--table-file", str(path)]) == EXIT_OK
    assert "ALT 4096x25 F=4" in capsys.readouterr().out


def test_sweep_then_report(tmp_path, capsys):
    csv_path = tmp_path / "sweep.csv"
    args = ["sweep", "--kind", "mlt", "--addr-bits", "11", "--interp", "1,2", "--samples", "50", "--out-file", str(csv_path)]
    assert run(args) == EXIT_OK
    records = parse_csv(csv_path.read_bytes())
    assert [r.spec.interp_factor for r in records] == [1, 2]
    assert all(r.corpus_id == (42, 50) for r in records)
    capsys.readouterr()
    assert run(["report", "--in-file", str(csv_path), "--layout", "table2"]) == EXIT_OK
    assert "Characteristics of a 2k×23 main table" in capsys.readouterr().out


def test_profile(capsys):
    args = ["profile", "--addr-bits", "6", "--word-bits", "6", "--fraction-bits", "52", "--samples", "20"]
    assert run(args) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "iteration,avg_error_exponent"
    assert [line.split(",")[0] for line in lines[1:]] == ["0", "1", "2", "3"]


@pytest.mark.parametrize("operand", ["0", "0xBF800000", "inf", "1e-40", "1e39", "-1e39"])
def test_domain_errors(operand):
    assert run(["eval", "--x", operand, "--addr-bits", "11"]) == EXIT_DOMAIN


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["sweep"],
    ["sweep", "--kind", "mlt", "--addr-bits", "11", "--compressed"],
    ["gen", "--addr-bits", "3", "--out-file", "x"],
    ["gen", "--addr-bits", "11"],
    ["gen", "--addr-bits", "11", "--interp", "2", "--compressed", "--out-file", "x"],
    ["gen", "--addr-bits", "11,12", "--out-file", "x"],
    ["eval", "--x", "abc", "--addr-bits", "11"],
    ["verify-bits"],
    ["sweep", "--kind", "mlt", "--addr-bits", "11", "--max-iter", "0"],
])
def test_usage_errors(argv):
    assert run(argv) == EXIT_USAGE


def test_file_errors(tmp_path):
    missing = tmp_path / "missing.csv"
    assert run(["report", "--in-file", str(missing)]) == EXIT_FORMAT
    garbage = tmp_path / "garbage.rsqt"
    garbage.write_bytes(b"not a table at all")
    assert run(["verify-bits", "--table-file", str(garbage)]) == EXIT_FORMAT
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert run(["report", "--in-file", str(empty)]) == EXIT_FORMAT


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == EXIT_OK
    assert "verify-bits" in capsys.readouterr().out


def test_sweep_output_is_reproducible(tmp_path):
    outputs = []
    for name in ("first.csv", "second.csv"):
        path = tmp_path / name
        args = ["sweep", "--kind", "alt", "--addr-bits", "8", "--interp", "1,4", "--samples", "100", "--out-file", str(path)]
        assert run(args) == EXIT_OK
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0].count(b"\n") == 3
