import json
from pathlib import Path

import pytest

from chiral_miura.cli import main

GOLDEN = Path(__file__).parent / "golden"
SMALL = ["--pairs", "3", "--weight", "3"]


@pytest.fixture(scope="module")
def cache(tmp_path_factory):
    return tmp_path_factory.mktemp("cache")


@pytest.fixture(scope="module")
def small_table_file(cache):
    out = cache / "small.json"
    assert main(["--cache", str(cache), "table", *SMALL, "--out", str(out)]) == 0
    return out


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr()


def test_psido_mul_golden(capsys):
    code, out = run(capsys, ["psido", "mul", "--trunc", "2"])
    assert code == 0
    assert out.out == (GOLDEN / "psido_mul_trunc2.txt").read_text()


def test_psido_inv_first_coefficient(capsys):
    code, out = run(capsys, ["psido", "inv", "--truncation", "1", "--left", "U"])
    assert code == 0
    assert out.out == "order: -lam\nV_1 = -U_1\n"


def test_psido_times_inverse_is_identity(capsys):
    code, out = run(capsys, ["psido", "mul", "--trunc", "4", "--with-inverse", "--format", "json"])
    data = json.loads(out.out)
    assert code == 0 and data["order"] == "0"
    assert set(data["coeffs"].values()) == {"0"}


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["psido", "mul", "--trunc", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["psido", "mul", "--left-order", "x y"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2


def test_table_cache_hit_is_byte_identical(cache, small_table_file, capsys):
    again = cache / "again.json"
    code, out = run(capsys, ["--cache", str(cache), "table", *SMALL, "--out", str(again)])
    assert code == 0 and "cache hit" in out.err
    assert again.read_bytes() == small_table_file.read_bytes()


def test_report_entry_golden(small_table_file, capsys):
    code, out = run(capsys, ["report", "--table", str(small_table_file), "--entry", "1,1,1"])
    assert code == 0
    assert out.out == (GOLDEN / "entry_1_1_1.txt").read_text()


def test_corrupted_table_exit_1(small_table_file, tmp_path, capsys):
    data = json.loads(small_table_file.read_text())
    data["entries"][0]["terms"][0]["coeff"]["terms"][0][1] = "12345"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out = run(capsys, ["verify", "--suite", "thm2", "--table", str(bad)])
    assert code == 1 and "rejected" in out.err


def test_corrupted_cache_is_not_overwritten(cache, capsys):
    code, out = run(capsys, ["--cache", str(cache), "table", *SMALL, "--out", str(cache / "x.json")])
    path = Path(out.err.split(": ", 1)[1].strip())
    path.write_text(path.read_text().replace('"nu"', '"hbar"', 1))
    before = path.read_bytes()
    code, out = run(capsys, ["--cache", str(cache), "table", *SMALL])
    assert code == 1
    assert path.read_bytes() == before
    path.unlink()


def test_verify_thm2_passes_and_writes_reports(small_table_file, tmp_path, capsys):
    argv = ["verify", "--suite", "thm2", "--table", str(small_table_file), "--out-dir", str(tmp_path)]
    code, out = run(capsys, argv)
    assert code == 0 and "overall: PASS" in out.out
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["suites"][0]["name"] == "thm2"
    first = (tmp_path / "report.json").read_bytes()
    run(capsys, argv)
    assert (tmp_path / "report.json").read_bytes() == first
