import csv
import io
import json
import subprocess
import sys

import pytest

from bianchi.cli import EXIT_OK, EXIT_PARTIAL, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_bounds_json_round_trip():
    code, text = run("bounds", "--disc", "-23", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(text)
    assert data["disc"] == -23
    assert data["J"] == 18
    assert data["deltaNormSq"] == 23
    assert data["lower"]["exact"]["sq_surd_radicand"] == 23
    assert json.dumps(data, indent=2) + "\n" == text


def test_swan_json_and_generators():
    code, text = run("swan", "--disc", "-23", "--format", "json", "--generators")
    assert code == EXIT_OK
    data = json.loads(text)
    assert data["swanSq"] == 16 and data["certified"]
    assert all(g["detIsOne"] and g["betaReduced"] and g["normMu"] <= 16 for g in data["generators"])


def test_swan_partial_exit_code():
    code, text = run("swan", "--disc", "-388", "--budget-secs", "0.01")
    assert code == EXIT_PARTIAL
    assert "UNCERTIFIED" in text


def test_svg_is_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run("swan", "--disc", "-23", "--svg", str(a))[0] == EXIT_OK
    assert run("swan", "--disc", "-23", "--svg", str(b))[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.startswith("<?xml") and text.rstrip().endswith("</svg>")
    assert text.count("<circle") > 0


def test_figure6_csv(tmp_path):
    path = tmp_path / "fig.csv"
    code, _ = run("figure6", "--max-abs-disc", "30", "--swan-upto", "30", "--out", str(path))
    assert code == EXIT_OK
    raw = path.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.DictReader(io.StringIO(raw.decode())))
    assert [int(r["disc"]) for r in rows] == [-3, -4, -7, -8, -11, -15, -19, -20, -23, -24]
    assert {int(r["disc"]): int(r["swanSq"]) for r in rows}[-23] == 16


def test_figure6_threads_byte_identical():
    a = run("figure6", "--max-abs-disc", "40", "--swan-upto", "24", "--workers", "1")[1]
    b = run("figure6", "--max-abs-disc", "40", "--swan-upto", "24", "--workers", "4")[1]
    assert a == b


def test_jacobsthal_commands():
    code, text = run("jacobsthal", "--disc", "-20", "--format", "json", "big", "--x", "20")
    assert code == EXIT_OK
    data = json.loads(text)
    assert data["value"] == 12
    code, text = run("jacobsthal", "--disc", "-20", "--format", "json", "little", "--ideal", "3,2")
    assert json.loads(text)["value"] == 2
    code, text = run("jacobsthal", "--disc", "-7", "fixedpoint")
    assert text.strip() == "J: 1"


def test_singular_command():
    code, text = run("singular", "--disc", "-132", "--format", "json")
    assert code == EXIT_OK
    assert len(json.loads(text)) == 5
    assert run("singular", "--disc", "-163")[1] == ""


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--disc", "-12"],
        ["bounds", "--disc", "7"],
        ["bounds", "--disc", "x"],
        ["jacobsthal", "--disc", "-20", "little", "--ideal", "2,3"],
        ["jacobsthal", "--disc", "-20", "big", "--x", "-1"],
        ["figure6", "--max-abs-disc", "2"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_one():
    with pytest.raises(SystemExit) as e:
        main(["nope"])
    assert e.value.code == EXIT_USAGE


def test_nonfundamental_suggests_neighbours(capsys):
    run("bounds", "--disc", "-12")
    err = capsys.readouterr().err
    assert "-11" in err and "-15" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bianchi", "bounds", "--disc", "-3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "J = 1" in proc.stdout
