import json
import math
import subprocess
import sys

import numpy as np
import pytest

from engel_slr.cli import main
from engel_slr.tables import loads


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_geodesic_lightlike_endpoint(capsys):
    code, out, _ = run(capsys, "geodesic", "--xi", "1,1,0,0", "--smax", "1", "--step", "0.25")
    assert code == 0
    table = loads(out)
    assert table.columns == ("s", "x1", "x2", "y", "z")
    assert table.data[-1, 1:] == pytest.approx([-1, 1, 0, 1 / 3], abs=1e-14)
    assert table.metadata["case"] == "LightLike" and table.metadata["xi"] == [1, 1, 0, 0]
    assert table.metadata["clipped"] is False


def test_geodesic_json_and_case_check(capsys):
    code, out, _ = run(capsys, "geodesic", "--xi", "1,0,1,1", "--smax", "0.5", "--step", "0.1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["metadata"]["case"] == "TimelikeElliptic" and len(doc["rows"]) == 6
    code, _, err = run(capsys, "geodesic", "--xi", "1,0,1,1", "--case", "LightLike")
    assert code == 2 and "wrong case" in err


def test_geodesic_abnormal(capsys):
    code, out, _ = run(capsys, "geodesic", "--xi", "0,0,0,1", "--abnormal", "--sign", "-1", "--smax", "1", "--step", "0.5")
    assert code == 0
    assert loads(out).data[-1, 1:] == pytest.approx([0, -1, 0, -1 / 6])
    code, _, _ = run(capsys, "geodesic", "--xi", "0,0,1,1", "--abnormal")
    assert code == 2


def test_integrate(capsys):
    code, out, err = run(capsys, "integrate", "--xi", "1,0,0,0", "--smax", "1", "--step", "0.01")
    assert code == 0 and "drift=" in err
    table = loads(out)
    assert table.column("x1")[-1] == pytest.approx(-1, abs=1e-13)
    code, out, _ = run(capsys, "integrate", "--xi", "1,0,1,1", "--smax", "1", "--step", "0.001")
    H = loads(out).column("H")
    assert np.max(np.abs(H - H[0])) < 1e-10


def test_integrate_warns_and_diverges(capsys):
    code, _, err = run(capsys, "integrate", "--xi", "2,1,0,0", "--smax", "0.1")
    assert code == 0 and "warning" in err
    code, _, err = run(capsys, "integrate", "--xi", "2,1,50,30", "--smax", "5")
    assert code == 3 and "last good s=" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["geodesic"],
        ["geodesic", "--xi", "1,2"],
        ["geodesic", "--xi", "1,0,0,0", "--smax", "-1"],
        ["geodesic", "--xi", "1,0,0,0", "--step", "0"],
        ["plot-data"],
        ["plot-data", "fig1", "--xi", "1,0,0,0"],
        ["verify", "--tolerance", "nonsense=1"],
        ["verify", "--tolerance", "oops"],
        ["frobnicate"],
    ],
)
def test_usage_errors(capsys, argv):
    # argparse failures leave through SystemExit, validation failures return
    try:
        code = main(argv)
    except SystemExit as stop:
        code = stop.code
    assert code == 1


def test_trivial_costate_exit_code(capsys):
    assert run(capsys, "geodesic", "--xi", "0,0,0,0")[0] == 2
    assert run(capsys, "integrate", "--xi", "0,0,0,0")[0] == 2


def test_io_error(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    code, _, err = run(capsys, "geodesic", "--xi", "1,0,0,0", "--out", str(target))
    assert code == 5 and "I/O error" in err


def test_verify_suite_and_failure(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "--suite", "elliptic")
    report = json.loads(out)
    assert code == 0 and report["passed"] and {r["suite"] for r in report["results"]} == {"elliptic"}
    path = tmp_path / "report.json"
    code, out, err = run(capsys, "verify", "--suite", "oracle", "--n-random", "3", "--tolerance", "oracle=1e-15", "--out", str(path))
    assert code == 4 and out == "" and "FAIL oracle/" in err
    assert not json.loads(path.read_text())["passed"]


def test_plot_data_custom(tmp_path, capsys):
    code, out, _ = run(capsys, "plot-data", "--xi", "1.4142135623730951,1,1,0", "--out", str(tmp_path), "--no-render")
    assert code == 0
    paths = out.split()
    assert len(paths) == 1 and paths[0].endswith(".csv")
    table = loads(open(paths[0]).read())
    assert table.columns == ("x1", "x2") and len(table.data) == 201


def test_plot_data_figure_with_render(tmp_path, capsys):
    pytest.importorskip("matplotlib")
    code, out, _ = run(capsys, "plot-data", "fig2", "--out", str(tmp_path), "--format", "json")
    assert code == 0
    paths = out.split()
    assert len(paths) == 4 and paths[-1].endswith("fig2.png")
    assert open(paths[-1], "rb").read(8) == b"\x89PNG\r\n\x1a\n"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "engel_slr.cli", "geodesic", "--xi", "1,0,0,0", "--smax", "1", "--step", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert loads(proc.stdout).data[-1, 1] == pytest.approx(-1.0)
    assert math.isfinite(loads(proc.stdout).data[-1, 4])
