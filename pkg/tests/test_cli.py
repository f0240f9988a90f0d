import json
import math
import re
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np
import pytest

from ensearch import csvio, svgplot
from ensearch.cli import parse_alphas, run
from ensearch.data_model import DataError, as_dataset

from ensearch.search import SearchConfig, best_by_nzero, preferable, search, summarize, z_surface
from ensearch.synthetic import gaussian_linear

ROOT = Path(__file__).resolve().parents[1]
BUNDLED = ROOT / "data" / "tbi_synthetic.csv"
SVG = "{http://www.w3.org/2000/svg}"


def _write(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def _gaussian_csv(tmp_path, n=40, seed=0, scale=None):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, 3))
    y = x[:, 0] - 0.5 * x[:, 2] + 0.5 * rng.standard_normal(n)
    if scale is not None:
        x = x * scale
    lines = ["y,a,b,c"] + [",".join(repr(float(v)) for v in (yi, *row)) for yi, row in zip(y, x)]
    return _write(tmp_path, "\n".join(lines) + "\n", f"g{seed}.csv")


def test_parse_alphas_range():
    np.testing.assert_allclose(parse_alphas("0.05:0.95:10"), np.linspace(0.05, 0.95, 10))
    np.testing.assert_allclose(parse_alphas("0.05:0.95:10")[[0, 1, -1]], [0.05, 0.15, 0.95])
    assert parse_alphas("0.2, 0.7").tolist() == [0.2, 0.7]


def test_bad_flag_is_usage_error(capsys):
    assert run(["--bogus"]) == 2
    assert "usage" in capsys.readouterr().err


def test_bad_alpha_value_is_usage_error(tmp_path, capsys):
    p = _gaussian_csv(tmp_path)
    assert run(["--data", str(p), "--response", "y", "--alphas", "0.5,1.5", "--out", str(tmp_path / "o")]) == 2


def test_load_csv_three_rows(tmp_path):
    d = csvio.load_csv(_write(tmp_path, "y,x\n1,2\n2,3.5\n3,1\n"), "y")
    assert (d.n, d.p) == (3, 1)
    assert d.column_names == ("x",)
    assert d.x[:, 0].tolist() == [2.0, 3.5, 1.0]


def test_load_csv_na_names_row_and_column(tmp_path):
    with pytest.raises(DataError, match=r"row 3.*'x'"):
        csvio.load_csv(_write(tmp_path, "y,x\n1,2\n2,NA\n3,1\n"), "y")


def test_load_csv_header_only(tmp_path):
    with pytest.raises(DataError, match="no observations"):
        csvio.load_csv(_write(tmp_path, "y,x\n"), "y")


def test_load_csv_keeps_column_order(tmp_path):
    d = csvio.load_csv(_write(tmp_path, "b,y,a\n1,0,2\n3,1,4\n5,0,7\n"), "y")
    assert d.column_names == ("b", "a")


@pytest.mark.parametrize("text, response, family, pattern", [
    ("y,x\n0,1\n2,2\n1,3\n", "y", "binomial", r"row 3"),
    ("y,x\n0,1\n1,2\n", "nope", "gaussian", r"'nope'"),
])
def test_data_errors_exit_3(tmp_path, capsys, text, response, family, pattern):
    p = _write(tmp_path, text)
    code = run(["--data", str(p), "--response", response, "--family", family, "--out", str(tmp_path / "o")])
    assert code == 3
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and re.search(pattern, err[0])


def test_missing_file_exit_3(tmp_path):
    assert run(["--data", str(tmp_path / "none.csv"), "--response", "y", "--out", str(tmp_path / "o")]) == 3


def test_unwritable_output_exit_4(tmp_path):
    p = _gaussian_csv(tmp_path)
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code = run(["--data", str(p), "--response", "y", "--alphas", "0.5", "--nlambda", "5", "--folds", "4",
                "--out", str(blocker / "sub")])
    assert code == 4


@pytest.fixture(scope="module")
def bundled_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("bundled")
    args = ["--data", str(BUNDLED), "--response", "injury", "--family", "binomial", "--nlambda", "30",
            "--sensitivity", "2", "--out", str(out)]
    assert run(args) == 0
    return out, args


def test_end_to_end_outputs_parse(bundled_run):
    out, _ = bundled_run
    summary = json.loads((out / "summary.json").read_text())
    assert len(summary["records"]) == 10 * 30
    assert summary["columns"] == list(csvio.SUMMARY_COLUMNS)
    pref = json.loads((out / "preferable.json").read_text())
    assert set(pref["coefficients"]) == set(csvio.load_csv(BUNDLED, "injury", "binomial").column_names)
    assert pref["cvm"] == min(r["cvm"] for r in summary["records"])
    for name in ("contour.svg", "nzero.svg"):
        root = ET.parse(out / name).getroot()
        assert root.tag == f"{SVG}svg" and root.get("version") == "1.1"
    sens = json.loads((out / "sensitivity.json").read_text())
    assert len(sens["reps"]) == 2


def test_rerun_is_byte_identical(bundled_run, tmp_path):
    out, args = bundled_run
    again = tmp_path / "again"
    args = list(args)
    args[args.index("--out") + 1] = str(again)
    assert run(args) == 0
    for name in ("summary.json", "preferable.json", "contour.svg", "nzero.svg", "sensitivity.json"):
        assert (out / name).read_bytes() == (again / name).read_bytes(), name


def test_summary_csv_round_trip(tmp_path):
    p = _gaussian_csv(tmp_path, seed=3)
    out = tmp_path / "o"
    assert run(["--data", str(p), "--response", "y", "--alphas", "0.1:0.9:3", "--nlambda", "12",
                "--folds", "5", "--seed", "7", "--format", "csv", "--out", str(out)]) == 0
    data = csvio.load_csv(p, "y")
    res = search(data, SearchConfig(alphas=np.linspace(0.1, 0.9, 3), nlambda=12, k_folds=5, seed=7))
    assert csvio.read_summary_csv(out / "summary.csv") == summarize(res)


def test_json_summary_round_trip(tmp_path):
    p = _gaussian_csv(tmp_path, seed=4)
    out = tmp_path / "o"
    assert run(["--data", str(p), "--response", "y", "--alphas", "0.3,0.6", "--nlambda", "8",
                "--folds", "4", "--out", str(out)]) == 0
    res = search(csvio.load_csv(p, "y"), SearchConfig(alphas=[0.3, 0.6], nlambda=8, k_folds=4))
    assert csvio.read_summary_json(out / "summary.json") == summarize(res)


def test_fmt_is_shortest_round_trip():
    for v in (0.1, 1 / 3, 1.216e-4, 2.0 ** -1074, 1e300):
        assert float(csvio.fmt(v)) == v
    assert csvio.fmt(0.1) == "0.1"


def test_single_cell_contour_is_valid(tmp_path):
    rng = np.random.default_rng(1)
    x = rng.standard_normal((20, 2))
    data = as_dataset(x, x[:, 0] + rng.standard_normal(20))
    res = search(data, SearchConfig(alphas=[0.5], nlambda=1, k_folds=4))
    path = tmp_path / "c.svg"
    svgplot.emit_contour_svg(z_surface(res), path)
    root = ET.parse(path).getroot()
    cells = root.find(f"{SVG}g[@id='cells']")
    assert len(cells) == 1
    svgplot.emit_nzero_svg(best_by_nzero(res), tmp_path / "n.svg")
    ET.parse(tmp_path / "n.svg")


def test_marker_sits_on_preferable_point(tmp_path):
    data, _ = gaussian_linear(40, 4, seed=2, n_signal=2)
    res = search(data, SearchConfig(alphas=[0.2, 0.5, 0.8], nlambda=10, k_folds=4))
    rec, _ = preferable(res)
    surf = z_surface(res)
    xa, ya, _, _ = svgplot.contour_axes(surf)
    root = ET.fromstring(svgplot.contour_svg(surf))
    marker = root.find(f".//{SVG}circle[@id='global-minimum']")
    assert marker.get("fill") == svgplot.MIN_MARKER
    assert float(marker.get("cx")) == pytest.approx(xa(rec.alpha), abs=0.005)
    assert float(marker.get("cy")) == pytest.approx(ya(math.log10(rec.lam)), abs=0.005)


def test_contour_uses_palette_and_legend():
    data, _ = gaussian_linear(40, 4, seed=5)
    root = ET.fromstring(svgplot.contour_svg(z_surface(search(data, SearchConfig(alphas=[0.3, 0.7], nlambda=6,
                                                                                   k_folds=4)))))
    fills = {r.get("fill") for r in root.find(f"{SVG}g[@id='cells']")}
    assert fills <= set(svgplot.PALETTE)
    assert root.find(f"{SVG}g[@id='legend']") is not None
    labels = [t.text for t in root.find(f"{SVG}g[@id='tick-labels']")]
    assert all(re.fullmatch(r"-?[0-9.e+-]+", s) for s in labels)


def test_nzero_plot_requires_rows(tmp_path):
    with pytest.raises(ValueError):
        svgplot.emit_nzero_svg([], tmp_path / "n.svg")
