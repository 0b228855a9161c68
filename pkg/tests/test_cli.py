import csv
import io
import json
import subprocess
import sys

import pytest

from qnlo import cli


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_state_dump(capsys):
    code, out, _ = run(["state", "--family", "nlcs", "--alpha-re", "1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "nlcs"


def test_gis_collapse_dump_identical(capsys):
    _, gis, _ = run(["state", "--family", "gis", "--alpha-re", "2", "--lambda", "1"], capsys)
    _, nl, _ = run(["state", "--family", "nlcs", "--alpha-re", "2"], capsys)
    assert json.loads(gis)["amplitudes"] == json.loads(nl)["amplitudes"]


def test_gk_dump_phases(capsys):
    _, a, _ = run(["state", "--family", "gk", "--z", "1", "--gamma-phase", "0.5"], capsys)
    _, b, _ = run(["state", "--family", "gk", "--z", "1"], capsys)
    amp_a, amp_b = json.loads(a)["amplitudes"], json.loads(b)["amplitudes"]
    assert len(amp_a) == len(amp_b)
    for (n, re_a, im_a), (m, re_b, im_b) in zip(amp_a, amp_b):
        assert n == m
        assert abs(complex(re_a, im_a)) == pytest.approx(abs(complex(re_b, im_b)), rel=1e-14)
    assert any(im != 0 for _, _, im in amp_a)


def test_state_profile(tmp_path, capsys):
    prof = tmp_path / "p.csv"
    code, _, _ = run(["state", "--alpha-re", "1", "--grid", "-6", "6", "13", "--profile-out", str(prof)], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(prof.read_text())))
    assert rows[0] == ["y", "re", "im", "abs2"] and len(rows) == 14


def test_stats_csv(tmp_path, capsys):
    path = tmp_path / "s.csv"
    code, _, _ = run(["stats", "--family", "even", "--r-min", "0", "--r-max", "1", "--r-step", "0.5",
                      "--out", str(path), "--format", "csv"], capsys)
    assert code == 0
    raw = path.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.reader(io.StringIO(raw.decode())))
    assert rows[0] == ["r", "mean_n", "q", "g2", "route"]
    first = rows[1]
    assert (first[1], first[2], first[3], first[4]) == ("4", "-1", "0.75", "direct")


def test_stats_csv_precision(capsys):
    from qnlo.states import build_nlcs
    from qnlo.statistics import moments

    _, out, _ = run(["stats", "--r-min", "1", "--r-max", "1", "--r-step", "1"], capsys)
    row = out.splitlines()[1].split(",")
    # 17 significant digits round-trip the double exactly
    assert float(row[1]) == moments(build_nlcs(1.0))[0]
    assert row[1] == format(float(row[1]), ".17g")


def test_stats_json_with_discrepancy(capsys):
    code, out, _ = run(["stats", "--family", "odd", "--r-min", "0", "--r-max", "2", "--r-step", "1",
                        "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["closed_form_discrepancy"]) == 3
    assert not any(d["flagged"] for d in doc["closed_form_discrepancy"])
    assert {r["route"] for r in doc["rows"]} == {"direct", "closed"}


def test_stats_routes_nlcs(capsys):
    _, out, _ = run(["stats", "--family", "gk", "--r-min", "1", "--r-max", "1", "--r-step", "1"], capsys)
    routes = [line.split(",")[-1] for line in out.splitlines()[1:]]
    assert routes == ["direct", "closed", "normalization"]


def test_determinism(capsys):
    args = ["stats", "--family", "nlcs", "--r-min", "0", "--r-max", "3", "--r-step", "0.5", "--format", "json"]
    _, a, _ = run(args, capsys)
    _, b, _ = run(args, capsys)
    assert a == b


def test_config_file_and_override(tmp_path, capsys):
    conf = tmp_path / "run.json"
    conf.write_text(json.dumps({"family": "odd", "sweep": {"r_min": 0, "r_max": 0, "r_step": 1}}, indent=1))
    _, out, _ = run(["stats", "--config", str(conf)], capsys)
    assert out.splitlines()[1].split(",")[1] == "3"
    _, out, _ = run(["stats", "--config", str(conf), "--family", "even"], capsys)
    assert out.splitlines()[1].split(",")[1] == "4"


def test_config_error_has_line(tmp_path, capsys):
    conf = tmp_path / "bad.json"
    conf.write_text('{\n "family": "nlcs",\n "sweep": {"r_min": 0, "r_max": -1, "r_step": 0.1}\n}\n')
    code, _, err = run(["stats", "--config", str(conf)], capsys)
    assert code == 1
    assert f"{conf}:3" in err


@pytest.mark.parametrize("args", [
    ["stats", "--family", "squeezed"],
    ["stats", "--r-step", "0"],
    ["state", "--family", "gis", "--alpha-re", "1", "--lambda", "-1"],
    ["pdm", "--gamma-mass", "0"],
    ["pdm", "--profile", "custom"],
    ["state", "--n-max", "2", "--alpha-re", "1"],
])
def test_config_errors_exit_one(args, capsys):
    code, _, err = run(args, capsys)
    assert code == 1 and err.startswith("qnlo:")


def test_figures(tmp_path, capsys):
    code, _, _ = run(["figures", "--figure", "2", "--out-dir", str(tmp_path), "--r-max", "2", "--r-step", "1"],
                     capsys)
    assert code == 0
    pn = list(csv.reader(open(tmp_path / "fig2_pn.csv")))
    assert pn[0] == ["r", "n", "p"]
    assert all(int(r[1]) % 2 == 0 for r in pn[1:])
    curves = (tmp_path / "fig2_curves.csv").read_text().splitlines()
    assert curves[0] == "r,mean_n,q,g2,route"


def test_verify_single_suite(capsys):
    code, out, _ = run(["verify", "--suite", "completeness"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["seed"] == 20240611
    names = [c["name"] for c in doc["suites"][0]["checks"]]
    assert any("n = 3: quadrature 1.5 vs gamma form 1.5" in n for n in names)


def test_verify_pdm_reduction(capsys):
    code, out, _ = run(["verify", "--suite", "pdm", "--gamma-mass", "1"], capsys)
    assert code == 0


def test_verify_failure_exit_two(capsys):
    code, out, _ = run(["verify", "--suite", "states", "--tol", "1e-30"], capsys)
    assert code == 2
    assert json.loads(out)["passed"] is False


def test_pdm_level(capsys):
    code, out, _ = run(["pdm", "--gamma-mass", "2", "--level", "3", "--grid", "-1", "1", "3"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "y,eta,m,re,im,abs2"
    mid = lines[2].split(",")
    assert mid[:3] == ["0", "0", "4"]


def test_pdm_state_and_table(tmp_path, capsys):
    table = tmp_path / "m.txt"
    table.write_text("".join(f"{y} {1 + 0.1 * y * y}\n" for y in range(-10, 11)))
    code, out, _ = run(["pdm", "--profile", "custom", "--mass-file", str(table), "--family", "gk", "--z", "1",
                        "--grid", "-2", "2", "5"], capsys)
    assert code == 0 and len(out.splitlines()) == 6


def test_entry_point_subprocess():
    res = subprocess.run([sys.executable, "-m", "qnlo.cli", "stats", "--r-min", "0", "--r-max", "0",
                          "--r-step", "1"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[1].startswith("0,3,-1,")
