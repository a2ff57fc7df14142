import json
import math
import subprocess
import sys

import pytest

from partlab import count_box
from partlab.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["count", "P", "--n", "5"], "7\n"),
        (["count", "A", "--n", "0", "--j", "3", "--r", "3"], "1\n"),
        (["count", "C", "--n", "5", "--k", "2", "--r", "3"], "1\n"),
        (["count", "B", "--n", "3", "--k", "2", "--r", "2"], "1\n"),
        (["count", "P", "--n", "100"], "190569292\n"),
    ],
)
def test_count_examples(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "A", "--n", "5"],
        ["count", "P", "--n", "-1"],
        ["count", "C", "--n", "5", "--k", "0", "--r", "2"],
        ["compare", "A", "--n-grid", ""],
        ["graphical", "--n", "5", "--exact"],
        ["estimate", "theorem1", "--n", "100"],
        ["--seed", "-4", "sample", "--n", "3"],
        ["nonsense"],
    ],
)
def test_argument_errors_exit_2(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out == ""


def test_budget_errors_exit_3(capsys):
    code, _, err = run(capsys, "compare", "A", "--n-grid", "500,6000")
    assert code == 3 and "6000" in err
    assert run(capsys, "graphical", "--n", "100", "--exact")[0] == 3
    assert run(capsys, "ranks", "--n", "80", "--enumerate")[0] == 3
    assert run(capsys, "--enum-cap", "10", "graphical", "--n", "12")[0] == 3


def test_numeric_failure_exit_4(capsys):
    code, _, err = run(capsys, "--quad-max-subdivisions", "1", "esseen", "--K", "2")
    assert code == 4 and "did not converge" in err


def test_compare_csv(capsys):
    code, out, _ = run(capsys, "compare", "A", "--n-grid", "500,1000,2000", "--central")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 7
    assert lines[0] == "family,estimator,n,j,r,exact,estimate_log,ratio,regime,x1,y1"
    for line in lines[1:]:
        f = line.split(",")
        assert int(f[5]) == count_box(int(f[2]), int(f[3]), int(f[4]))
        assert math.isfinite(float(f[7]))
        assert len(f[6].replace("-", "").replace(".", "")) >= 15


def test_json_mode_keys_match_csv(capsys):
    _, csv_out, _ = run(capsys, "esseen", "--K", "3")
    _, json_out, _ = run(capsys, "--out", "json", "esseen", "--K", "3")
    header = csv_out.splitlines()[0].split(",")
    objs = [json.loads(line) for line in json_out.splitlines()]
    assert len(objs) == 3 and all(list(o) == header for o in objs)
    assert objs[0]["sigma2"] == pytest.approx(math.pi**2 / 3, abs=1e-10)


def test_env_fallback_and_flag_precedence(capsys, monkeypatch):
    monkeypatch.setenv("PARTLAB_OUT", "json")
    _, out, _ = run(capsys, "count", "P", "--n", "5")
    assert json.loads(out)["count"] == 7
    _, out, _ = run(capsys, "--out", "csv", "count", "P", "--n", "5")
    assert out == "7\n"
    monkeypatch.setenv("PARTLAB_SEED", "11")
    _, a, _ = run(capsys, "sample", "--n", "30", "--count", "4")
    _, b, _ = run(capsys, "--seed", "11", "sample", "--n", "30", "--count", "4")
    assert a == b


def test_graphical_examples(capsys):
    _, out, _ = run(capsys, "graphical", "--n", "4", "--exact")
    assert out.splitlines() == ["n,fraction,stderr,method,samples", "4,0.40000000000000002,0,exact,0"]
    _, out, _ = run(capsys, "graphical", "--n", "2", "--exact")
    assert float(out.splitlines()[1].split(",")[1]) == 0.5
    a = run(capsys, "--seed", "5", "graphical", "--n", "40", "--samples", "300")[1]
    b = run(capsys, "--seed", "5", "graphical", "--n", "40", "--samples", "300")[1]
    assert a == b and a.splitlines()[1].endswith(",sampled,300")


def test_graphical_sweep_writes_fit(capsys, tmp_path):
    fit_path = tmp_path / "fit.json"
    code, out, _ = run(capsys, "graphical", "--sweep", "12", "--fit-out", str(fit_path))
    assert code == 0 and len(out.splitlines()) == 7
    assert set(json.loads(fit_path.read_text())) == {"n", "ln_n"}


def test_ranks_output(capsys):
    _, out, _ = run(capsys, "ranks", "--n", "40", "--k", "1", "--enumerate")
    lines = out.splitlines()
    assert lines[0] == "t,empirical_cdf,theoretical_cdf,ks"
    footer = lines[-1].split(",")
    assert footer[:3] == ["", "", ""] and 0 < float(footer[3]) < 1
    _, out12, _ = run(capsys, "ranks", "--n", "12", "--k", "1")
    assert float(footer[3]) < float(out12.splitlines()[-1].split(",")[3])
    code, _, err = run(capsys, "ranks", "--n", "40", "--k", "7")
    assert code == 2 and "no partitions attain rank index k" in err


def test_esseen_output(capsys):
    code, out, err = run(capsys, "esseen", "--K", "50")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "k,sigma2,rho,s2_cum,r_cum,bound" and len(lines) == 51
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    assert abs(rows[0][1] - math.pi**2 / 3) <= 1e-10
    for a, b in zip(rows, rows[1:]):
        assert b[3] > a[3] and b[4] > a[4]
    for row in rows:
        assert abs(row[5] - 6 * row[4] / row[3] ** 1.5) <= 1e-12 * row[5]
    assert err.startswith("k0=")


def test_estimate_and_dist(capsys):
    _, out, _ = run(capsys, "estimate", "hr", "--n", "100")
    head, row = out.splitlines()
    assert head == "log_value,value_sci,regime,x1,y1"
    assert row.split(",")[1] == "1.993e+8"
    _, out, _ = run(capsys, "dist", "gumbel", "--x=0")
    assert out.splitlines()[1] == "gumbel,,0,0.36787944117144233"
    _, out, _ = run(capsys, "dist", "rank-cdf", "--k", "3", "--x=-1,0,1")
    vals = [float(line.split(",")[3]) for line in out.splitlines()[1:]]
    assert abs(vals[1] - 0.5) <= 1e-12 and vals[0] + vals[2] == pytest.approx(1)


def test_sample_output(capsys):
    _, out, _ = run(capsys, "--seed", "1", "sample", "--n", "10", "--count", "5")
    lines = out.splitlines()
    assert lines[0] == "partition" and len(lines) == 6
    for line in lines[1:]:
        parts = json.loads(line.strip('"'))
        assert sum(parts) == 10


def test_cache_flag_round_trip(capsys, tmp_path):
    path = tmp_path / "p.tsv"
    assert run(capsys, "--cache", str(path), "count", "P", "--n", "30")[0] == 0
    lines = path.read_text().splitlines()
    assert lines[30] == "30\t5604"
    assert run(capsys, "--cache", str(path), "count", "P", "--n", "10")[1] == "42\n"
    path.write_text("0\t1\n2\t2\n")
    code, _, err = run(capsys, "--cache", str(path), "count", "P", "--n", "3")
    assert code == 2 and "cache" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "partlab", "count", "P", "--n", "5"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "7\n"
