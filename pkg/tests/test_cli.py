import csv
import json

import pytest

from ergodic_wigner.cli import (
    FLUCTUATION_HEADER,
    HIST_HEADER,
    ORACLE_HEADER,
    PARTITIONS_HEADER,
    SIMULATE_HEADER,
    main,
)


def read_rows(path):
    with open(path) as fh:
        lines = [line for line in fh if not line.startswith("#")]
    return list(csv.reader(lines))


def test_simulate_one_trial(tmp_path):
    out = tmp_path / "sim.csv"
    assert main(["simulate", "--n", "64", "--trials", "1", "--seed", "3", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0] == SIMULATE_HEADER
    assert len(rows) == 2 and len(rows[1]) == 8
    hist = read_rows(tmp_path / "sim_hist.csv")
    assert hist[0] == HIST_HEADER
    assert sum(int(r[2]) for r in hist[1:]) == 64


def test_simulate_histogram_bins(tmp_path):
    out = tmp_path / "s.csv"
    main(["simulate", "--n", "32", "--trials", "2", "--bins", "7", "--out", str(out)])
    assert len(read_rows(tmp_path / "s_hist.csv")) == 8


def test_simulate_deterministic(tmp_path):
    args = ["simulate", "--spec", "AR1", "--param", "0.5", "--n", "48", "--trials", "3", "--seed", "11"]
    main(args + ["--out", str(tmp_path / "a.csv")])
    main(args + ["--out", str(tmp_path / "b.csv"), "--threads", "1"])
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert (tmp_path / "a_hist.csv").read_bytes() == (tmp_path / "b_hist.csv").read_bytes()


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"spec": {"kind": "EquiCorrelated", "param": 0.3}, "n": 16, "trials": 2, "seed": 4}))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["simulate", "--config", str(cfg), "--out", str(a)]) == 0
    assert main(["simulate", "--config", str(cfg), "--n", "20", "--out", str(b)]) == 0
    assert read_rows(a)[1][1] == "16"
    assert read_rows(b)[1][1] == "20"


def test_env_seed_fallback(tmp_path, monkeypatch):
    base = ["simulate", "--n", "16", "--trials", "1"]
    monkeypatch.setenv("EW_SEED", "99")
    main(base + ["--out", str(tmp_path / "env.csv")])
    main(base + ["--seed", "99", "--out", str(tmp_path / "flag.csv")])
    main(base + ["--seed", "98", "--out", str(tmp_path / "other.csv")])
    assert (tmp_path / "env.csv").read_bytes() == (tmp_path / "flag.csv").read_bytes()
    assert (tmp_path / "env.csv").read_bytes() != (tmp_path / "other.csv").read_bytes()


def test_partitions_rows(tmp_path):
    out = tmp_path / "p.csv"
    assert main(["partitions", "--k", "4", "--n-grid", "10,20", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0] == PARTITIONS_HEADER
    assert len(rows) == 7
    crossing = [r for r in rows[1:] if r[2] == "true"]
    assert {r[1] for r in crossing} == {"1-3|2-4"}
    assert [r[4] for r in crossing] == ["580", "4960"]


def test_oracle_gaussian_and_markov(tmp_path):
    g, m = tmp_path / "g.csv", tmp_path / "m.csv"
    assert main(["oracle", "--n", "8", "--k", "4", "--trials", "20", "--out", str(g)]) == 0
    assert main(["oracle", "--n", "8", "--k", "4", "--spec", "MarkovTwoState", "--param", "0.8",
                 "--trials", "20", "--out", str(m)]) == 0
    rg, rm = read_rows(g), read_rows(m)
    assert rg[0] == rm[0] == ORACLE_HEADER
    assert rg[1][3] != "" and float(rg[1][3]) > 0
    assert rm[1][3] == "" and rm[1][4] != ""
    assert rm[1][2] == "MarkovTwoState(0.8)"


def test_fluctuation_output(tmp_path):
    out = tmp_path / "f.csv"
    assert main(["fluctuation", "--n-grid", "8,16", "--k", "2", "--trials", "100", "--out", str(out)]) == 0
    text = out.read_text().splitlines()
    assert text[0].split(",") == FLUCTUATION_HEADER
    assert len([t for t in text[1:] if not t.startswith("#")]) == 2
    assert text[-1].startswith("# k=2") and "slope=" in text[-1]


def test_semicircle_tables(tmp_path):
    out = tmp_path / "sc.csv"
    assert main(["semicircle", "--bins", "11", "--k", "8", "--out", str(out)]) == 0
    assert len(read_rows(out)) == 12
    moments = read_rows(tmp_path / "sc_moments.csv")
    assert moments[-1] == ["8", "14"]


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate", "--spec", "AR1", "--param", "1.5"],
        ["simulate", "--n", "0"],
        ["partitions", "--k", "3"],
        ["partitions", "--k", "4", "--n-grid", "100"],
        ["fluctuation", "--n-grid", "64", "--trials", "200"],
        ["oracle", "--trials", "1"],
        ["simulate", "--spec", "Cauchy"],
    ],
)
def test_invalid_configs_exit_1_without_output(tmp_path, argv):
    out = tmp_path / "x.csv"
    assert main(argv + ["--out", str(out)]) == 1
    assert list(tmp_path.iterdir()) == []


def test_bad_json_config(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{not json")
    assert main(["simulate", "--config", str(cfg)]) == 1


def test_io_errors_exit_2(tmp_path):
    assert main(["simulate", "--n", "4", "--trials", "1", "--out", str(tmp_path / "missing" / "x.csv")]) == 2
    assert main(["simulate", "--config", str(tmp_path / "nope.json")]) == 2


def test_stdout_output(capsys):
    assert main(["semicircle", "--bins", "3", "--k", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("x,density,cdf\n")
    assert "k,moment" in out
