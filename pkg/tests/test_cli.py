import csv
import io
import json
import math

import pytest

from sicplpf import bounds as bd
from sicplpf import cli


def read(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def test_every_preset_builds():
    for name in cli.PRESETS:
        spec = cli.figure_preset(name)
        assert spec.points()
    with pytest.raises(cli.SweepError):
        cli.figure_preset("fig9")


def test_preset_parameters():
    assert cli.figure_preset("fig2").fixed["ks"] == [1, 2, 3, 4, 5]
    assert cli.resolve_point("pk", cli.figure_preset("fig3").points()[0]).beta == pytest.approx(2 / 3)
    assert [p["b"] for p in cli.figure_preset("fig4").points()] == [-1.0, 0.0, 1.0]
    assert cli.figure_preset("fig8").series["W"] == [0.1, 1.0, 10.0]
    pt = cli.resolve_point("throughput", cli.figure_preset("fig8").points()[0])
    assert pt.a_bar == pytest.approx(math.pi)
    assert cli.figure_preset("fig13").series == {"theta_db": [0.0, 2.0], "n": [1, 2, 10]}
    assert cli.figure_preset("fig14").series["alpha"] == [3.3, 3.5, 3.7]
    assert cli.figure_preset("fig15").series["eta"] == [0.3, 0.6, 0.9]
    assert cli.resolve_point("hcn", cli.figure_preset("fig11").points()[0]).beta == pytest.approx(2 / 2.5)


def test_spec_validation():
    with pytest.raises(cli.SweepError):
        cli.SweepSpec(command="pk", var="theta_db", start=0, stop=1, count=1, fixed={"beta": 0.5})
    with pytest.raises(cli.SweepError):
        cli.SweepSpec(command="pk", var="theta_db", start=0, stop=1, fixed={"beta": 1.5})
    with pytest.raises(cli.SweepError):
        cli.SweepSpec(command="hcn", var="theta_db", start=0, stop=1, fixed={"beta": 0.5})
    with pytest.raises(cli.SweepError):
        cli.SweepSpec(command="pk", var="k", start=0, stop=1, fixed={"beta": 0.5})
    with pytest.raises(cli.SweepError):
        cli.SweepSpec(command="pk", var="theta", start=0, stop=1, fixed={"beta": 0.5}, bounds=["nope"])


def test_theta_sweep_monotone(tmp_path):
    out = tmp_path / "p1.csv"
    code = cli.main(["pk", "--theta-db", "-10:20:7", "--beta", "0.5", "--k", "1", "--replicates", "2000",
                     "--bounds", "thm1_exact", "--out", str(out)])
    assert code == 0
    rows = read(out)
    assert len(rows) == 7
    p1 = [float(r["p1"]) for r in rows]
    thm = [float(r["thm1_exact_k1"]) for r in rows]
    assert all(a >= b for a, b in zip(p1, p1[1:]))
    assert all(a >= b for a, b in zip(thm, thm[1:]))


def test_csv_format(tmp_path):
    out = tmp_path / "en.csv"
    assert cli.main(["en", "--theta", "0.5,1,2", "--beta", "0.5", "--replicates", "500", "--out", str(out)]) == 0
    raw = out.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    header = raw.decode().splitlines()[0].split(",")
    assert header[:2] == ["theta", "beta"]
    assert {"en", "en_se", "en_lb", "en_ub", "en_smud_ub"} <= set(header)
    for row in read(out):
        for v in row.values():
            if v not in ("inf", "nan", ""):
                assert len(v.replace("-", "").replace(".", "").split("e")[0].lstrip("0")) <= 12


def test_rerun_and_workers_byte_identical(tmp_path):
    args = ["hcn", "--theta-db", "-5:5:3", "--eta", "0.6", "--alpha", "4", "--replicates", "3000", "--seed", "17",
            "--estimates", "coverage", "coverage_no_sic"]
    paths = [tmp_path / f"r{i}.csv" for i in range(3)]
    assert cli.main(args + ["--out", str(paths[0])]) == 0
    assert cli.main(args + ["--out", str(paths[1])]) == 0
    assert cli.main(args + ["--workers", "2", "--out", str(paths[2])]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes() == paths[2].read_bytes()
    other = tmp_path / "other.csv"
    assert cli.main(args[:-2] + ["--seed", "18", "--estimates", "coverage", "coverage_no_sic", "--out", str(other)]) == 0
    assert other.read_bytes() != paths[0].read_bytes()


def test_validation_failure_exit_code(tmp_path, capsys):
    out = tmp_path / "bad.csv"
    assert cli.main(["pk", "--beta", "1.5", "--out", str(out)]) == 2
    assert "beta" in capsys.readouterr().err
    assert not out.exists()
    assert cli.main(["hcn", "--beta", "0.5", "--out", str(out)]) == 2
    assert not out.exists()


def test_partial_file_removed(tmp_path, monkeypatch):
    out = tmp_path / "partial.csv"
    spec = cli.SweepSpec(command="pk", var="theta", values=[1.0], fixed={"beta": 0.5, "ks": [1]},
                         estimates=[], bounds=["thm1_exact"])

    def broken(path, header, rows):
        with open(path, "w") as fh:
            fh.write("theta,")
        raise OSError("disk full")

    monkeypatch.setattr(cli, "write_csv", broken)
    with pytest.raises(OSError):
        cli.run_sweep(spec, str(out))
    assert not out.exists()


def test_config_file(tmp_path):
    cfg = tmp_path / "sweep.json"
    cfg.write_text(json.dumps({"var": "eta", "start": 0.3, "stop": 0.9, "count": 3,
                               "fixed": {"theta": 1.0, "alpha": 4.0, "n": 2},
                               "estimates": [], "bounds": ["hcn_pcn_ub", "hcn_pc_ml_closed"]}))
    out = tmp_path / "c.csv"
    assert cli.main(["hcn", "--config", str(cfg), "--out", str(out)]) == 0
    rows = read(out)
    for r in rows:
        eta = float(r["eta"])
        assert float(r["hcn_pcn_ub"]) == pytest.approx((3 - eta) * eta / math.pi, rel=1e-11)
    cfg.write_text(json.dumps({"var": "eta", "values": [0.5], "fixed": {"theta": 1}, "mystery": 1}))
    assert cli.main(["hcn", "--config", str(cfg), "--out", str(out)]) == 2


def test_fig2_matches_exact_tail_above_zero_db(tmp_path):
    spec = cli.figure_preset("fig2")
    spec.values = [0.0, 3.0, 7.0]
    spec.replicates = 4000
    header, rows = cli.sweep_rows(spec)
    for row in rows:
        r = dict(zip(header, row))
        for k in range(1, 6):
            est, se = float(r[f"tail{k}"]), float(r[f"tail{k}_se"])
            exact = float(r[f"thm1_exact_k{k}"])
            assert abs(est - exact) <= 3 * max(se, 1e-3)


def test_list_command(capsys):
    assert cli.main(["list"]) == 0
    assert "hcn_pc_sic_lta" in capsys.readouterr().out
