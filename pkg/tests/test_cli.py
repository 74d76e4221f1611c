import csv
import io
import json
import subprocess
import sys

import pytest

from subcons.bench import cli
from subcons.bench.cli import main
from subcons.bench.verify import VerifyResult, verify_instance
from subcons.oracles import CustomOracle, Modular


def gen(tmp_path, name="inst", kind="speech-like", n=10, seed=1, *extra):
    path = tmp_path / f"{name}.json"
    assert main(["gen", "--kind", kind, "--n", str(n), "--seed", str(seed), "--out", str(path), *extra]) == 0
    return path


def solve(path, out, *extra):
    return main(["solve", "--instance", str(path), "--out", str(out), *extra])


def rows_without_time(path):
    rows = cli.read_results(path)
    for r in rows:
        r.pop("wall_time_ns")
    return rows


def test_gen_stdout_matches_file(tmp_path, capsys):
    path = gen(tmp_path)
    assert main(["gen", "--kind", "speech-like", "--n", "10", "--seed", "1"]) == 0
    assert capsys.readouterr().out == path.read_text()


def test_gen_bound_and_params(tmp_path):
    path = gen(tmp_path, "h", "hardness-pair", 12, 0, "--param", "alpha=4", "--param", "beta=2")
    doc = json.loads(path.read_text())
    assert doc["bound"] == {"cover": 4.0}
    path = gen(tmp_path, "m", "modular-pair", 6, 0, "--cover-frac", "0.5")
    assert "cover" in json.loads(path.read_text())["bound"]


def test_solve_rows_sorted_with_baseline_and_ratio(tmp_path):
    path = gen(tmp_path)
    out = tmp_path / "res.json"
    assert solve(path, out, "--budget-frac", "0.6,0.4", "--algo", "isk,gr,random") == 0
    rows = cli.read_results(out)
    keys = [(r["instance"], r["algorithm"], r["bound"]) for r in rows]
    assert keys == sorted(keys)
    assert {r["algorithm"] for r in rows} == {"gr", "isk", "random:gr", "random:isk"}
    for r in rows:
        assert r["ratio"] == pytest.approx(r["g_value"] / r["brute_force_opt"])
        if not r["algorithm"].startswith("random"):
            assert r["f_value"] <= r["bound"] + 1e-9


def test_solve_defaults_and_csv(tmp_path):
    path = gen(tmp_path, "mp", "modular-pair", 8, 2, "--cover-frac", "0.5")
    out = tmp_path / "res.csv"
    assert solve(path, out, "--format", "csv") == 0
    rows = list(csv.DictReader(out.open()))
    algos = {r["algorithm"] for r in rows}
    assert {"issc", "ssc_greedy", "ssc_dual_greedy", "brute_force"} <= algos
    assert all(r["problem"] == "scsc" for r in rows)
    bf = next(r for r in rows if r["algorithm"] == "brute_force")
    assert float(bf["ratio"]) == 1.0


def test_solve_is_deterministic_across_thread_counts(tmp_path, monkeypatch):
    path = gen(tmp_path)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    monkeypatch.setenv("SUBCONS_THREADS", "1")
    assert solve(path, a, "--budget-frac", "0.3,0.5,0.7") == 0
    monkeypatch.setenv("SUBCONS_THREADS", "4")
    assert solve(path, b, "--budget-frac", "0.3,0.5,0.7") == 0
    assert rows_without_time(a) == rows_without_time(b)
    monkeypatch.setenv("SUBCONS_THREADS", "many")
    assert solve(path, b) == 1


def test_usage_errors_exit_1(tmp_path, capsys):
    path = gen(tmp_path)
    out = tmp_path / "r.json"
    assert main(["solve", "--out", str(out)]) == 1
    assert solve(path, out, "--algo", "nope") == 1
    assert solve(path, out, "--budget-frac", "0.5", "--cover-frac", "0.5") == 1
    assert solve(path, out, "--budget-frac", "0.01") == 1
    assert solve(tmp_path / "missing.json", out) == 1
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--eps", "abc"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3}')
    assert solve(bad, out) == 1
    assert "error" in capsys.readouterr().err


def test_infeasible_cover_exits_2(tmp_path):
    path = gen(tmp_path, "mp", "modular-pair", 6, 0, "--cover-frac", "0.5")
    doc = json.loads(path.read_text())
    doc["bound"] = {"cover": 1e6}
    path.write_text(json.dumps(doc))
    assert solve(path, tmp_path / "r.json", "--algo", "ssc_greedy") == 2


def test_verify_pass_and_limits(tmp_path, capsys):
    path = gen(tmp_path, "v", "speech-sat", 9, 4)
    assert main(["verify", "--instance", str(path), "--trials", "4"]) == 0
    assert capsys.readouterr().out.startswith("PASS v: ")
    big = gen(tmp_path, "big", "speech-like", 17, 0)
    assert main(["verify", "--instance", str(big)]) == 1


def test_verify_failure_exits_3(tmp_path, monkeypatch, capsys):
    path = gen(tmp_path, "v", "modular-pair", 6, 0)
    monkeypatch.setattr(cli, "verify_instance", lambda *a, **k: VerifyResult(1, ["planted failure"]))
    assert main(["verify", "--instance", str(path)]) == 3
    assert capsys.readouterr().out == "FAIL v: planted failure\n"


def test_verify_catches_supermodular_oracle():
    sq = CustomOracle(5, lambda s: float(len(s)) ** 2, "square")
    res = verify_instance(sq, Modular([1.0] * 5), trials=2)
    assert not res.passed
    assert "submodular" in res.failures[0]


def test_verify_checks_solvers_on_valid_pairs():
    from helpers import speech_pair

    f, g = speech_pair(8, 3)
    res = verify_instance(f, g, trials=5, seed=1)
    assert res.passed, res.failures
    assert res.checked > 8


def test_report_merges_sorted_csv_and_plot_data(tmp_path, capsys):
    a = gen(tmp_path, "b_inst", seed=1)
    b = gen(tmp_path, "a_inst", seed=2)
    ra, rb = tmp_path / "ra.json", tmp_path / "rb.json"
    assert solve(a, ra, "--budget-frac", "0.4,0.6", "--algo", "gr") == 0
    assert solve(b, rb, "--budget-frac", "0.4,0.6", "--algo", "gr,isk") == 0
    plot = tmp_path / "plot.json"
    assert main(["report", str(ra), str(rb), "--plot-data", str(plot)]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 6
    keys = [(r["instance"], r["algorithm"], float(r["bound"])) for r in rows]
    assert keys == sorted(keys) and keys[0][0] == "a_inst"
    series = json.loads(plot.read_text())["series"]
    assert [(s["instance"], s["algorithm"]) for s in series] == [("a_inst", "gr"), ("a_inst", "isk"), ("b_inst", "gr")]
    assert all(len(s["x"]) == 2 for s in series)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"format": "other", "rows": []}))
    assert main(["report", str(bad)]) == 1


def test_csv_floats_round_trip(tmp_path):
    path = gen(tmp_path)
    j, c = tmp_path / "r.json", tmp_path / "r.csv"
    assert solve(path, j, "--algo", "gr") == 0
    assert main(["report", str(j), "--out", str(c)]) == 0
    row = next(csv.DictReader(c.open()))
    assert float(row["g_value"]) == cli.read_results(j)[0]["g_value"]


def test_config_defaults(tmp_path):
    path = gen(tmp_path)
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"algo": "gr", "budget-frac": 0.5, "instance": str(path)}))
    out = tmp_path / "r.json"
    assert main(["solve", "--config", str(cfg), "--out", str(out)]) == 0
    rows = cli.read_results(out)
    assert [r["algorithm"] for r in rows] == ["gr"] and rows[0]["bound_frac"] == 0.5
    # flags override the config
    assert main(["solve", "--config", str(cfg), "--algo", "isk", "--out", str(out)]) == 0
    assert [r["algorithm"] for r in cli.read_results(out)] == ["isk"]
    cfg.write_text(json.dumps({"colour": "blue"}))
    assert main(["solve", "--config", str(cfg)]) == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "subcons", "gen", "--kind", "modular-pair", "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["n"] == 4
    proc = subprocess.run([sys.executable, "-m", "subcons", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 1
