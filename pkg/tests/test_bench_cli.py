from __future__ import annotations

import csv
import json

import pytest

from dyncolor import bench, cli
from dyncolor.base import GreedyColorer
from dyncolor.bench import (
    ALGORITHMS,
    CSV_COLUMNS,
    ConfigError,
    ExperimentConfig,
    MetricsReport,
    VerificationFailure,
    emit_report,
    run_experiment,
)
from dyncolor.streams import gen_vertex_stream, parse_stream


def test_greedy_triangle_stream(tmp_path):
    p = tmp_path / "tri.txt"
    p.write_text("+e 0 1\n+e 1 2\n+e 0 2\n")
    r = run_experiment(ExperimentConfig(algo="greedy", stream=str(p), verify="every"))
    assert r.updates == 3
    assert r.recolorings <= 3
    assert r.violations == 0
    assert r.colors_used == 3


@pytest.mark.parametrize("algo", ALGORITHMS)
@pytest.mark.parametrize("gen", ["oblivious", "adaptive-conflict", "flip"])
def test_every_algorithm_is_deterministic_and_proper(algo, gen):
    cfg = dict(algo=algo, gen=gen, n=40, t=300, seed=4, verify="every", audit=True, audit_every=50, trace=True)
    a = run_experiment(ExperimentConfig(**cfg))
    b = run_experiment(ExperimentConfig(**cfg))
    assert a.to_json(with_wall_time=False) == b.to_json(with_wall_time=False)
    assert a.invariant_violations == 0
    assert a.amortized_recolorings == pytest.approx(a.recolorings / a.updates)
    assert a.amortized_work == pytest.approx(a.work / a.updates)


def test_vertex_stream_a2_beats_a1():
    s = gen_vertex_stream(1000, 3, seed=1)
    r1 = run_experiment(ExperimentConfig(algo="a1", gen="vertex", n=1000, seed=1), s)
    r2 = run_experiment(ExperimentConfig(algo="a2", gen="vertex", n=1000, seed=1), s)
    assert r2.amortized_recolorings < r1.amortized_recolorings


def test_empty_run_reports_zeros(tmp_path):
    r = run_experiment(ExperimentConfig(algo="log", n=10, t=0))
    assert r.updates == r.recolorings == 0
    assert r.amortized_recolorings == r.amortized_work == 0.0
    out = tmp_path / "r.json"
    emit_report(r, out)
    assert json.loads(out.read_text())["updates"] == 0


def test_report_schema_round_trip():
    r = run_experiment(ExperimentConfig(algo="const", n=30, t=200, seed=2))
    back = MetricsReport.from_dict(json.loads(r.to_json()))
    assert back == r
    assert r.epochs is not None and r.epochs["psdur_violations"] == 0


def test_csv_rows_have_fixed_width(tmp_path):
    path = tmp_path / "sweep.csv"
    for algo in ALGORITHMS:
        emit_report(run_experiment(ExperimentConfig(algo=algo, n=20, t=50)), None, path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == list(CSV_COLUMNS)
    assert len(rows) == 1 + len(ALGORITHMS)
    assert {len(r) for r in rows} == {len(CSV_COLUMNS)}


@pytest.mark.parametrize(
    "cfg",
    [
        dict(algo="nope"),
        dict(gen="nope"),
        dict(verify="sometimes"),
        dict(n=1),
        dict(t=-1),
        dict(d=0),
        dict(beta=1),
        dict(epsilon=1.5),
        dict(theta=0),
        dict(batch_override=0),
    ],
)
def test_config_validation(cfg):
    with pytest.raises(ConfigError):
        run_experiment(ExperimentConfig(**cfg))


class _Lazy(GreedyColorer):
    def on_edge_insert(self, u, v):
        pass


def test_verification_failure_halts(monkeypatch):
    monkeypatch.setattr(bench, "make_colorer", lambda cfg, n0: _Lazy(n0, 0))
    with pytest.raises(VerificationFailure) as exc:
        run_experiment(ExperimentConfig(n=10, t=200, verify="every"))
    assert exc.value.step >= 1 and exc.value.violations


def test_cli_gen_then_run(tmp_path, capsys):
    stream = tmp_path / "s.txt"
    assert cli.main(["gen", "--gen", "oblivious", "--n", "30", "--t", "100", "--seed", "3", "--out", str(stream)]) == 0
    assert len(parse_stream(stream.read_text())) == 100
    out, csv_path = tmp_path / "r.json", tmp_path / "r.csv"
    code = cli.main(
        ["run", "--algo", "log", "--stream", str(stream), "--verify", "every", "--out", str(out), "--csv", str(csv_path), "--trace"]
    )
    assert code == 0
    report = json.loads(out.read_text())
    assert report["updates"] == 100 and report["seed"] == 0
    assert len(report["trace"]) == 100
    assert csv_path.read_text().count("\n") == 2


def test_cli_prints_report_without_out(capsys):
    assert cli.main(["run", "--algo", "sparse-dense", "--gen", "adaptive-conflict", "--n", "20", "--t", "30"]) == 0
    assert json.loads(capsys.readouterr().out)["algo"] == "sparse-dense"


def test_cli_exit_code_on_verification_failure(monkeypatch, capsys):
    monkeypatch.setattr(bench, "make_colorer", lambda cfg, n0: _Lazy(n0, 0))
    assert cli.main(["run", "--algo", "greedy", "--gen", "oblivious", "--n", "10", "--t", "200", "--verify", "every"]) == 2
    err = capsys.readouterr().err
    dump = json.loads(err.strip().splitlines()[-1])
    assert dump["violations"][0]["kind"] == "monochromatic-edge"


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--algo", "greedy", "--gen", "oblivious", "--epsilon", "2"],
        ["run", "--algo", "greedy", "--stream", "/nonexistent/file"],
        ["run", "--algo", "bogus", "--gen", "oblivious"],
        ["run", "--algo", "greedy"],
        ["gen", "--gen", "oblivious", "--n", "1"],
    ],
)
def test_cli_config_errors_exit_three(argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 3


def test_cli_malformed_stream_exits_three(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("+e 0 0\n")
    assert cli.main(["run", "--algo", "greedy", "--stream", str(p)]) == 3
