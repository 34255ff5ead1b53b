"""Scenario/sweep loading, orchestration artifacts, CLI behavior."""

import json
import subprocess
import sys

import pytest

from malaria_dde import (
    NumericalError,
    SchemaError,
    SystemKind,
    load_scenario,
    load_sweep,
    run_scenario,
    run_sweep,
)

BASE = {
    "schema": 1,
    "params": {"beta_h": 2, "beta_v": 5, "mu_h": 0.5, "mu_v": 0.1,
               "c_vh": 0.2, "c_hv": 0.1, "tau": 1.0},
    "history": {"kind": "constant", "state": [4, 0.5, 30, 10]},
}


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def scenario_file(tmp_path, name="scn.json", **overrides):
    obj = {**BASE, **overrides}
    return write_json(tmp_path / name, obj)


def report_dict(lines):
    out = {}
    for ln in lines:
        key, _, value = ln.partition(" = ")
        out[key] = value
    return out


# ------------------------------------------------------------ loading

def test_load_scenario_defaults(tmp_path):
    scn = load_scenario(scenario_file(tmp_path))
    assert scn.params.beta_h == 2.0
    assert scn.system is SystemKind.FULL
    assert scn.t_end is None and scn.resolved_t_end() == 400.0
    assert scn.steps_per_delay == 20
    assert scn.analyses.simulate and scn.analyses.stability
    assert not scn.analyses.lyapunov
    assert scn.analyses.persistence == ()


@pytest.mark.parametrize("mutate,field", [
    (lambda o: o.pop("schema"), "scenario.schema"),
    (lambda o: o.update(schema=7), "scenario.schema"),
    (lambda o: o.pop("params"), "scenario.params"),
    (lambda o: o["params"].pop("mu_v"), "scenario.params.mu_v"),
    (lambda o: o["params"].update(mu_v=-1), "scenario.params.mu_v"),
    (lambda o: o["params"].update(extra=1), "scenario.params.extra"),
    (lambda o: o.update(history={"kind": "spline"}), "scenario.history.kind"),
    (lambda o: o.update(history={"kind": "constant", "state": [1, 2, 3]}),
     "scenario.history.state"),
    (lambda o: o.update(integration={"t_end": -5}), "scenario.integration.t_end"),
    (lambda o: o.update(integration={"steps_per_delay": 0}),
     "scenario.integration.steps_per_delay"),
    (lambda o: o.update(analyses={"persistence": [0.5, "x"]}),
     "scenario.analyses.persistence"),
    (lambda o: o.update(output={"formats": ["xml"]}), "scenario.output.formats"),
    (lambda o: o.update(typo=True), "scenario.typo"),
])
def test_load_scenario_schema_errors(tmp_path, mutate, field):
    obj = json.loads(json.dumps(BASE))
    mutate(obj)
    path = write_json(tmp_path / "bad.json", obj)
    with pytest.raises(SchemaError) as err:
        load_scenario(path)
    assert err.value.field == field


def test_load_scenario_invalid_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        load_scenario(str(p))
    with pytest.raises(SchemaError):
        load_scenario(str(tmp_path / "missing.json"))


def test_load_sweep_validation(tmp_path):
    good = {"schema": 1, "base": dict(BASE), "axis": "c_vh",
            "values": [0.1, 0.2], "columns": ["r0", "classification"]}
    sw = load_sweep(write_json(tmp_path / "s1.json", good))
    assert sw.axis == "c_vh"
    assert sw.columns == ("r0", "classification_e0", "classification_e_star")

    for mutate, field in [
        (lambda o: o.update(axis="gamma"), "sweep.axis"),
        (lambda o: o.update(values=[]), "sweep.values"),
        (lambda o: o.update(values=[0.1, -0.2]), "sweep.values[1]"),
        (lambda o: o.update(columns=["r0", "nope"]), "sweep.columns"),
        (lambda o: o.pop("base"), "sweep.base"),
    ]:
        obj = json.loads(json.dumps(good))
        mutate(obj)
        with pytest.raises(SchemaError) as err:
            load_sweep(write_json(tmp_path / "bad.json", obj))
        assert err.value.field == field


def test_load_sweep_allows_zero_delay_values(tmp_path):
    obj = {"schema": 1, "base": dict(BASE), "axis": "tau", "values": [0, 1, 2]}
    sw = load_sweep(write_json(tmp_path / "s2.json", obj))
    assert sw.values == (0.0, 1.0, 2.0)
    assert sw.columns  # defaults applied


# ------------------------------------------------------------ running

def test_run_scenario_artifacts_and_report(tmp_path):
    path = scenario_file(
        tmp_path,
        integration={"t_end": 120},
        analyses={"simulate": True, "stability": True, "lyapunov": False,
                  "persistence": [0.5]})
    scn = load_scenario(path)
    lines = run_scenario(scn, out_dir=str(tmp_path / "out"), quiet=True)
    rep = report_dict(lines)
    assert float(rep["r0"]) == pytest.approx(1.2649110640673518, rel=1e-15)
    assert rep["e_star.exists"] == "true"
    assert float(rep["e_star.i_h"]) == pytest.approx(3.0 / 7.0, rel=1e-12)
    assert rep["stability.e0.classification"] == "Unstable"
    assert rep["stability.e_star.classification"] == "LAS"
    assert rep["persistence.theta_0.5.passes"] == "true"
    assert (tmp_path / "out" / "trajectory.csv").exists()
    assert (tmp_path / "out" / "report.txt").exists()
    text = (tmp_path / "out" / "report.txt").read_text().splitlines()
    assert text == lines
    header = (tmp_path / "out" / "trajectory.csv").read_text().splitlines()[0]
    assert header == "t,S_h,I_h,S_v,I_v"


def test_run_scenario_report_only_sections(tmp_path):
    path = scenario_file(tmp_path, analyses={"simulate": True, "stability": True,
                                             "lyapunov": True, "persistence": [0.5]})
    scn = load_scenario(path)
    lines = run_scenario(scn, quiet=True, only="stability")
    rep = report_dict(lines)
    assert "stability.e0.classification" in rep
    assert not any(k.startswith(("lyapunov.", "persistence.", "trajectory."))
                   for k in rep)

    lines = run_scenario(scn, quiet=True, only="lyapunov")
    rep = report_dict(lines)
    assert rep["lyapunov.kind"] == "v_endemic"
    assert rep["lyapunov.descends"] == "true"
    assert not any(k.startswith("stability.") for k in rep)


def test_run_scenario_random_history_deterministic(tmp_path):
    path = scenario_file(tmp_path, history={"kind": "random"},
                         integration={"t_end": 30})
    scn = load_scenario(path)

    def content(lines):  # drop the artifact paths, they differ per out dir
        return [ln for ln in lines if ".file = " not in ln]

    a = run_scenario(scn, out_dir=str(tmp_path / "a"), quiet=True, seed=7)
    b = run_scenario(scn, out_dir=str(tmp_path / "b"), quiet=True, seed=7)
    c = run_scenario(scn, out_dir=str(tmp_path / "c"), quiet=True, seed=8)
    assert content(a) == content(b)
    assert content(a) != content(c)
    bytes_a = (tmp_path / "a" / "trajectory.csv").read_bytes()
    bytes_b = (tmp_path / "b" / "trajectory.csv").read_bytes()
    assert bytes_a == bytes_b


def test_run_sweep_monotone_and_constant_columns(tmp_path):
    obj = {"schema": 1, "base": dict(BASE), "axis": "c_vh",
           "values": [0.05, 0.1, 0.2], "columns": ["r0"]}
    sw = load_sweep(write_json(tmp_path / "sw.json", obj))
    out = run_sweep(sw, out_dir=str(tmp_path / "o1"), quiet=True)
    rows = [ln.split(",") for ln in open(out).read().splitlines()]
    assert rows[0] == ["c_vh", "r0", "error"]
    r0s = [float(r[1]) for r in rows[1:]]
    assert r0s == sorted(r0s) and r0s[0] < r0s[-1]

    obj = {"schema": 1, "base": dict(BASE), "axis": "tau",
           "values": [0, 0.5, 1, 2],
           "columns": ["r0", "classification", "i_h_star"]}
    sw = load_sweep(write_json(tmp_path / "sw2.json", obj))
    out = run_sweep(sw, out_dir=str(tmp_path / "o2"), quiet=True)
    rows = [ln.split(",") for ln in open(out).read().splitlines()[1:]]
    assert len({tuple(r[1:]) for r in rows}) == 1  # delay changes nothing
    assert rows[0][2] == "Unstable" and rows[0][3] == "LAS"


def test_run_sweep_row_order_follows_values(tmp_path):
    obj = {"schema": 1, "base": dict(BASE), "axis": "c_vh",
           "values": [0.2, 0.05, 0.1], "columns": ["r0"]}
    sw = load_sweep(write_json(tmp_path / "sw.json", obj))
    out = run_sweep(sw, out_dir=str(tmp_path / "o3"), quiet=True)
    first_col = [ln.split(",")[0] for ln in open(out).read().splitlines()[1:]]
    assert [float(v) for v in first_col] == [0.2, 0.05, 0.1]


def test_run_sweep_row_error_marker(tmp_path, monkeypatch):
    obj = {"schema": 1, "base": dict(BASE), "axis": "c_vh",
           "values": [0.05, 0.1], "columns": ["r0"]}
    sw = load_sweep(write_json(tmp_path / "sw.json", obj))

    import malaria_dde.scenario as scenario_mod
    real = scenario_mod._sweep_row

    def flaky(sweep, value, seed):
        if value == 0.05:
            raise NumericalError("synthetic row failure")
        return real(sweep, value, seed)

    monkeypatch.setattr(scenario_mod, "_sweep_row", flaky)
    out = run_sweep(sw, out_dir=str(tmp_path / "o4"), quiet=True)
    rows = open(out).read().splitlines()
    assert "synthetic row failure" in rows[1]
    assert rows[2].split(",")[-1] == ""  # second row unaffected


def test_sweep_tail_columns(tmp_path):
    obj = {"schema": 1,
           "base": {**BASE, "integration": {"t_end": 60}},
           "axis": "c_vh", "values": [0.2], "columns": ["tail"]}
    sw = load_sweep(write_json(tmp_path / "sw.json", obj))
    out = run_sweep(sw, out_dir=str(tmp_path / "o5"), quiet=True)
    header, row = open(out).read().splitlines()
    cells = dict(zip(header.split(","), row.split(",")))
    assert float(cells["tail_i_h_sup"]) > 0
    assert float(cells["tail_s_v_inf"]) <= float(cells["tail_s_v_sup"])


# ------------------------------------------------------------ CLI

def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "malaria_dde", *args],
                          capture_output=True, text=True)


def test_cli_simulate_roundtrip(tmp_path):
    path = scenario_file(tmp_path, integration={"t_end": 40})
    proc = run_cli("simulate", path, "--out", str(tmp_path / "out"), "--quiet")
    assert proc.returncode == 0
    assert proc.stdout == ""
    assert (tmp_path / "out" / "trajectory.csv").exists()

    loud = run_cli("simulate", path, "--out", str(tmp_path / "out2"))
    assert loud.returncode == 0
    assert "r0 = " in loud.stdout


def test_cli_validation_exit_code(tmp_path):
    obj = json.loads(json.dumps(BASE))
    obj["params"]["mu_v"] = -1
    path = write_json(tmp_path / "bad.json", obj)
    proc = run_cli("simulate", path)
    assert proc.returncode == 1
    assert "mu_v" in proc.stderr


def test_cli_missing_file_exit_code(tmp_path):
    proc = run_cli("simulate", str(tmp_path / "nope.json"))
    assert proc.returncode == 1


def test_cli_report_only(tmp_path):
    path = scenario_file(tmp_path)
    proc = run_cli("report", path, "--only", "persistence")
    assert proc.returncode == 0
    assert "persistence.theta_0.5.passes = true" in proc.stdout
    assert "trajectory.file" not in proc.stdout


def test_cli_sweep(tmp_path):
    obj = {"schema": 1, "base": dict(BASE), "axis": "tau", "values": [0, 1]}
    path = write_json(tmp_path / "sw.json", obj)
    proc = run_cli("sweep", path, "--out", str(tmp_path / "o"))
    assert proc.returncode == 0
    assert (tmp_path / "o" / "sweep.csv").exists()


def test_cli_numerical_exit_code(monkeypatch, tmp_path):
    # the mapping itself, without needing a scenario that breaks numerically
    path = scenario_file(tmp_path)
    import malaria_dde.cli as cli_mod

    def boom(*a, **k):
        raise NumericalError("synthetic numerical failure")

    monkeypatch.setattr(cli_mod, "run_scenario", boom)
    assert cli_mod.main(["simulate", path]) == 2
    monkeypatch.setattr(cli_mod, "run_scenario", lambda *a, **k: [])
    assert cli_mod.main(["simulate", path]) == 0


def test_cli_seed_changes_random_history(tmp_path):
    path = scenario_file(tmp_path, history={"kind": "random"},
                         integration={"t_end": 5})
    a = run_cli("simulate", path, "--out", str(tmp_path / "sa"), "--seed", "1")
    b = run_cli("simulate", path, "--out", str(tmp_path / "sb"), "--seed", "2")
    assert a.returncode == 0 and b.returncode == 0
    ta = (tmp_path / "sa" / "trajectory.csv").read_text()
    tb = (tmp_path / "sb" / "trajectory.csv").read_text()
    assert ta != tb
