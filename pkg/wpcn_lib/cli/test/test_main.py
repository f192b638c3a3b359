#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import csv
import json

import pytest

from tests.resources.helper_functions import forged_trace, setup_run, small_config
from wpcn_lib.cli import main as cli
from wpcn_lib.cli.main import EXIT_FAULT, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main
from wpcn_lib.engine.summary import RunSummary
from wpcn_lib.exceptions import SimulationFault


def _config_file(tmp_path, **kwargs):
    path = tmp_path / "line3.json"
    path.write_text(json.dumps(small_config(**kwargs)))
    return str(path)


@pytest.mark.unit
def test_presets_listing(capsys):
    assert main(["presets"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "fig4-tradeoff" in out
    assert "fig10-blocklength" in out


@pytest.mark.unit
def test_version():
    with pytest.raises(SystemExit) as err:
        main(["--version"])
    assert err.value.code == 0


@pytest.mark.integration
def test_run_writes_outputs(tmp_path, capsys):
    out = tmp_path / "out"
    config = _config_file(tmp_path)

    code = main(
        ["-q", "run", "--config", config, "--slots", "60", "--seed", "3", "--out", str(out)]
    )

    assert code == EXIT_OK
    summary = RunSummary.from_json(str(out / "summary.json"))
    assert summary.horizon == 60
    assert summary.config["seed"] == 3
    with open(out / "trace.csv", newline="") as file:
        assert len(list(csv.reader(file))) == 61
    assert "slots=60" in capsys.readouterr().out


@pytest.mark.integration
def test_run_with_audit_and_channel_dump(tmp_path):
    out = tmp_path / "out"
    config = _config_file(
        tmp_path, settings={"topology.eap_antennas": 4, "policy.power_levels": 4}
    )
    dump = tmp_path / "channels.csv"

    code = main(
        ["-q", "run", "--config", config, "--slots", "40", "--out", str(out)]
        + ["--audit", "--channel-dump", str(dump)]
    )

    assert code == EXIT_OK
    assert dump.exists()
    assert not (out / "audit.json").exists()


@pytest.mark.integration
def test_check_accepts_simulated_trace(tmp_path, capsys):
    out = tmp_path / "out"
    config = _config_file(tmp_path)
    assert main(["-q", "run", "--config", config, "--slots", "80", "--out", str(out)]) == 0
    capsys.readouterr()

    code = main(["-q", "check", "--trace", str(out / "trace.csv"), "--config", config])

    assert code == EXIT_OK
    assert json.loads(capsys.readouterr().out) == []


@pytest.mark.unit
def test_check_reports_violations(tmp_path, capsys):
    config = _config_file(tmp_path)
    _, topo, _, _ = setup_run(small_config())
    path = str(tmp_path / "forged.csv")
    forged_trace(topo, 3, 0.0, 0.0, 1.0).to_csv(path)

    code = main(["-q", "check", "--trace", path, "--config", config])

    assert code == EXIT_VIOLATION
    reports = json.loads(capsys.readouterr().out)
    assert len(reports) == 3 * topo.N
    assert {r["kind"] for r in reports} == {"lemma2_1"}


@pytest.mark.unit
def test_check_topology_mismatch(tmp_path):
    _, topo, _, _ = setup_run(small_config())
    path = str(tmp_path / "forged.csv")
    forged_trace(topo, 2, 0.0, 0.0, 1.0).to_csv(path)

    # the default config uses the 9-node topology
    assert main(["-q", "check", "--trace", path]) == EXIT_USAGE


@pytest.mark.unit
def test_usage_errors(tmp_path):
    assert main(["-q", "check", "--trace", str(tmp_path / "none.csv")]) == EXIT_USAGE
    assert main(["-q", "run", "--config", str(tmp_path / "none.yaml")]) == EXIT_USAGE

    broken = tmp_path / "broken.yaml"
    broken.write_text("policy:\n  V: fast\n")
    assert main(["-q", "run", "--config", str(broken)]) == EXIT_USAGE

    assert main(["-q", "sweep", "--out", str(tmp_path)]) == EXIT_USAGE
    assert main(["-q", "sweep", "--preset", "fig5-samplepath"]) == EXIT_USAGE

    with pytest.raises(SystemExit) as err:
        main(["run", "--preset", "fig99"])
    assert err.value.code == 2


@pytest.mark.integration
def test_sweep_with_axis(tmp_path):
    out = tmp_path / "out"
    config = _config_file(tmp_path)

    code = main(
        ["-q", "sweep", "--config", config, "--axis", "policy.V=1e10,1e11"]
        + ["--slots", "40", "--runs", "2", "--workers", "1", "--out", str(out)]
    )

    assert code == EXIT_OK
    with open(out / "sweep.csv", newline="") as file:
        rows = list(csv.DictReader(file))
    assert [float(row["policy.V"]) for row in rows] == [1e10, 1e11]
    assert {row["runs"] for row in rows} == {"2"}


@pytest.mark.unit
def test_fault_exit_code(tmp_path, monkeypatch):
    def faulty(*args, **kwargs):
        raise SimulationFault("slot 4: imbalance floor", 4)

    monkeypatch.setattr(cli, "run", faulty)

    assert main(["-q", "run", "--config", _config_file(tmp_path), "--out", str(tmp_path)]) == (
        EXIT_FAULT
    )


@pytest.mark.unit
def test_internal_error_exit_code(tmp_path, monkeypatch):
    def crash(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli, "run", crash)

    assert main(["-q", "run", "--config", _config_file(tmp_path), "--out", str(tmp_path)]) == (
        EXIT_FAULT
    )
