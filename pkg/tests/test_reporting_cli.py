import json
from pathlib import Path

import pytest

from zetacontour.cli import main
from zetacontour.reporting import (
    RunConfig,
    export_report,
    load_report_json,
    run_suite,
)
from zetacontour.zero_finder import load_table, save_table


@pytest.fixture()
def table_path(tmp_path, table500):
    p = tmp_path / "zeros.zctab"
    save_table(table500, p)
    return str(p)


class TestRunConfig:
    def test_round_trip_and_hash(self):
        cfg = RunConfig(zero_table_path="x.zctab", threads=2,
                        params=(("T", "30"),))
        back = RunConfig.from_json_dict(cfg.to_json_dict())
        assert back == cfg
        assert back.config_hash() == cfg.config_hash()

    def test_hash_changes_with_params(self):
        a = RunConfig(params=(("T", "30"),))
        b = RunConfig(params=(("T", "50"),))
        assert a.config_hash() != b.config_hash()


class TestReports:
    def test_suite_runs_and_exports(self, tmp_path):
        cfg = RunConfig()
        rep = run_suite("telescoping", cfg)
        assert rep.ok
        assert rep.config_hash == cfg.config_hash()
        jpath = export_report(rep, "json", tmp_path / "r.json")
        cpath = export_report(rep, "csv", tmp_path / "r.csv")
        loaded = load_report_json(jpath)
        assert loaded == rep
        rows = Path(cpath).read_text().strip().split("\n")
        assert len(rows) == len(rep.checks) + 1

    def test_export_idempotent(self, tmp_path):
        rep = run_suite("digamma-trend", RunConfig())
        a = export_report(rep, "json", tmp_path / "a.json").read_bytes()
        b = export_report(rep, "json", tmp_path / "b.json").read_bytes()
        assert a == b
        # re-export of the loaded report is byte-identical too
        again = export_report(load_report_json(tmp_path / "a.json"), "json",
                              tmp_path / "c.json").read_bytes()
        assert again == a

    def test_measured_only_has_no_passfail(self, table_path, monkeypatch):
        # paper-claims records must never carry pass/fail
        cfg = RunConfig(zero_table_path=table_path)
        rep = run_suite("paper-claims", cfg)
        assert all(c.passed is None for c in rep.checks)
        assert rep.ok  # measured-only records cannot fail a suite

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            run_suite("nope", RunConfig())

    @pytest.mark.parametrize("name", ["identities", "zeros", "argument-principle",
                                      "cross-module", "riccati"])
    def test_light_suites_pass(self, name, table_path):
        rep = run_suite(name, RunConfig(zero_table_path=table_path))
        assert rep.ok, [c.name for c in rep.failed]


class TestCli:
    def test_zeros_roundtrip(self, tmp_path):
        out = tmp_path / "t.zctab"
        assert main(["zeros", "--up-to", "40", "--out", str(out)]) == 0
        table = load_table(out)
        assert len(table.gammas) == 6  # N(40) = 6

    def test_integrate_json_contract(self, tmp_path, table_path):
        out = tmp_path / "rep.json"
        rc = main(["integrate", "--alpha", "0.6", "--beta", "0.8", "--T", "30",
                   "--zeros", table_path, "--out", str(out)])
        assert rc == 0
        d = json.loads(out.read_text())
        for edge in ("da", "ab", "bc", "cd"):
            assert set(d["edges"][edge]) == {"re", "im", "err"}
        assert "winding_raw" in d and "winding" in d and "total" in d
        assert d["winding"] == 0

    def test_integrate_general_box(self, tmp_path, table_path):
        out = tmp_path / "rep.json"
        rc = main(["integrate", "--general", "0.9", "1.1", "-1", "1",
                   "--zeros", table_path, "--out", str(out)])
        assert rc == 0
        assert json.loads(out.read_text())["winding"] == -1

    def test_telescope_csv(self, tmp_path, table_path):
        out = tmp_path / "trace.csv"
        rc = main(["telescope", "--alpha", "0.6", "--beta", "0.8", "--T", "30",
                   "--N", "3", "--zeros", table_path, "--out", str(out)])
        assert rc == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "k,gamma_k,h1,h2,f,g,wrap_f,wrap_g,step_residual"
        assert len(lines) == 4

    def test_probe_csv(self, tmp_path, table_path):
        out = tmp_path / "scan.csv"
        rc = main(["probe", "--tau", "0:1:0.5", "--K", "0.6:0.8",
                   "--U", "0", "--V", "-3.14159265", "--eps", "0.5",
                   "--zeros", table_path, "--out", str(out)])
        assert rc == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "tau,sup_distance,skipped_flag"
        assert len(lines) == 4

    def test_suite_exit_code_and_export(self, tmp_path):
        out = tmp_path / "suite.json"
        rc = main(["suite", "telescoping", "--out", str(out)])
        assert rc == 0
        rep = load_report_json(out)
        assert rep.suite == "telescoping"
        csv_out = tmp_path / "suite.csv"
        rc = main(["export", "--report", str(out), "--format", "csv",
                   "--out", str(csv_out)])
        assert rc == 0
        assert csv_out.read_text().startswith("name,kind,measured")

    def test_env_var_default_table(self, tmp_path, table_path, monkeypatch):
        monkeypatch.setenv("ZC_ZERO_TABLE", table_path)
        out = tmp_path / "rep.json"
        rc = main(["integrate", "--alpha", "0.6", "--beta", "0.8", "--T", "30",
                   "--out", str(out)])
        assert rc == 0

    def test_error_exit_code(self, tmp_path, table_path):
        rc = main(["integrate", "--alpha", "0.2", "--beta", "0.8", "--T", "30",
                   "--zeros", table_path, "--out", str(tmp_path / "x.json")])
        assert rc == 2

    def test_failing_check_exit_code(self, monkeypatch):
        import zetacontour.reporting as reporting
        from zetacontour.reporting import CheckRecord

        def always_fails(cfg, table=None):
            return [CheckRecord(name="forced", kind="pass_fail", measured=1.0,
                                bound=0.0, passed=False)]

        monkeypatch.setitem(reporting.SUITES, "forced", (always_fails, 0.0))
        assert main(["suite", "forced"]) == 1
