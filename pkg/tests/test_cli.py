"""CLI behavior: exit codes, reports, determinism, and a mutation smoke test."""

import json
import subprocess
import sys

import pytest

import mbethe.izergin
from mbethe.cli import main
from mbethe.errors import PoleError
from mbethe.scalars import Rat

SMALL_SIZES = {
    "izergin-laws": {"max_n": 2, "max_m": 2, "samples": 1, "equiv_max": 2,
                     "equiv_samples": 1, "residue_max": 1, "residue_samples": 1,
                     "conv_max": 1, "conv_len": 2},
    "proof-steps": {"max_size": 3, "samples": 2},
    "phi-symmetry": {"max_n": 1, "max_m": 1, "draws": 1},
}


def write_config(tmp_path, **kwargs):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(kwargs))
    return str(path)


class TestVerify:
    def test_small_run_passes(self, tmp_path, capsys):
        report_path = tmp_path / "report.json"
        cfg = write_config(tmp_path, suites=["proof-steps"], seed=3,
                           sizes={"proof-steps": SMALL_SIZES["proof-steps"]})
        rc = main(["verify", "--config", cfg, "--report", str(report_path)])
        assert rc == 0
        report = json.loads(report_path.read_text())
        assert report["summary"]["failed"] == 0
        assert report["summary"]["exit_code"] == 0
        rec = report["records"][0]
        assert set(rec) == {"suite", "identity", "sizes", "trial", "seed",
                            "params_digest", "status", "lhs", "rhs", "elapsed"}
        out = capsys.readouterr().out
        assert "proof-steps" in out

    def test_deterministic_records(self, tmp_path):
        cfg = write_config(tmp_path, suites=["proof-steps", "phi-symmetry"],
                           seed=11, sizes={k: SMALL_SIZES[k]
                                           for k in ("proof-steps", "phi-symmetry")})
        reports = []
        for name in ("a.json", "b.json"):
            path = tmp_path / name
            assert main(["verify", "--config", cfg, "--report", str(path)]) == 0
            reports.append(json.loads(path.read_text()))
        for report in reports:
            for rec in report["records"]:
                rec["elapsed"] = 0.0
        assert reports[0]["records"] == reports[1]["records"]
        assert reports[0]["summary"] == reports[1]["summary"]

    def test_flags_override_config(self, tmp_path):
        cfg = write_config(tmp_path, suites=["izergin-laws"], seed=1,
                           sizes=SMALL_SIZES)
        path = tmp_path / "r.json"
        rc = main(["verify", "--config", cfg, "--suite", "proof-steps",
                   "--seed", "9", "--report", str(path)])
        assert rc == 0
        report = json.loads(path.read_text())
        assert report["config"]["suites"] == ["proof-steps"]
        assert report["config"]["seed"] == 9

    def test_unknown_suite_is_config_error(self):
        assert main(["verify", "--suite", "no-such-suite"]) == 2

    def test_bad_config_keys(self, tmp_path):
        cfg = write_config(tmp_path, suites=["proof-steps"], nonsense=1)
        assert main(["verify", "--config", cfg]) == 2

    def test_missing_config_file(self, tmp_path):
        assert main(["verify", "--config", str(tmp_path / "absent.json")]) == 2

    def test_tampered_kernel_fails_with_named_identity(self, tmp_path,
                                                       monkeypatch, capsys):
        true_f = mbethe.izergin.kernel_f

        def skewed(u, v, c):
            return -true_f(u, v, c)

        monkeypatch.setattr(mbethe.izergin, "kernel_f", skewed)
        cfg = write_config(tmp_path, suites=["izergin-laws"],
                           sizes={"izergin-laws": SMALL_SIZES["izergin-laws"]})
        path = tmp_path / "bad.json"
        rc = main(["verify", "--config", cfg, "--report", str(path)])
        assert rc == 1
        report = json.loads(path.read_text())
        failing = {r["identity"] for r in report["records"]
                   if r["status"] == "fail"}
        assert failing  # named identities survive into the report
        assert any(ident.startswith("izergin/") for ident in failing)
        assert "FAIL" in capsys.readouterr().err


class TestScalar:
    def test_trivial_pair(self, capsys):
        rc = main(["scalar", "--n", "0", "--m", "0", "--sites", "1"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "1 = 1, PASS" in out

    @pytest.mark.parametrize("form", ["SCe", "SCbe", "SPfin", "SPfinIK"])
    def test_forms_pass(self, form, capsys, tmp_path):
        report = tmp_path / "scalar.json"
        rc = main(["scalar", "--n", "1", "--m", "1", "--sites", "2",
                   "--form", form, "--seed", "4", "--report", str(report)])
        assert rc == 0
        record = json.loads(report.read_text())
        assert record["status"] == "pass"
        assert record["formula"] == record["oracle"]

    def test_unequal_cardinalities_for_plain_form(self):
        assert main(["scalar", "--n", "1", "--m", "2", "--sites", "2",
                     "--form", "SCe"]) == 2

    def test_singular_prefactor_is_domain_error(self, capsys):
        rc = main(["scalar", "--n", "1", "--m", "2", "--sites", "2",
                   "--form", "SPfinIK", "--rho1", "0"])
        assert rc == 2
        assert "prefactor" in capsys.readouterr().err


class TestBench:
    def test_small_bench(self, tmp_path, capsys):
        report = tmp_path / "bench.json"
        rc = main(["bench", "--size", "8", "--jobs", "2", "--seed", "2",
                   "--report", str(report)])
        assert rc == 0
        data = json.loads(report.read_text())
        assert data["consistent"] is True
        rows = data["rows"]
        assert [r["jobs"] for r in rows] == [1, 2]
        assert all(r["splits"] == 256 for r in rows)
        digests = {r["value_digest"] for r in rows}
        assert len(digests) == 1
        assert all(r["identical_to_serial"] for r in rows)


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "mbethe.cli", "scalar", "--n", "0", "--m", "1",
         "--sites", "1", "--seed", "8"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
