import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from glsobolev.config import (OutputSpec, PsiSpec, SweepConfig, parse_config,
                              render_config)
from glsobolev.errors import ConfigError
from glsobolev.sharpness import sweep
from glsobolev.writers import format_log_value, format_number, render_csv
from glsobolev.specfun import LogValue

GOLDEN = Path(__file__).parent / "golden"


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "glsobolev", *args],
        capture_output=True, text=True,
    )


class TestParseConfig:
    def test_minimal_ordinary(self):
        cfg = parse_config('{"target": "ordinary", "m": [3], "delta": [1],'
                           ' "p": {"values": [2.0]}}')
        assert cfg.target == "ordinary" and cfg.m == (3,)
        assert len(sweep(cfg)) == 2  # one grid row + one convergence row

    def test_out_of_range_p_names_bound(self):
        with pytest.raises(ConfigError) as err:
            parse_config('{"target": "ordinary", "m": [3], "delta": [1],'
                         ' "p": {"values": [5.0]}}')
        assert any("p must lie in (1, 3)" in e for e in err.value.errors)

    def test_grid_and_ladder_mutually_exclusive(self):
        with pytest.raises(ConfigError) as err:
            parse_config('{"target": "ordinary", "m": [3], "delta": [1],'
                         ' "p": {"count": 4}, "p_ladder": [4, 5, 6]}')
        assert any("mutually exclusive" in e for e in err.value.errors)

    def test_unknown_key_named(self):
        with pytest.raises(ConfigError) as err:
            parse_config('{"target": "ordinary", "m": [3], "delta": [1],'
                         ' "p": {"count": 2}, "bogus": 1}')
        assert any("'bogus'" in e for e in err.value.errors)

    def test_all_errors_collected(self):
        with pytest.raises(ConfigError) as err:
            parse_config('{"target": "ordinary", "m": [2], "delta": [0.5],'
                         ' "p": {"count": 2}, "p_ladder": [4], "junk": true}')
        text = "\n".join(err.value.errors)
        assert "'junk'" in text
        assert "mutually exclusive" in text
        assert "m >= 3" in text
        assert "delta must be >= 1" in text

    @pytest.mark.parametrize("cfg", [
        SweepConfig(target="ordinary", m=(3, 4), delta=(1.0, 2.0), p_count=4),
        SweepConfig(target="trace", m=(2,), n=(1,), delta=(1.0,),
                    p_values=(2.0, 2.5),
                    output=OutputSpec(format="json", precision=6,
                                      columns=("p", "ratio"))),
        SweepConfig(target="weighted", m=(3,), delta=(1.0,), alpha=(0.0, 0.5),
                    q_values=(2.0,)),
        SweepConfig(target="gls_theorem1", m=(3,), delta=(2.0,),
                    psi=PsiSpec(kind="power_blowup", beta=1.2, endpoint="upper")),
        SweepConfig(target="hardy", m=(3,), n=(1,), delta=(2.0,),
                    p_values=(2.5,), g_kind="logpow_deriv"),
    ])
    def test_round_trip(self, cfg):
        assert parse_config(render_config(cfg)) == cfg


class TestFormatting:
    def test_fixed_precision(self):
        assert format_number(0.83657, 6) == "0.836570"
        assert format_number(-1.5, 3) == "-1.500"
        assert format_number(0.0, 4) == "0.0000"

    def test_scientific_beyond_cutoff(self):
        assert format_number(1.5e13, 4) == "1.5000e+13"
        assert format_number(2.0e-13, 4) == "2.0000e-13"
        assert "e" not in format_number(1.0e11, 2)

    def test_log_values_far_outside_double_range(self):
        huge = LogValue.from_log(1000.0)  # e^1000, not representable linearly
        text = format_log_value(huge, 6)
        mantissa, exp = text.split("e")
        assert exp == "+434"
        assert math.isclose(float(mantissa), 1.970071, rel_tol=1e-5)

    def test_csv_quoting(self):
        from glsobolev.exponents import Setting
        from glsobolev.sharpness import SweepRecord
        rec = SweepRecord(Setting(3, 0, 0.0), "logpow", 1.0, 2.0, 6.0,
                          None, None, None, 0.5, True, 'note, with "comma"')
        text = render_csv([rec], 3)
        assert '"note, with ""comma"""' in text
        assert text.endswith("\r\n")


class TestCliCommands:
    def test_constant_talenti(self):
        cp = run_cli("constant", "talenti", "--m", "3", "--p", "2")
        assert cp.returncode == 0
        doc = json.loads(cp.stdout)
        assert math.isclose(doc["value"], 0.42726054286252666, rel_tol=1e-12)

    def test_exponent(self):
        cp = run_cli("exponent", "--m", "3", "--p", "2")
        doc = json.loads(cp.stdout)
        assert doc["q_of_p"] == 6.0 and doc["dilation_balance"] == 6.0

    def test_verify_trace_pass(self):
        cp = run_cli("verify", "trace", "--m", "2", "--n", "1",
                     "--delta", "1", "--p", "2")
        assert cp.returncode == 0
        assert json.loads(cp.stdout)["pass"] is True

    def test_validation_exit_code(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"target": "ordinary", "m": [3], "delta": [1],'
                       ' "p": {"values": [9.0]}}')
        cp = run_cli("sweep", "--config", str(bad))
        assert cp.returncode == 2
        assert "p must lie in (1, 3)" in cp.stderr

    def test_divergence_exit_code(self, tmp_path):
        cfg = tmp_path / "div.json"
        cfg.write_text('{"target": "weighted", "m": [3], "delta": [1],'
                       ' "alpha": [0.5], "q": {"values": [6.0]}}')
        cp = run_cli("sweep", "--config", str(cfg), "--output",
                     str(tmp_path / "out.csv"))
        assert cp.returncode == 3
        summary = json.loads(cp.stdout.strip().splitlines()[-1])
        assert summary["errors"] == 1

    def test_theta_without_bound_is_explicit(self):
        cp = run_cli("transform", "theta", "--m", "2", "--n", "1",
                     "--alpha", "0.5", "--q", "4",
                     "--psi", '{"kind": "constant", "value": 1.0}')
        assert cp.returncode == 2
        assert "bound curve" in cp.stderr

    def test_columns_subset(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"target": "ordinary", "m": [3], "delta": [1],'
                       ' "p": {"count": 2}}')
        cp = run_cli("sweep", "--config", str(cfg), "--columns", "p,ratio",
                     "--precision", "4")
        first = cp.stdout.splitlines()[0]
        assert first.strip() == "p,ratio"

    def test_summary_line_machine_readable(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{"target": "ordinary", "m": [3], "delta": [1],'
                       ' "p": {"count": 2}}')
        out = tmp_path / "t.csv"
        cp = run_cli("sweep", "--config", str(cfg), "--output", str(out))
        assert cp.returncode == 0
        summary = json.loads(cp.stdout.strip())
        assert summary["rows"] == 3 and summary["failed"] == 0


class TestGoldenFiles:
    def test_csv_byte_identical_across_runs(self, tmp_path):
        outs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            cp = run_cli("sweep", "--config", str(GOLDEN / "reference_config.json"),
                         "--format", "csv", "--output", str(out))
            assert cp.returncode == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
        assert outs[0] == (GOLDEN / "reference.csv").read_bytes()

    def test_json_byte_identical_across_runs(self, tmp_path):
        outs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            cp = run_cli("sweep", "--config", str(GOLDEN / "reference_config.json"),
                         "--format", "json", "--output", str(out))
            assert cp.returncode == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
        assert outs[0] == (GOLDEN / "reference.json").read_bytes()
        json.loads(outs[0])  # well-formed
