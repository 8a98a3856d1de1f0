import json
import math
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expotype import ValidationError, load_config, parse_config, run
from expotype.cli import main
from expotype.serialize import csv_text, fmt_float, to_json


def write_config(tmp_path, text, name="run.toml"):
    path = tmp_path / name
    path.write_text(text)
    return path


DECAY_CONFIG = """
kind = "decay"
seed = 1

[spectrum]
source = "explicit"
eigenvalues = [2.0]

[coefficients]
source = "explicit"
values = [1.0]

[grids]
r = [1.0, 2.0, 3.0]
"""

VERIFY_CONFIG = """
kind = "verify"
seed = 42

[suite]
vectors = 5
max_modes = 16
lambda_max = 50.0
jackson_k = [1, 2]
derivative_n = [1]
derivative_k = [0, 1]
bernstein_h = [0.5]
bernstein_max_k = 2
bernstein_max_n = 2

[grids]
r = { scale = "log", start = 0.1, stop = 100.0, count = 8 }
"""

CUBE_CONFIG = """
kind = "cube"
seed = 0

[spectrum]
source = "cube"
dim = 1
side = 3.141592653589793
modes_per_axis = 4

[weyl]
window = [1, 4]
min_points = 2
"""

ORACLE_CONFIG = """
kind = "oracle"
seed = 7

[spectrum]
source = "cube"
dim = 1
side = 3.141592653589793
modes_per_axis = 8

[coefficients]
source = "random"
count = 5

[oracle]
t_final = 0.1
grid_points = 201
dt = 1e-3
"""

CLASSIFY_CURVE_CONFIG = """
kind = "classify"

[curve]
model = "power"
exponent = 3.0

[grids]
r = { scale = "log", start = 2.0, stop = 4096.0, count = 12 }
"""

CLASSIFY_NORMS_CONFIG = """
kind = "classify"

[derivative_norms]
model = "gevrey"
beta = 0.5
n_max = 200
"""

CLASSIFY_VECTOR_CONFIG = """
kind = "classify"
seed = 3

[spectrum]
source = "arithmetic"
count = 60
step = 1.0

[coefficients]
source = "tau_reciprocal"
growth = "factorial"
alpha = 1.0

[grids]
r = { scale = "linear", start = 1.0, stop = 60.0, count = 60 }

# sixty tightly packed modes with tiny top coefficients need deep Taylor
# terms before the top of the spectrum dominates the derivative norms
[taylor]
n_max = 300
"""


class TestConfigParsing:
    def test_missing_kind(self):
        with pytest.raises(ValidationError, match="kind"):
            parse_config({})

    def test_unknown_kind(self):
        with pytest.raises(ValidationError, match="kind"):
            parse_config({"kind": "frobnicate"})

    def test_seed_range(self):
        with pytest.raises(ValidationError, match="seed"):
            parse_config({"kind": "decay", "seed": -1})

    def test_grid_must_increase(self):
        raw = {
            "kind": "decay",
            "spectrum": {"source": "explicit", "eigenvalues": [1.0]},
            "coefficients": {"source": "explicit", "values": [1.0]},
            "grids": {"r": [2.0, 1.0]},
        }
        with pytest.raises(ValidationError, match="strictly increasing"):
            parse_config(raw)

    def test_missing_section_names_field(self):
        with pytest.raises(ValidationError, match=r"spectrum\.eigenvalues"):
            parse_config(
                {
                    "kind": "decay",
                    "spectrum": {"source": "explicit"},
                    "coefficients": {"source": "explicit", "values": [1.0]},
                    "grids": {"r": [1.0]},
                }
            )

    def test_classify_needs_exactly_one_input(self):
        with pytest.raises(ValidationError, match="exactly one input"):
            parse_config({"kind": "classify"})

    def test_unknown_keys_rejected(self):
        with pytest.raises(ValidationError, match="unknown key 'top level.seeed'"):
            parse_config({"kind": "decay", "seeed": 42})
        raw = {
            "kind": "decay",
            "spectrum": {"source": "explicit", "eigenvalues": [1.0], "stepp": 2},
            "coefficients": {"source": "explicit", "values": [1.0]},
            "grids": {"r": [1.0, 2.0]},
        }
        with pytest.raises(ValidationError, match=r"unknown key 'spectrum\.stepp'"):
            parse_config(raw)

    def test_load_rejects_bad_toml(self, tmp_path):
        path = write_config(tmp_path, "kind = ")
        with pytest.raises(ValidationError):
            load_config(path)


class TestDecayRun:
    def test_single_mode_rows(self, tmp_path):
        cfg = load_config(write_config(tmp_path, DECAY_CONFIG))
        (out,) = run(cfg, tmp_path / "out")
        assert out.read_text() == "r,E_r\n1,1\n2,0\n3,0\n"


class TestVerifyRun:
    def test_all_reports_hold(self, tmp_path):
        cfg = load_config(write_config(tmp_path, VERIFY_CONFIG))
        (out,) = run(cfg, tmp_path / "out")
        reports = json.loads(out.read_text())
        # 5 vectors x (2x8 jackson + 1x2x8 derivative + 1x3x3 bernstein)
        assert len(reports) == 5 * (16 + 16 + 9)
        assert all(rec["holds"] for rec in reports)
        assert reports[0]["name"].startswith("i=0:jackson")
        assert list(reports[0].keys()) == ["name", "lhs", "rhs", "margin", "holds"]

    def test_byte_identical_reruns(self, tmp_path):
        cfg = load_config(write_config(tmp_path, VERIFY_CONFIG))
        (first,) = run(cfg, tmp_path / "a")
        (second,) = run(cfg, tmp_path / "b")
        assert first.read_bytes() == second.read_bytes()

    def test_seed_changes_output(self, tmp_path):
        cfg = load_config(write_config(tmp_path, VERIFY_CONFIG))
        (first,) = run(cfg, tmp_path / "a")
        (second,) = run(cfg, tmp_path / "b", seed=43)
        assert first.read_bytes() != second.read_bytes()


class TestCubeRun:
    def test_spectrum_csv_and_weyl(self, tmp_path):
        cfg = load_config(write_config(tmp_path, CUBE_CONFIG))
        spectrum_csv, weyl_json = run(cfg, tmp_path / "out")
        lines = spectrum_csv.read_text().strip().splitlines()
        assert lines[0] == "lambda,coeff,multi_index"
        lams = [float(line.split(",")[0]) for line in lines[1:]]
        assert lams == [1.0, 4.0, 9.0, 16.0]
        fit = json.loads(weyl_json.read_text())
        assert fit["exponent"] == pytest.approx(2.0, abs=1e-12)
        assert fit["c1"] == pytest.approx(1.0, abs=1e-14)


class TestOracleRun:
    def test_comparison_csv_and_error(self, tmp_path):
        cfg = load_config(write_config(tmp_path, ORACLE_CONFIG))
        (out,) = run(cfg, tmp_path / "out")
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "x,u_spectral,u_fd,l2_rel_error"
        error = float(lines[1].split(",")[3])
        assert 0.0 <= error <= 1e-2
        assert len(lines) == 202


class TestClassifyRun:
    def test_synthetic_power_curve(self, tmp_path):
        cfg = load_config(write_config(tmp_path, CLASSIFY_CURVE_CONFIG))
        (out,) = run(cfg, tmp_path / "out")
        result = json.loads(out.read_text())
        assert result["classification"]["verdict"] == "finite_smooth"
        assert result["classification"]["degree"] == 3
        assert result["taylor_order"] is None

    def test_tabulated_norms_order(self, tmp_path):
        cfg = load_config(write_config(tmp_path, CLASSIFY_NORMS_CONFIG))
        (out,) = run(cfg, tmp_path / "out")
        result = json.loads(out.read_text())
        assert result["classification"] is None
        assert result["taylor_order"] == pytest.approx(2.0, rel=0.05)

    def test_vector_route_with_order(self, tmp_path):
        cfg = load_config(write_config(tmp_path, CLASSIFY_VECTOR_CONFIG))
        (out,) = run(cfg, tmp_path / "out")
        result = json.loads(out.read_text())
        assert result["classification"]["verdict"] == "gevrey_roumieu"
        assert result["taylor_order"] == pytest.approx(1.0, rel=0.10)


class TestMainEntry:
    def test_success_exit_code(self, tmp_path, capsys):
        path = write_config(tmp_path, DECAY_CONFIG)
        code = main(["decay", "--config", str(path), "--out", str(tmp_path / "out")])
        assert code == 0
        assert "decay.csv" in capsys.readouterr().out

    def test_validation_error_exit_code(self, tmp_path, capsys):
        path = write_config(tmp_path, "kind = 'decay'\n")
        code = main(["decay", "--config", str(path), "--out", str(tmp_path / "out")])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_kind_mismatch(self, tmp_path, capsys):
        path = write_config(tmp_path, DECAY_CONFIG)
        code = main(["verify", "--config", str(path), "--out", str(tmp_path / "out")])
        assert code == 1

    def test_numerical_failure_exit_code(self, tmp_path, capsys):
        config = """
kind = "classify"

[derivative_norms]
model = "gevrey"
beta = 2.0
n_max = 120
"""
        path = write_config(tmp_path, config)
        code = main(["classify", "--config", str(path), "--out", str(tmp_path / "out")])
        assert code == 2
        assert "numerical failure" in capsys.readouterr().err

    def test_seed_flag_overrides_config(self, tmp_path):
        path = write_config(tmp_path, VERIFY_CONFIG)
        main(["verify", "--config", str(path), "--out", str(tmp_path / "a")])
        main(["verify", "--config", str(path), "--out", str(tmp_path / "b"), "--seed", "42"])
        main(["verify", "--config", str(path), "--out", str(tmp_path / "c"), "--seed", "99"])
        a = (tmp_path / "a" / "reports.json").read_bytes()
        b = (tmp_path / "b" / "reports.json").read_bytes()
        c = (tmp_path / "c" / "reports.json").read_bytes()
        assert a == b
        assert a != c

    def test_console_script_wiring(self, tmp_path):
        path = write_config(tmp_path, DECAY_CONFIG)
        proc = subprocess.run(
            [
                sys.executable,
                "-m",
                "expotype.cli",
                "decay",
                "--config",
                str(path),
                "--out",
                str(tmp_path / "out"),
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0


class TestSerialize:
    def test_seventeen_digit_floats(self):
        assert fmt_float(0.1) == "0.10000000000000001"
        assert fmt_float(1.0) == "1"
        assert float(fmt_float(math.pi)) == math.pi

    @given(
        st.floats(allow_nan=False, allow_infinity=False),
    )
    def test_float_format_round_trips_exactly(self, x):
        assert float(fmt_float(x)) == x

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError):
            fmt_float(float("nan"))

    def test_json_round_trip(self):
        payload = {"a": 0.1, "b": [1, True, None, "x"], "c": {"d": -2.5}}
        text = to_json(payload)
        assert json.loads(text) == {
            "a": 0.1,
            "b": [1, True, None, "x"],
            "c": {"d": -2.5},
        }

    def test_csv_text(self):
        text = csv_text("a,b", [(1.0, "x"), (0.5, "y")])
        assert text == "a,b\n1,x\n0.5,y\n"
