import csv
import io
import json
import math

import numpy as np
import pytest

from entgap.cli import main, run_suite
from entgap.states import PureState, write_state_file

BELL = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def bell_file(tmp_path):
    path = tmp_path / "bell.json"
    write_state_file(path, PureState(BELL).density())
    return str(path)


class TestMeasuresCommand:
    def test_bell(self, capsys, bell_file):
        code, out, _ = run_cli(capsys, "measures", bell_file)
        assert code == 0
        payload = json.loads(out)
        assert set(payload) == {"concurrence", "negativity", "eof", "participation_ratio"}
        for key in payload:
            assert abs(payload[key] - 1.0) <= 1e-10

    def test_maximally_mixed(self, capsys, tmp_path):
        path = tmp_path / "mm.json"
        write_state_file(path, np.eye(4) / 4)
        code, out, _ = run_cli(capsys, "measures", str(path))
        assert code == 0
        payload = json.loads(out)
        assert payload["concurrence"] == 0.0
        assert payload["negativity"] == 0.0
        assert payload["eof"] == 0.0
        assert abs(payload["participation_ratio"] - 4.0) <= 1e-10

    def test_non_hermitian_exits_3(self, capsys, tmp_path):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 0.2
        path = tmp_path / "nh.json"
        write_state_file(path, m)
        code, _, err = run_cli(capsys, "measures", str(path))
        assert code == 3
        assert "hermiticity violated" in err

    def test_invalid_trace_exits_3(self, capsys, tmp_path):
        path = tmp_path / "tr.json"
        write_state_file(path, np.eye(4) / 2)
        code, _, err = run_cli(capsys, "measures", str(path))
        assert code == 3
        assert "trace" in err

    def test_bad_json_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{oops")
        code, _, _ = run_cli(capsys, "measures", str(path))
        assert code == 2

    def test_missing_file_exits_2(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "measures", str(tmp_path / "nope.json"))
        assert code == 2


class TestVerifyCommand:
    def test_pure_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "pure", "--samples", "500", "--seed", "3")
        assert code == 0
        assert "PASS" in out and "max_violation" in out

    def test_inequality_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "inequality", "--samples", "500")
        assert code == 0

    def test_equality_class_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "equality-class", "--samples", "100")
        assert code == 0

    def test_unknown_suite_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "bogus"])
        assert exc.value.code == 2

    def test_deterministic_output(self, capsys):
        _, out1, _ = run_cli(capsys, "verify", "pure", "--samples", "200", "--seed", "5")
        _, out2, _ = run_cli(capsys, "verify", "pure", "--samples", "200", "--seed", "5")
        assert out1 == out2

    def test_run_suite_rejects_bad_input(self):
        with pytest.raises(ValueError):
            run_suite("pure", 0, 0)
        with pytest.raises(ValueError):
            run_suite("nope", 10, 0)


class TestCurveCommand:
    def test_figure2_values(self, capsys):
        code, out, _ = run_cli(capsys, "curve", "--figure", "2", "--step", "0.5")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["C", "gap"]
        data = [(float(a), float(b)) for a, b in rows[1:]]
        assert data[0] == (0.0, 0.0)
        assert abs(data[1][0] - 0.5) <= 1e-15
        assert abs(data[1][1] - (1 - 1 / math.sqrt(2))) <= 1e-12
        assert data[2][0] == 1.0 and abs(data[2][1]) <= 1e-12

    def test_figure1_analytic_values(self, capsys):
        code, out, _ = run_cli(capsys, "curve", "--figure", "1", "--step", "1")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["R", "analytic"]
        values = {float(r): float(v) for r, v in rows[1:]}
        assert set(values) == {1.0, 2.0, 3.0, 4.0}
        assert values[1.0] == 0.0
        assert abs(values[2.0] - (1 - 1 / math.sqrt(2))) <= 1e-12
        assert values[3.0] == 0.0 and values[4.0] == 0.0

    def test_lf_line_endings_and_round_trip(self, capsys):
        _, out, _ = run_cli(capsys, "curve", "--figure", "2", "--step", "0.25")
        assert "\r" not in out
        for line in out.strip().split("\n")[1:]:
            a, b = line.split(",")
            # shortest-round-trip formatting: parsing recovers the value exactly
            assert repr(float(a)) == a and repr(float(b)) == b

    def test_numeric_column(self, capsys):
        code, out, _ = run_cli(capsys, "curve", "--figure", "1", "--step", "3",
                               "--numeric", "--restarts", "3", "--seed", "0")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["R", "analytic", "numeric", "residual"]
        for _, analytic, numeric, residual in rows[1:]:
            assert float(numeric) >= float(analytic) - 1e-4
            assert float(residual) <= 1e-6

    def test_bad_step_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "curve", "--figure", "2", "--step", "-1")
        assert code == 2

    def test_bad_figure_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["curve", "--figure", "3", "--step", "0.5"])
        assert exc.value.code == 2


class TestOptimizeCommand:
    def test_fix_c(self, capsys):
        code, out, _ = run_cli(capsys, "optimize", "--fix-c", "0.5", "--restarts", "4", "--seed", "0")
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["objective"] - (1 - 1 / math.sqrt(2))) <= 1e-3
        assert payload["feasible"] is True
        assert payload["constraint_residual"] <= 1e-6
        assert len(payload["best_state"]) == 4

    def test_fix_r(self, capsys):
        code, out, _ = run_cli(capsys, "optimize", "--fix-r", "1.0", "--restarts", "3", "--seed", "1")
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["objective"]) <= 1e-5

    def test_requires_exactly_one_target(self):
        with pytest.raises(SystemExit) as exc:
            main(["optimize", "--fix-r", "2.0", "--fix-c", "0.5"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["optimize"])
        assert exc.value.code == 2

    def test_out_of_range_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "optimize", "--fix-r", "9.0", "--restarts", "2")
        assert code == 2


class TestOrbitMaxCommand:
    def test_negativity(self, capsys):
        code, out, _ = run_cli(capsys, "orbit-max", "--spectrum", "0.5,0.5,0,0",
                               "--measure", "EN", "--restarts", "4", "--seed", "0")
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["value"] - payload["reference_formula"]) <= 2e-3
        assert payload["spectrum_residual"] <= 1e-8

    def test_bad_spectrum_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "orbit-max", "--spectrum", "0.5,0.4,0.2,0",
                               "--measure", "C", "--restarts", "2")
        assert code == 2
        assert "spectrum" in err.lower() or "sum" in err.lower()

    def test_malformed_spectrum_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "orbit-max", "--spectrum", "a,b,c,d", "--measure", "C")
        assert code == 2
