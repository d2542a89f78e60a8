import json

import pytest

from tensorlib import DenseTensor, rank_one_compose
from tensorlib.cli import main

GOLDEN = (
    "A = cat(3, [ 0 2 4 6 ; 8 10 12 14 ; 16 18 20 22 ], "
    "[ 1 3 5 7 ; 9 11 13 15 ; 17 19 21 23 ]);"
)


def write_tensor(path, t):
    path.write_text(json.dumps(t.to_dict()))
    return str(path)


def iota_tensor(shape, **kw):
    t = DenseTensor(shape, **kw)
    for j in range(t.size):
        t.set_memory(j, j)
    return t


class TestDemos:
    def test_strides(self, capsys):
        assert main(["demo", "strides"]) == 0
        out = capsys.readouterr().out
        assert "(1, 4, 8)" in out and "(6, 3, 1)" in out

    def test_views(self, capsys):
        assert main(["demo", "views"]) == 0
        out = capsys.readouterr().out
        assert "(2, 2, 1)" in out and "17" in out

    def test_iterators(self, capsys):
        assert main(["demo", "iterators"]) == 0
        assert "0, 4, 8" in capsys.readouterr().out

    def test_ttv_and_ttt(self, capsys):
        assert main(["demo", "ttv"]) == 0
        assert "(3, 2)" in capsys.readouterr().out
        assert main(["demo", "ttt"]) == 0
        assert "(2, 5)" in capsys.readouterr().out

    def test_unknown_demo_is_usage_error(self):
        with pytest.raises(SystemExit) as err:
            main(["demo", "nosuch"])
        assert err.value.code == 64


class TestEmit:
    def test_golden_from_file(self, tmp_path, capsys):
        path = write_tensor(tmp_path / "a.json", iota_tensor((3, 4, 2), layout=(3, 2, 1)))
        assert main(["emit", "--in", path, "--name", "A"]) == 0
        assert capsys.readouterr().out.strip() == GOLDEN

    def test_single_element(self, tmp_path, capsys):
        path = write_tensor(tmp_path / "s.json", DenseTensor.from_memory((1,), [7]))
        assert main(["emit", "--in", path, "--name", "s"]) == 0
        assert capsys.readouterr().out.strip() == "s = [ 7 ];"

    def test_output_file_deterministic(self, tmp_path):
        src = write_tensor(tmp_path / "t.json", iota_tensor((2, 3)))
        out1, out2 = tmp_path / "one.m", tmp_path / "two.m"
        assert main(["emit", "--in", src, "--out", str(out1)]) == 0
        assert main(["emit", "--in", src, "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_equal_tensors_emit_identically(self, tmp_path, capsys):
        a = iota_tensor((2, 3))
        b = DenseTensor((2, 3), layout=(2, 1))
        b.assign(a)
        pa = write_tensor(tmp_path / "a.json", a)
        pb = write_tensor(tmp_path / "b.json", b)
        main(["emit", "--in", pa])
        text_a = capsys.readouterr().out
        main(["emit", "--in", pb])
        assert capsys.readouterr().out == text_a

    def test_parse_error_reports_location(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(SystemExit) as err:
            main(["emit", "--in", str(bad)])
        assert err.value.code == 1
        msg = capsys.readouterr().err
        assert "line 1" in msg and "column" in msg

    def test_schema_error(self, tmp_path, capsys):
        bad = tmp_path / "short.json"
        bad.write_text(json.dumps({"shape": [2, 2], "data": [1]}))
        with pytest.raises(SystemExit) as err:
            main(["emit", "--in", str(bad)])
        assert err.value.code == 1


class TestHopmCommand:
    def test_rank_one_converges(self, tmp_path, capsys):
        u = DenseTensor.from_memory((3,), [0.6, 0.0, 0.8])
        v = DenseTensor.from_memory((2,), [1.0, 0.0])
        path = write_tensor(tmp_path / "r1.json", rank_one_compose(2.0, [u, v]))
        assert main(["hopm", "--in", path]) == 0
        out = capsys.readouterr().out
        assert "sweep 1: lambda" in out
        assert "converged: yes" in out
        assert "residual" in out

    def test_zero_tensor_exits_degenerate(self, tmp_path, capsys):
        path = write_tensor(tmp_path / "z.json", DenseTensor((2, 2), fill_value=0.0))
        assert main(["hopm", "--in", path]) == 3

    def test_one_sweep_usually_unconverged(self, tmp_path):
        import random

        rng = random.Random(11)
        t = DenseTensor((3, 3, 2))
        t.data = [rng.uniform(-1, 1) for _ in range(t.size)]
        path = write_tensor(tmp_path / "r.json", t)
        assert main(["hopm", "--in", path, "--sweeps", "1"]) == 2

    def test_json_report(self, tmp_path, capsys):
        u = DenseTensor.from_memory((2,), [1.0, 0.0])
        path = write_tensor(tmp_path / "r1.json", rank_one_compose(1.5, [u, u]))
        assert main(["hopm", "--in", path, "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["converged"] is True
        assert abs(obj["scale"] - 1.5) < 1e-10


class TestVerifyCommand:
    def test_small_run_exits_zero(self, capsys):
        assert main(["verify", "--seed", "5", "--trials", "2"]) == 0
        out = capsys.readouterr().out
        assert "total:" in out and "0 failures" in out

    def test_reports_at_least_ten_families(self, capsys):
        assert main(["verify", "--seed", "42", "--trials", "1"]) == 0
        out = capsys.readouterr().out
        family_lines = [l for l in out.splitlines() if "/1 pass" in l]
        assert len(family_lines) >= 10

    def test_injected_fault_exits_one(self, capsys):
        assert main(["verify", "--seed", "5", "--trials", "2", "--inject-fault"]) == 1
        out = capsys.readouterr().out
        assert "counterexample" in out

    def test_deterministic_output(self, capsys):
        main(["verify", "--seed", "9", "--trials", "2"])
        first = capsys.readouterr().out
        main(["verify", "--seed", "9", "--trials", "2"])
        assert capsys.readouterr().out == first

    def test_json_report(self, capsys):
        assert main(["verify", "--seed", "5", "--trials", "1", "--json"]) == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["ok"] is True

    def test_report_file(self, tmp_path, capsys):
        out = tmp_path / "report.txt"
        assert main(["verify", "--seed", "5", "--trials", "1", "--out", str(out)]) == 0
        assert out.read_text() == capsys.readouterr().out

    def test_env_seed_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("TENSORLIB_SEED", "123")
        main(["verify", "--trials", "1"])
        assert "seed=123" in capsys.readouterr().out

    def test_bad_env_seed_is_usage_error(self, monkeypatch, capsys):
        monkeypatch.setenv("TENSORLIB_SEED", "abc")
        with pytest.raises(SystemExit) as err:
            main(["verify", "--trials", "1"])
        assert err.value.code == 64


class TestUsage:
    def test_missing_subcommand(self):
        with pytest.raises(SystemExit) as err:
            main([])
        assert err.value.code == 64

    def test_missing_required_argument(self):
        with pytest.raises(SystemExit) as err:
            main(["emit"])
        assert err.value.code == 64
