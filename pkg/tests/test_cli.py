import json
import subprocess
import sys

import pytest

from revnnc.circuit import equivalent
from revnnc.cli import main
from revnnc.metrics import nnc, reports_from_json
from revnnc.realfile import read_real


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_metrics_single_toffoli(capsys, fixtures):
    code, out, _ = run(capsys, "metrics", fixtures / "toffoli.real", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)
    assert (row["n"], row["gc"], row["qc"], row["trc"]) == (3, 1, 5, 16)


def test_metrics_keeps_input_order(capsys, fixtures):
    code, out, _ = run(capsys, "metrics", fixtures / "cnot.real", fixtures / "toffoli.real", "--format", "csv")
    assert code == 0
    names = [line.split(",")[0] for line in out.splitlines()[1:]]
    assert names == ["cnot", "toffoli"]


def test_metrics_json_round_trips(capsys, fixtures):
    _, out, _ = run(capsys, "metrics", fixtures / "3_17_13.real", "--format", "json")
    (report,) = reports_from_json(out)
    assert report.qc == 14


def test_metrics_bad_file_no_partial_output(capsys, fixtures):
    code, out, err = run(capsys, "metrics", fixtures / "toffoli.real", fixtures / "broken.real")
    assert code == 2
    assert out == ""
    assert "broken.real" in err and "line 5" in err


def test_metrics_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "metrics", tmp_path / "nope.real")
    assert code == 2


def test_optimize_naive(capsys, fixtures, tmp_path):
    out_file = tmp_path / "out.real"
    code, out, _ = run(capsys, "optimize", fixtures / "toffoli.real", "--strategy", "naive", "--out", out_file)
    assert code == 0
    assert "-> 11" in out and "overhead 2.20" in out
    result = read_real(out_file)
    assert len(result.gates) == 11 and nnc(result) == 0
    assert equivalent(read_real(fixtures / "toffoli.real"), result)


def test_optimize_best_with_restore(capsys, fixtures, tmp_path):
    out_file = tmp_path / "out.real"
    code, out, _ = run(
        capsys, "optimize", fixtures / "toffoli.real", "--strategy", "best", "--restore-order", "--format", "json",
        "--out", out_file,
    )
    assert code == 0
    summary = json.loads(out)
    assert (summary["result_qc"], summary["strategy"]) == (9, "macro")
    assert summary["table_qc"] == summary["realized_qc"] == 5


def test_optimize_local_records_permutation(capsys, fixtures, tmp_path):
    out_file = tmp_path / "out.real"
    code, out, _ = run(capsys, "optimize", fixtures / "fanout.real", "--strategy", "local", "--out", out_file)
    assert code == 0
    assert "output permutation" in out
    code, out, _ = run(capsys, "verify", fixtures / "fanout.real", out_file, "--modulo-permutation")
    assert code == 0
    code, _, _ = run(capsys, "verify", fixtures / "fanout.real", out_file)
    assert code == 1


def test_optimize_insufficient_lines(capsys, tmp_path):
    src = tmp_path / "t4.real"
    src.write_text(".numvars 4\n.variables a b c d\n.begin\nt4 a b c d\n.end\n")
    code, _, err = run(capsys, "optimize", src, "--strategy", "naive", "--out", tmp_path / "o.real")
    assert code == 3
    assert "t3" in err


def test_decompose_to_stdout(capsys, fixtures):
    code, out, _ = run(capsys, "decompose", fixtures / "toffoli.real")
    assert code == 0
    body = out.split(".begin\n")[1].split(".end")[0].splitlines()
    assert body == ["v b c", "t2 a b", "v+ b c", "t2 a b", "v a c"]


def test_verify_counterexample(capsys, fixtures):
    code, out, _ = run(capsys, "verify", fixtures / "toffoli.real", fixtures / "cnot.real")
    assert code == 1
    assert "a=1 b=0 c=0" in out


def test_verify_non_boolean(capsys, fixtures):
    code, _, err = run(capsys, "verify", fixtures / "stray_v.real", fixtures / "stray_v.real")
    assert code == 5
    assert "non-Boolean" in err


def test_verify_width_mismatch(capsys, fixtures):
    code, _, _ = run(capsys, "verify", fixtures / "toffoli.real", fixtures / "stray_v.real")
    assert code == 2


def test_macro_gen_small(capsys, fixtures, tmp_path):
    specs = tmp_path / "specs.json"
    specs.write_text(json.dumps([{"name": "tof", "width": 3, "pattern": ["t3 a b c"]}]))
    lib = tmp_path / "lib.json"
    code, out, _ = run(capsys, "macro-gen", specs, "--out", lib)
    assert code == 0
    assert "naive  11  exact   9  impr  18%" in out
    code, out, _ = run(
        capsys, "optimize", fixtures / "toffoli.real", "--strategy", "macro", "--macros", lib,
        "--out", tmp_path / "o.real",
    )
    assert code == 0 and "-> 9" in out


def test_macro_gen_budget(capsys, tmp_path):
    specs = tmp_path / "specs.json"
    specs.write_text(json.dumps([{"name": "tof", "width": 3, "pattern": ["t3 a b c"]}]))
    code, _, _ = run(capsys, "macro-gen", specs, "--max-cost", "5", "--out", tmp_path / "lib.json")
    assert code == 4


def test_deterministic_output(capsys, fixtures):
    first = run(capsys, "optimize", fixtures / "3_17_13.real")
    second = run(capsys, "optimize", fixtures / "3_17_13.real")
    assert first == second


def test_console_script_entry(fixtures):
    proc = subprocess.run(
        [sys.executable, "-m", "revnnc.cli", "metrics", str(fixtures / "toffoli.real")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "TrC" in proc.stdout


def test_bad_strategy_rejected(fixtures):
    with pytest.raises(SystemExit):
        main(["optimize", str(fixtures / "toffoli.real"), "--strategy", "magic"])


def test_bad_macro_library_is_a_parse_error(capsys, fixtures, tmp_path):
    lib = tmp_path / "lib.json"
    lib.write_text("{not json")
    code, _, err = run(capsys, "optimize", fixtures / "toffoli.real", "--strategy", "macro", "--macros", lib)
    assert code == 2
    assert "lib.json" in err


def test_macro_gen_rejects_wide_patterns(capsys, tmp_path):
    specs = tmp_path / "specs.json"
    specs.write_text(json.dumps([{"name": "wide", "width": 5, "pattern": ["t2 a d"]}]))
    code, _, _ = run(capsys, "macro-gen", specs)
    assert code == 2
