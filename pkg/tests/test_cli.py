import json
import subprocess
import sys

from torifactor.cli import run

EX1 = {"matrix": {"rows": 3, "cols": 4, "data": [[1, 0, 1, -2], [0, 1, -3, 2], [0, 0, 5, -5]]}}
EX2 = {
    "matrix": {
        "data": [
            [18, -21, -9, 333, -492, 120],
            [-3, 8, 4, -14, 13, -4],
            [-23, 33, 14, -404, 588, -144],
            [-20, 26, 12, -337, 493, -121],
        ]
    }
}


def invoke(args, payload, tmp_path, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    proc = subprocess.run(
        [sys.executable, "-m", "torifactor", *args, "--input", str(path)],
        capture_output=True,
        text=True,
    )
    return proc


def test_hnf_command(tmp_path):
    proc = invoke(["hnf"], {"matrix": {"data": [[2, 4], [1, 1]]}}, tmp_path)
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["H"]["data"] == [[1, 1], [0, 2]]


def test_snf_command(tmp_path):
    proc = invoke(["snf"], {"matrix": {"data": [[2, 0], [0, 3]]}}, tmp_path)
    out = json.loads(proc.stdout)
    assert out["D"]["data"] == [[1, 0], [0, 6]]


def test_pipeline_command(tmp_path):
    proc = invoke(["pipeline"], EX1, tmp_path)
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["torsion_invariants"] == [5]
    assert out["Delta"]["data"] == [[1, 0, 0], [0, 1, 0], [0, 0, 5]]
    assert len(out["fans"]) == 1
    gamma = out["Gamma"]
    assert gamma["moduli"] == [5]


def test_fan_count_command(tmp_path):
    proc = invoke(["fans", "--count"], EX2, tmp_path)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"count": 3}


def test_fan_selection(tmp_path):
    proc = invoke(["picard", "--fan", "0"], EX2, tmp_path)
    out = json.loads(proc.stdout)
    assert len(out["fans"]) == 1


def test_classify_command(tmp_path):
    proc = invoke(["classify"], {"matrix": EX1["matrix"], "kind": "F"}, tmp_path)
    out = json.loads(proc.stdout)
    assert out["is_F"] and not out["is_CF"]


def test_reconstruct_command(tmp_path):
    payload = {
        "weights": {"data": [[1, 1, 1, 1]]},
        "torsion": {"moduli": [5], "data": [[1, 2, 3, 4]]},
        "covering": {"data": [[1, 0, 1, -2], [0, 1, -3, 2], [0, 0, 1, -1]]},
        "reference": {"data": [[1, 0, 1, -2], [0, 1, -3, 2], [0, 0, 5, -5]]},
    }
    proc = invoke(["reconstruct"], payload, tmp_path)
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["K"]["data"] == [[-4], [1], [-1], [5]]
    assert out["equivalence"]["equivalent"] is True


def test_equiv_command(tmp_path):
    payload = {
        "first": {"data": [[1, 0, -1], [0, 1, -1]]},
        "second": {"data": [[0, 1, -1], [1, 0, -1]]},
    }
    proc = invoke(["equiv"], payload, tmp_path)
    out = json.loads(proc.stdout)
    assert out["equivalent"] is True


def test_exit_code_for_malformed_input(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{ not json")
    proc = subprocess.run(
        [sys.executable, "-m", "torifactor", "hnf", "--input", str(path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1


def test_exit_code_for_missing_field(tmp_path):
    proc = invoke(["hnf"], {"wrong": 1}, tmp_path)
    assert proc.returncode == 1


def test_exit_code_for_bad_shape_declaration(tmp_path):
    proc = invoke(["hnf"], {"matrix": {"rows": 5, "data": [[1]]}}, tmp_path)
    assert proc.returncode == 1


def test_exit_code_for_precondition(tmp_path):
    proc = invoke(["fans"], {"matrix": {"data": [[1, 0], [0, 1]]}}, tmp_path)
    assert proc.returncode == 2
    assert "precondition" in proc.stderr


def test_exit_code_names_failed_conditions(tmp_path):
    # a matrix violating completeness: the failure names the condition
    proc = invoke(["cover"], {"matrix": {"data": [[1, 0, 1], [0, 1, 1]]}}, tmp_path)
    assert proc.returncode == 2
    assert "b" in proc.stderr


def test_output_is_deterministic(tmp_path):
    a = invoke(["pipeline"], EX2, tmp_path)
    b = invoke(["pipeline"], EX2, tmp_path, name="again.json")
    assert a.stdout == b.stdout


def test_big_integers_encoded_as_strings():
    from torifactor.cli import encode_matrix
    from torifactor import IntMatrix

    enc = encode_matrix(IntMatrix([[2**60, 1]]))
    assert enc["data"][0][0] == str(2**60)
    assert enc["data"][0][1] == 1


def test_big_integer_round_trip():
    from torifactor.cli import decode_matrix, encode_matrix
    from torifactor import IntMatrix

    m = IntMatrix([[-(2**70), 3], [5, 2**53]])
    assert decode_matrix(encode_matrix(m)) == m


def test_batch_inputs_preserve_order(tmp_path):
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    p1.write_text(json.dumps({"matrix": {"data": [[2, 4], [1, 1]]}}))
    p2.write_text(json.dumps({"matrix": {"data": [[3, 0], [0, 3]]}}))
    proc = subprocess.run(
        [sys.executable, "-m", "torifactor", "hnf", "--input", str(p1), "--input", str(p2)],
        capture_output=True,
        text=True,
    )
    lines = proc.stdout.strip().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["H"]["data"] == [[1, 1], [0, 2]]
    assert json.loads(lines[1])["H"]["data"] == [[3, 0], [0, 3]]


def test_plain_format(tmp_path):
    proc = invoke(["torsion", "--format", "plain"], EX1, tmp_path)
    assert proc.returncode == 0
    assert "torsion_invariants" in proc.stdout


def test_run_entry_point_with_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"matrix": {"data": [[1, 1]]}})))
    code = run(["gale"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["dual"]["data"] == [[1, -1]]


def test_cover_command(tmp_path):
    proc = invoke(["cover"], EX1, tmp_path)
    out = json.loads(proc.stdout)
    assert out["torsion_invariants"] == [5]
    assert out["Delta"]["data"] == [[1, 0, 0], [0, 1, 0], [0, 0, 5]]


def test_torsion_command(tmp_path):
    proc = invoke(["torsion"], EX1, tmp_path)
    out = json.loads(proc.stdout)
    assert out["generators"]["data"] == [[0, 0, 1, -1]]


def test_gamma_command(tmp_path):
    proc = invoke(["gamma"], EX1, tmp_path)
    out = json.loads(proc.stdout)
    assert out["Gamma"]["moduli"] == [5]
    assert out["Gamma"]["data"] == [[4, 3, 1, 0]]


def test_cartier_command(tmp_path):
    proc = invoke(["cartier"], EX1, tmp_path)
    out = json.loads(proc.stdout)
    assert len(out["fans"]) == 1
    cx = out["fans"][0]["C_X"]["data"]
    assert cx[-3:] == EX1["matrix"]["data"]
