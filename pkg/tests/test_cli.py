import json
import subprocess
import sys

import pytest

from gridbcp.cli import main
from gridbcp.grid import parse_grid

G33 = "3 3\n1 1 1\n1 1 1\n1 1 1\n"


@pytest.fixture
def grid_file(tmp_path):
    def _write(text, name="g.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nsp_record(capsys, grid_file):
    code, out, _ = run(capsys, "nsp", "--grid", grid_file(G33), "--source", "1,1", "--target", "3,3")
    assert code == 0
    assert out == '{"weight":5,"path":[[1,1],[1,2],[1,3],[2,3],[3,3]]}\n'


def test_nsp_connector_records(capsys, grid_file):
    code, out, _ = run(
        capsys, "nsp", "--grid", grid_file(G33), "--source", "1,2", "--target", "2,1", "--connector"
    )
    assert code == 0
    assert json.loads(out) == {"weight": 3, "kind": "path", "path": [[1, 2], [1, 1], [2, 1]]}

    heavy = grid_file("3 3\n50 1 1\n1 1 1\n1 1 1\n", "heavy.txt")
    code, out, _ = run(capsys, "nsp", "--grid", heavy, "--source", "1,2", "--target", "2,1", "--connector")
    rec = json.loads(out)
    assert (code, rec["weight"], rec["kind"]) == (0, 8, "whole-minus-corner")
    assert len(rec["nodes"]) == 8 and [1, 1] not in rec["nodes"]


def test_nsp_usage_errors(capsys, grid_file):
    path = grid_file(G33)
    code, _, err = run(capsys, "nsp", "--grid", path, "--source", "4,1", "--target", "3,3")
    assert code == 2 and "outside" in err
    code, _, _ = run(capsys, "nsp", "--grid", path, "--source", "2,2", "--target", "2,2")
    assert code == 2
    code, _, err = run(capsys, "nsp", "--grid", grid_file("2 2\n1 0\n1 1\n", "bad.txt"),
                       "--source", "1,1", "--target", "2,2")
    assert code == 2 and "non-positive weight at line 2" in err
    code, _, _ = run(capsys, "nsp", "--grid", path + ".missing", "--source", "1,1", "--target", "3,3")
    assert code == 2


def test_nsp_thin_grid_is_a_capability_error(capsys, grid_file):
    code, _, err = run(capsys, "nsp", "--grid", grid_file("2 3\n1 1 1\n1 1 1\n"),
                       "--source", "1,1", "--target", "2,3")
    assert code == 3 and "--brute" in err


def test_bad_flag_values_exit_2(grid_file):
    with pytest.raises(SystemExit) as exc:
        main(["nsp", "--grid", grid_file(G33), "--source", "1-1", "--target", "3,3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--rows", "0", "--cols", "3", "--max-weight", "9", "--seed", "1"])
    assert exc.value.code == 2


@pytest.mark.parametrize("algorithm, extra", [("exact", []), ("approx", []), ("fptas", ["--epsilon", "0.5"])])
def test_bcp_records(capsys, grid_file, algorithm, extra):
    code, out, _ = run(capsys, "bcp", "--grid", grid_file(G33), "--algorithm", algorithm, *extra)
    rec = json.loads(out)
    assert code == 0
    assert rec["balance"] == 4
    assert rec["weight0"] + rec["weight1"] == 9
    assert len(rec["mask"]) == 3 and all(len(row) == 3 for row in rec["mask"])


def test_bcp_usage_and_capability_errors(capsys, grid_file):
    path = grid_file(G33)
    code, _, err = run(capsys, "bcp", "--grid", path, "--algorithm", "fptas")
    assert code == 2 and "--epsilon" in err
    code, _, _ = run(capsys, "bcp", "--grid", path, "--algorithm", "fptas", "--epsilon", "-1")
    assert code == 2
    code, _, _ = run(capsys, "bcp", "--grid", grid_file("1 1\n4\n", "one.txt"), "--algorithm", "exact")
    assert code == 2
    rows = "\n".join(" ".join(["1"] * 13) for _ in range(13))
    code, _, err = run(capsys, "bcp", "--grid", grid_file(f"13 13\n{rows}\n", "big.txt"),
                       "--algorithm", "exact")
    assert code == 3 and "fptas or approx" in err


def test_gen_is_deterministic(capsys):
    argv = ["gen", "--rows", "3", "--cols", "3", "--max-weight", "9", "--seed", "7"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second == "3 3\n9 6 7\n9 6 7\n8 3 1\n"
    g = parse_grid(first)
    assert g.weights.min() >= 1 and g.weights.max() <= 9


def test_gen_respects_shape_and_range(capsys):
    _, out, _ = run(capsys, "gen", "--rows", "4", "--cols", "6", "--max-weight", "2", "--seed", "0")
    g = parse_grid(out)
    assert (g.m, g.n) == (4, 6)
    assert set(g.weights.ravel().tolist()) <= {1, 2}


def test_verify_passes(capsys, grid_file):
    path = grid_file(G33)
    code, out, _ = run(capsys, "verify", "--grid", path, "--nsp", "1,1", "3,3", "--brute")
    assert code == 0 and out.startswith("PASS nsp solver=5 oracle=5")
    code, out, _ = run(capsys, "verify", "--grid", path, "--bcp", "--brute")
    assert code == 0 and out.startswith("PASS bcp approx=4 exact=4 oracle=4")


def test_verify_thin_grid_nsp_uses_the_oracle(capsys, grid_file):
    path = grid_file("1 3\n1 1 1\n")
    code, out, _ = run(capsys, "verify", "--grid", path, "--nsp", "1,1", "1,3", "--brute")
    assert code == 0 and "weight=none" in out
    code, _, _ = run(capsys, "verify", "--grid", path, "--nsp", "1,1", "1,3")
    assert code == 3


def test_verify_oversized_with_brute(capsys, grid_file):
    rows = "\n".join(" ".join(["1"] * 6) for _ in range(6))
    path = grid_file(f"6 6\n{rows}\n")
    code, _, err = run(capsys, "verify", "--grid", path, "--bcp", "--brute")
    assert code == 2 and "instance too large for oracle" in err
    code, _, err = run(capsys, "verify", "--grid", path, "--nsp", "1,1", "6,6", "--brute")
    assert code == 2 and "instance too large for oracle" in err
    code, out, _ = run(capsys, "verify", "--grid", path, "--nsp", "1,1", "6,6")
    assert code == 0 and "oracle skipped" in out


def test_module_entry_point(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text(G33)
    proc = subprocess.run(
        [sys.executable, "-m", "gridbcp", "bcp", "--grid", str(path), "--algorithm", "exact"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["balance"] == 4
