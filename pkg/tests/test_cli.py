import json
import re
import subprocess
import sys

import pytest

from golden import GAMMA, RE_A1, RE_A2, RE_B
from ybsegre.cli import RunConfig, main, render_text, run
from ybsegre.solution import classify, load_solution, orbit_report


def call(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def numbers(text):
    return sorted(re.findall(r"-?\d+", text))


def test_verify_golden(capsys, x_file):
    status, out, _ = call(capsys, "verify", x_file, "--json")
    doc = json.loads(out)
    assert status == 0
    assert all(doc["classification"].values())
    assert doc["orbits"]["fixed_points_text"] == ["x1x1", "x2x2", "x3x3"]


def test_verify_non_solution_exit_1(capsys, tmp_path):
    path = tmp_path / "ident.json"
    path.write_text(json.dumps({"size": 2, "r": [[[0, 0], [0, 1]], [[1, 0], [1, 1]]]}))
    status, out, _ = call(capsys, "verify", str(path), "--json")
    assert status == 1
    assert json.loads(out)["classification"]["is_nondegenerate"] is False


def test_segre_golden(capsys, x_file, y_file):
    status, out, _ = call(capsys, "segre", x_file, y_file, "--json")
    doc = json.loads(out)
    assert status == 0
    assert doc["counts"] == {"a1": 12, "a2": 3, "b": 3, "total": 18}
    assert {r["name"]: r["text"] for r in doc["relations"]["a1"]} == RE_A1
    assert {r["name"]: r["text"] for r in doc["relations"]["a2"]} == RE_A2
    assert {r["name"]: r["text"] for r in doc["relations"]["b"]} == RE_B
    assert doc["dim_identities"]["identities"]["relations_plus_segre_dim2"] == [36, 36]


def test_segre_with_hilbert(capsys, x_file, y_file):
    status, out, _ = call(capsys, "segre", x_file, y_file, "--hilbert", "--json")
    assert status == 0
    assert json.loads(out)["hilbert"]["gb_dims"] == [1, 6, 18, 40]


def test_kernel_golden(capsys, x_file, y_file):
    status, out, _ = call(capsys, "kernel", x_file, y_file, "--json")
    doc = json.loads(out)
    assert status == 0
    assert {g["name"]: g["text"] for g in doc["kernel_generators"]} == GAMMA
    assert doc["soundness"]["ok"]


def test_zalg(capsys, x_file, y_file):
    status, out, _ = call(capsys, "zalg", x_file, y_file, "--json")
    doc = json.loads(out)
    assert status == 0 and doc["matches_product_solution"]
    assert doc["presentation"]["relation_count"] == 15


def test_present_and_pbw(capsys, x_file, y_file):
    status, out, _ = call(capsys, "present", x_file, "--pbw", "--json")
    doc = json.loads(out)
    assert status == 0 and doc["pbw"]["gb_certified"]
    assert doc["presentation"]["relations"] == ["x3x2 - x1x3", "x3x1 - x2x3", "x2x1 - x1x2"]
    status, out, _ = call(capsys, "present", y_file, "--pbw", "--json")
    doc = json.loads(out)
    assert status == 0
    assert doc["pbw"]["certificate"]["witness_overlap_text"] == "y2y2y2"


def test_hilbert(capsys, y_file):
    status, out, _ = call(capsys, "hilbert", y_file, "--degree", "4", "--json")
    doc = json.loads(out)
    assert status == 0
    assert doc["hilbert_function"] == doc["oracle"] == doc["expected"] == [1, 2, 3, 4, 5]
    assert doc["new_elements"] == ["y2y1y1 - y1y1y2"]


def test_certify(capsys, x_file, flip_file, y_file):
    status, out, _ = call(capsys, "certify-squarefree", x_file, flip_file, "--json")
    assert status == 0 and json.loads(out)["normal_count_3"] == 40
    status, out, err = call(capsys, "certify-squarefree", x_file, y_file, "--json")
    assert status == 1 and "not square-free" in json.loads(out)["error"]
    assert "not square-free" in err


def test_enumerate(capsys):
    status, out, _ = call(capsys, "enumerate", "3", "--json")
    doc = json.loads(out)
    assert status == 0 and doc["count"] == 12 and doc["square_free_count"] == 4
    assert all(classify(load_solution(s)).is_solution for s in doc["solutions"])
    status, _, _ = call(capsys, "enumerate", "7")
    assert status == 1


def test_product_round_trip(capsys, tmp_path, x_file, y_file):
    path = tmp_path / "prod.json"
    status, _, _ = call(capsys, "product", x_file, y_file, "--json", "-o", str(path))
    assert status == 0
    prod = load_solution(path.read_text())
    assert prod.size == 6 and classify(prod).is_solution
    assert orbit_report(prod).fixed_count == 6
    status, out, _ = call(capsys, "verify", str(path), "--json")
    again = json.loads(out)
    assert status == 0
    assert load_solution(again) == prod
    assert again["orbits"]["nontrivial_count"] == 15


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "{x}"],
        ["segre", "{x}", "{y}"],
        ["kernel", "{x}", "{y}"],
        ["hilbert", "{y}", "-D", "4"],
        ["present", "{y}", "--pbw"],
        ["certify-squarefree", "{x}", "{f}"],
    ],
)
def test_text_and_json_share_numbers(capsys, argv, x_file, y_file, flip_file):
    argv = [a.format(x=x_file, y=y_file, f=flip_file) for a in argv]
    _, text, _ = call(capsys, *argv)
    _, js, _ = call(capsys, *argv, "--json")
    assert numbers(text) == numbers(render_text(json.loads(js)))
    assert numbers(text) == numbers(json.dumps(json.loads(js)))


def test_exit_codes(capsys, tmp_path, x_file):
    bad = tmp_path / "bad.json"
    bad.write_text('{"size": 2, "r": [[[0, 0], [1, 0]], [[0, 1], [1, 5]]]}')
    status, _, err = call(capsys, "verify", str(bad))
    assert status == 1 and "r[1][1]: 5" in err
    status, _, err = call(capsys, "verify", str(tmp_path / "missing.json"))
    assert status == 1 and "cannot read" in err
    status, _, _ = call(capsys, "hilbert", x_file, "--degree", "1")
    assert status == 1


def test_run_validation():
    assert run(RunConfig("segre", ["only-one"]))[0] == 1
    assert run(RunConfig("nonsense", []))[0] == 1
    assert run(RunConfig("verify", ["a", "b"]))[0] == 1


def test_identity_violation_exit_2(monkeypatch, capsys, x_file, y_file):
    from ybsegre import cli
    from ybsegre.segre import DimIdentityReport

    def broken(a, b):
        return DimIdentityReport(3, 2, 17, 18, 36, 21, 3, 17, 3)

    monkeypatch.setattr(cli, "dim_identity_report", broken)
    status, _, err = call(capsys, "segre", x_file, y_file)
    assert status == 2 and "error" in err


def test_module_entry_point(x_file):
    proc = subprocess.run([sys.executable, "-m", "ybsegre", "verify", x_file, "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["classification"]["is_solution"]
