import json
import re

import pytest

from mconvex.cli import main

from conftest import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def dot_counts(text):
    nodes = re.findall(r"^\s*n\d+ \[", text, re.M)
    edges = re.findall(r"->", text)
    return len(nodes), len(edges)


def test_check_diamond(capsys):
    code, out, _ = run(capsys, "check", "--input", str(FIXTURES / "diamond.json"))
    assert code == 0
    assert "elements: 4" in out and "rank: 2" in out and "modular: true" in out


def test_check_pentagon(capsys):
    code, out, _ = run(capsys, "check", "--input", str(FIXTURES / "pentagon.json"))
    assert code == 0 and "semimodular: false" in out


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "--gen", "partition:4", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["flags"] == 18 and doc["semimodular"] and not doc["modular"]


@pytest.mark.parametrize("name", ["cyclic.json", "two_tops.json", "malformed.json", "missing.json"])
def test_bad_inputs_exit_2(capsys, name):
    code, out, err = run(capsys, "check", "--input", str(FIXTURES / name))
    assert code == 2 and out == "" and err.startswith("error:")


def test_bad_generator_exit_2(capsys):
    code, _, err = run(capsys, "check", "--gen", "boolean:9")
    assert code == 2 and "OutOfBounds" in err


def test_hull_identical_flags(capsys):
    code, out, _ = run(capsys, "hull", "--gen", "boolean:2", "--flag-c", "0,1,3", "--flag-d", "0,1,3",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["hull"] == [0, 1, 3] and doc["inversions"] == 0
    assert doc["preantimatroid"] == [[], [1], [1, 2]]


def test_hull_crossing_flags(capsys):
    code, out, _ = run(capsys, "hull", "--gen", "boolean:2", "--flag-c", "0,1,3", "--flag-d", "0,2,3")
    assert code == 0
    assert "sigma: 2 1" in out and "z: 1 2" in out and "z_prime: 3 3" in out
    assert "antimatroid (4): {} {1} {2} {1,2}" in out


def test_hull_rejects_non_flag(capsys):
    code, _, err = run(capsys, "hull", "--gen", "boolean:2", "--flag-c", "0,3", "--flag-d", "0,2,3")
    assert code == 2 and "NotAFlag" in err


def test_hull_rejects_non_semimodular(capsys):
    code, _, err = run(capsys, "hull", "--input", str(FIXTURES / "pentagon.json"),
                       "--flag-c", "0,1,2,4", "--flag-d", "0,3,4")
    assert code == 2 and "NotSemimodular" in err


def test_hull_dot(capsys):
    code, out, _ = run(capsys, "hull", "--gen", "boolean:2", "--flag-c", "0,1,3", "--flag-d", "0,1,3",
                       "--format", "dot")
    assert code == 0 and dot_counts(out) == (3, 2)


def test_distance_with_witness(capsys):
    code, out, _ = run(capsys, "distance", "--gen", "boolean:3", "--flag-c", "0,1,4,7",
                       "--flag-d", "0,3,6,7", "--witness", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["distance"] == 3 and doc["sigma"] == [3, 2, 1]
    assert doc["gallery"][0] == [0, 1, 4, 7] and doc["gallery"][-1] == [0, 3, 6, 7]
    assert len(doc["gallery"]) == 4


def test_render_lattice(capsys):
    code, out, _ = run(capsys, "render", "--input", str(FIXTURES / "diamond.json"))
    assert code == 0 and out.startswith("digraph") and dot_counts(out) == (4, 4)


def test_render_kstar_of_crossing_flags(capsys):
    code, out, _ = run(capsys, "render", "--gen", "boolean:2", "--what", "kstar",
                       "--flag-c", "0,1,3", "--flag-d", "0,2,3")
    assert code == 0 and dot_counts(out) == (4, 4)


def test_render_needs_flags(capsys):
    code, _, err = run(capsys, "render", "--gen", "boolean:2", "--what", "hull")
    assert code == 2 and "flag-c" in err


def test_verify_pass_and_skip(capsys):
    code, out, _ = run(capsys, "verify", "--gen", "boolean:2", "--input", str(FIXTURES / "pentagon.json"))
    assert code == 0
    assert "skipped: not semimodular" in out and "PASS" in out


def test_verify_is_byte_identical(capsys):
    argv = ["verify", "--gen", "partition:4", "--gen", "antimatroid_shelling:5:3",
            "--budget-pairs", "60", "--seed", "5", "--format", "json"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    doc = json.loads(first[1])
    assert doc["total_failures"] == 0 and doc["seed"] == 5


def test_verify_out_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--gen", "boolean:2", "--suite", "distance", "--out", str(path))
    assert code == 0 and out.startswith("lattice")
    doc = json.loads(path.read_text())
    assert [r["suite"] for r in doc["reports"]] == ["distance"]


def test_export_round_trip(capsys, tmp_path):
    path = tmp_path / "m3.json"
    assert run(capsys, "export", "--gen", "binary_subspace:2", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "check", "--input", str(path))
    assert code == 0 and "elements: 5" in out and "modular: true" in out


def test_export_directory_layout(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "--dir", str(tmp_path), "--gen", "boolean:2",
                       "--gen", "antimatroid_poset:5:3")
    assert code == 0
    assert (tmp_path / "boolean" / "boolean-2.json").is_file()
    assert (tmp_path / "antimatroid_poset" / "antimatroid_poset-5-s3.json").is_file()
    assert len(out.splitlines()) == 2


def test_export_default_corpus(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "--dir", str(tmp_path))
    assert code == 0 and len(out.splitlines()) == 22
    code, out, _ = run(capsys, "verify", "--input", str(tmp_path / "partition" / "partition-4.json"),
                       "--suite", "main")
    assert code == 0 and "PASS" in out


def test_export_needs_one_spec(capsys):
    code, _, err = run(capsys, "export")
    assert code == 2 and "exactly one" in err
