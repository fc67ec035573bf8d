import json
import subprocess
import sys

import pytest

from supercohom.cli import main

GL11 = {"field": {"p": 3}, "algebra": {"builder": {"kind": "gl", "m": 1, "n": 1}}}

EXPLICIT = {
    "field": {"p": 3},
    "algebra": {
        "basis": [{"name": "x", "parity": 0}, {"name": "y", "parity": 1}],
        "brackets": [[1, 1, [[0, 2]]]],
    },
    "modules": {
        "two": {
            "dims": [1, 1],
            "matrices": [
                [[0, 0], [0, 0]],
                [[0, 0], [0, 0]],
            ],
        }
    },
}


def write(tmp_path, doc, name="doc.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_check_pass(tmp_path, capsys):
    assert main(["check", write(tmp_path, GL11)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["results"]["ok"]


def test_check_reports_broken_jacobi(tmp_path, capsys):
    doc = {
        "field": {"p": 3},
        "algebra": {
            "basis": [
                {"name": "a", "parity": 0},
                {"name": "b", "parity": 0},
                {"name": "c", "parity": 0},
            ],
            # [a,b] = c, [a,c] = a, [b,c] = 0 violates Jacobi:
            # [[a,b],c] + [b,[a,c]] = -c while [a,[b,c]] = 0
            "brackets": [[0, 1, [[2, 1]]], [0, 2, [[0, 1]]]],
        },
    }
    rc = main(["check", write(tmp_path, doc)])
    assert rc == 1
    out = json.loads(capsys.readouterr().out)
    assert out["results"]["algebra_violations"]


def test_parse_error_exit_2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["check", str(p)]) == 2
    q = tmp_path / "nofield.json"
    q.write_text(json.dumps({"algebra": {}}))
    assert main(["check", str(q)]) == 2


def test_rejects_float_scalars(tmp_path):
    doc = {
        "field": {"p": 3},
        "algebra": {
            "basis": [{"name": "y", "parity": 1}],
            "brackets": [[0, 0, [[0, 1.5]]]],
        },
    }
    assert main(["check", write(tmp_path, doc)]) == 2


def test_cohomology_lie_csv(tmp_path, capsys):
    doc = {
        "field": {"p": 3},
        "algebra": {"builder": {"kind": "example", "id": "ex_3_1_2"}},
    }
    rc = main(
        ["cohomology", write(tmp_path, doc), "--max-degree", "5", "--format", "csv"]
    )
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "degree,dimension"
    assert [l.split(",")[1] for l in lines[1:]] == ["1", "1", "0", "0", "0"]


def test_cohomology_vg(tmp_path, capsys):
    doc = {
        "field": {"p": 3},
        "algebra": {"builder": {"kind": "example", "id": "ex_5_3_2"}},
    }
    rc = main(["cohomology", write(tmp_path, doc), "--which", "vg", "--max-degree", "6"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert [d for _, d in out["results"]["dims"]] == [1, 0, 0, 1, 0, 0, 1]


def test_cohomology_vg_scope_error_exit_3(tmp_path):
    doc = {"field": {"p": 3}, "algebra": {"builder": {"kind": "gl", "m": 2, "n": 1}}}
    assert (
        main(["cohomology", write(tmp_path, doc), "--which", "vg", "--max-degree", "3"])
        == 3
    )


def test_variety_cone_and_cr(tmp_path, capsys):
    path = write(tmp_path, GL11)
    assert main(["variety", path, "--kind", "cone"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["results"]["count"] == 5
    assert main(["variety", path, "--kind", "cr", "--r", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["results"]["count"] == 9


def test_variety_support(tmp_path, capsys):
    path = write(tmp_path, EXPLICIT)
    rc = main(["variety", path, "--kind", "support", "--module", "two"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    # zero action on a 2-dim module: nothing is free, support = whole cone
    assert out["results"]["count"] == out["results"]["tested"]


def test_variety_bound_exit_3(tmp_path):
    doc = {"field": {"p": 5}, "algebra": {"builder": {"kind": "gl", "m": 2, "n": 2}}}
    assert (
        main(["variety", write(tmp_path, doc), "--kind", "cone", "--bound", "10"]) == 3
    )


def test_char0_support_command(tmp_path, capsys):
    doc = {
        "field": {"char": 0},
        "algebra": {
            "basis": [{"name": "v1", "parity": 1}, {"name": "v2", "parity": 1}],
            "brackets": [],
        },
        "group": {"generators": [[[0, 1], [1, 0]]]},
        "test_vectors": [[0, 0], [1, 0], [0, 1], [1, 1], [1, -1]],
    }
    rc = main(
        ["variety", write(tmp_path, doc), "--kind", "char0-support", "--module", "lambda"]
    )
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["results"]["count"] == 1  # free module: only the origin
    assert out["results"]["compatible"]
    # orbits of (1,0) and (0,1) merge under the swap
    assert len(out["results"]["orbits"]) == 4


def test_verify_paper_cli(tmp_path, capsys):
    assert main(["verify-paper", "--example", "3.1.2", "--p", "5"]) == 0
    capsys.readouterr()
    assert main(["verify-paper", "--example", "nonsense"]) == 2
    capsys.readouterr()


def test_reports_byte_identical(tmp_path, capsys):
    path = write(tmp_path, GL11)
    main(["variety", path, "--kind", "cone"])
    first = capsys.readouterr().out
    main(["variety", path, "--kind", "cone"])
    second = capsys.readouterr().out
    assert first == second


def test_console_entry_point(tmp_path):
    path = write(tmp_path, GL11)
    proc = subprocess.run(
        [sys.executable, "-m", "supercohom.cli", "variety", path, "--kind", "cone"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["count"] == 5
