import json
import subprocess
import sys
from importlib import resources

import pytest

from sharpblunt import cli


def run_cli(args, tmp_path=None):
    proc = subprocess.run(
        [sys.executable, "-m", "sharpblunt.cli", *args],
        capture_output=True, text=True,
    )
    return proc


def test_classify_blunt_e8_seven_records():
    proc = run_cli(["classify", "blunt", "--type", "E8", "--omega", "trivial",
                    "--format", "json"])
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["schema"] == "sharpblunt/v1"
    assert len(data["results"]) == 7
    assert {r["factors"] for r in data["results"]} == {
        "E8", "A1xE7", "A2xE6", "A3xD5", "A4xA4", "D8", "A1xA2xA5"}


def test_classify_sharp_c_range():
    proc = run_cli(["classify", "sharp", "--type", "C", "--rank", "2..12",
                    "--omega", "trivial", "--format", "json"])
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    for r in data["results"]:
        t, rr = (int(v) for v in r["params"])
        n = int(r["rank"])
        assert t % 2 == 1 and rr % 2 == 1 and t >= rr
        assert (t * t + rr * rr - 2) // 4 == n


def test_strictly_blunt_a5_generators():
    proc = run_cli(["classify", "strictly-blunt", "--type", "A5", "--omega", "all",
                    "--format", "json"])
    data = json.loads(proc.stdout)
    flags = [r["strictly_blunt"] for r in data["results"]]
    labels = [r["omega_label"] for r in data["results"]]
    assert sum(flags) == 2  # the generators of a cyclic group of order 6
    assert all((l == "gen") == f for l, f in zip(labels, flags))


def test_json_schema_validation():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(
        resources.files("sharpblunt").joinpath("data/output_schema_v1.json").read_text()
    )
    for args in (
        ["classify", "blunt", "--type", "F4", "--omega", "all"],
        ["classify", "sharp", "--type", "B6", "--omega", "all"],
        ["classify", "strictly-blunt", "--type", "D5", "--omega", "all"],
        ["bijection", "--type", "E7", "--omega", "all"],
        ["theta", "--type", "E6", "--omega", "all"],
        ["verify", "--scope", "lemma27"],
    ):
        proc = run_cli([*args, "--format", "json"])
        assert proc.returncode == 0, proc.stderr
        jsonschema.validate(json.loads(proc.stdout), schema)


def test_csv_columns_fixed():
    proc = run_cli(["classify", "blunt", "--type", "G2", "--omega", "all",
                    "--format", "csv"])
    header = proc.stdout.splitlines()[0].split(",")
    assert header == ["kind", "affine_type", "rank", "omega", "omega_label",
                      "deleted_node", "mark", "factors", "params", "case",
                      "strictly_blunt_pair"]


def test_usage_errors_exit_two():
    assert run_cli(["classify", "blunt", "--type", "H3"]).returncode == 2
    assert run_cli(["classify", "blunt", "--type", "D", "--rank", "2"]).returncode == 2
    assert run_cli(["classify", "blunt", "--type", "B2"]).returncode == 2
    assert run_cli(["classify", "nonsense", "--type", "E8"]).returncode == 2
    proc = run_cli(["classify", "blunt", "--type", "E8", "--omega", "in-underline"])
    assert proc.returncode == 2  # selector applies to type D only


def test_verify_small_scope_and_determinism(tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    args = ["verify", "--scope", "lemma27", "--max-rank", "8",
            "--format", "json", "--out"]
    assert run_cli([*args, str(out1)]).returncode == 0
    assert run_cli([*args, str(out2)]).returncode == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_main_entry_point_inprocess(capsys):
    rc = cli.main(["theta", "--type", "G2", "--omega", "all"])
    captured = capsys.readouterr()
    assert rc == 0
    assert "theta={1, 3, 2}" in captured.out
