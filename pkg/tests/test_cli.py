"""Command-line interface: subcommands, formats, exit codes, round-trips."""

import csv
import io
import json

import pytest

from rubbling import FamilySpec, build_family, format_graph_text
from rubbling.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----------------------------------------------------------------- compute

def test_compute_text_row(capsys):
    code, out, _ = run(capsys, "compute", "cycle:5", "--quantity", "rubbling",
                       "--no-progress")
    assert code == 0
    assert out.splitlines() == [
        "cycle:5 rubbling t=1 value=5 formula=5 match=yes "
        "witness=0,0,0,1,3 elapsed_ms=" + out.rsplit("elapsed_ms=", 1)[1].strip()
    ]


def test_compute_range_json_roundtrip(capsys):
    code, out, _ = run(capsys, "compute", "cycle:3..6", "--quantity", "rubbling",
                       "--format", "json", "--no-progress")
    assert code == 0
    rows = json.loads(out)
    assert [r["n"] for r in rows] == [3, 4, 5, 6]
    assert [r["value"] for r in rows] == [2, 4, 5, 8]
    assert all(r["match"] is True for r in rows)
    assert all(r["value"] == r["formula"] for r in rows)
    assert rows[0]["witness"] == [0, 0, 1]
    assert list(rows[0]) == ["family", "n", "quantity", "t", "mode", "value",
                             "formula", "match", "witness", "elapsed_ms"]


def test_compute_csv_roundtrip(capsys):
    code, out, _ = run(capsys, "compute", "path:4", "path:5", "--quantity",
                       "opt-pebbling", "--format", "csv", "--no-progress")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["value"]) for r in rows] == [3, 4]
    assert rows[0]["match"] == "true"
    assert [int(x) for x in rows[1]["witness"].split()] and len(
        rows[1]["witness"].split()) == 5
    # csv and json agree field for field
    _, jout, _ = run(capsys, "compute", "path:4", "path:5", "--quantity",
                     "opt-pebbling", "--format", "json", "--no-progress")
    jrows = json.loads(jout)
    for crow, jrow in zip(rows, jrows):
        assert int(crow["n"]) == jrow["n"]
        assert int(crow["value"]) == jrow["value"]
        assert [int(x) for x in crow["witness"].split()] == jrow["witness"]


def test_compute_t_parameter(capsys):
    code, out, _ = run(capsys, "compute", "cycle:4", "--quantity", "pebbling",
                       "--t", "2", "--format", "json", "--no-progress")
    assert code == 0
    row = json.loads(out)[0]
    assert row["t"] == 2 and row["value"] == 8 and row["match"] is True


def test_compute_graph_file_has_no_formula(tmp_path, capsys):
    path = tmp_path / "c5.graph"
    path.write_text(format_graph_text(build_family(FamilySpec("cycle", 5))))
    code, out, _ = run(capsys, "compute", str(path), "--quantity", "rubbling",
                       "--format", "json", "--no-progress")
    assert code == 0
    row = json.loads(out)[0]
    assert row["family"] == str(path) and row["n"] == 5
    assert row["value"] == 5
    assert row["formula"] is None and row["match"] is None


def test_compute_parallelism_identical_rows(capsys):
    args = ("compute", "cycle:5", "--quantity", "rubbling", "--format",
            "json", "--no-progress")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args, "--parallelism", "3")
    strip = lambda rows: [{k: v for k, v in r.items() if k != "elapsed_ms"}
                          for r in rows]
    assert strip(json.loads(out1)) == strip(json.loads(out2))


def test_compute_output_file(tmp_path, capsys):
    dest = tmp_path / "rows.csv"
    code, out, _ = run(capsys, "compute", "cycle:3", "--quantity", "rubbling",
                       "--format", "csv", "--output", str(dest), "--no-progress")
    assert code == 0
    assert out == ""
    rows = list(csv.DictReader(dest.open()))
    assert rows[0]["value"] == "2"


def test_compute_bad_range_exits_2(capsys):
    code, _, err = run(capsys, "compute", "cycle:6..3", "--quantity", "rubbling")
    assert code == 2
    assert "bad range" in err


def test_compute_unknown_family_exits_2(capsys):
    code, _, err = run(capsys, "compute", "tree:5", "--quantity", "rubbling")
    assert code == 2


def test_compute_rejects_t_with_optimal(capsys):
    code, _, err = run(capsys, "compute", "cycle:4", "--quantity",
                       "opt-rubbling", "--t", "2")
    assert code == 2


def test_argparse_usage_error_is_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute", "cycle:4", "--quantity", "nope"])
    assert exc.value.code == 2


# -------------------------------------------------------------------- check

def test_check_reachable_exit_0(capsys):
    code, out, _ = run(capsys, "check", "cycle:4", "--dist", "0,0,4,0",
                       "--root", "v1")
    assert code == 0
    assert "reachable" in out


def test_check_unreachable_exit_1(capsys):
    code, out, _ = run(capsys, "check", "cycle:4", "--dist", "0,0,3,0",
                       "--root", "0")
    assert code == 1
    assert "unreachable" in out


def test_check_solvable_json(capsys):
    code, out, _ = run(capsys, "check", "mobius:4", "--dist",
                       "1 0 1 0 0 1 0 0", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["decision"] is True and payload["failing_root"] is None


def test_check_unsolvable_reports_failing_root(capsys):
    code, out, _ = run(capsys, "check", "cycle:4", "--dist", "0 0 0 3",
                       "--format", "json")
    assert code == 1
    assert json.loads(out)["failing_root"] == 1


def test_check_pebbling_mode(capsys):
    code, _, _ = run(capsys, "check", "path:3", "--dist", "1 0 1",
                     "--root", "1", "--mode", "pebbling")
    assert code == 1
    code, _, _ = run(capsys, "check", "path:3", "--dist", "1 0 1",
                     "--root", "1", "--mode", "rubbling")
    assert code == 0


def test_check_save_and_replay_certificate(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, _, _ = run(capsys, "check", "cycle:5", "--dist", "0 0 4 0 0",
                     "--root", "v1", "--save-cert", str(cert))
    assert code == 0
    data = json.loads(cert.read_text())
    assert data["root"] == 0 and data["t"] == 1
    code, out, _ = run(capsys, "check", "cycle:5", "--cert", str(cert))
    assert code == 0
    assert "valid" in out
    # tampering with a move makes the replay fail
    data["moves"][0]["sources"] = [1]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "check", "cycle:5", "--cert", str(bad))
    assert code == 1
    assert "INVALID" in out


def test_check_invalid_certificate_exit_1(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps({
        "initial": [2, 0, 0], "root": 2, "t": 1,
        "moves": [{"kind": "pebbling", "sources": [0], "target": 1},
                  {"kind": "pebbling", "sources": [1], "target": 2}],
    }))
    code, out, _ = run(capsys, "check", "path:3", "--cert", str(cert))
    assert code == 1
    assert "INVALID" in out


def test_check_wrong_length_dist_exits_2(capsys):
    code, _, err = run(capsys, "check", "cycle:4", "--dist", "1 2 3")
    assert code == 2


def test_check_requires_dist_or_cert(capsys):
    code, _, err = run(capsys, "check", "cycle:4")
    assert code == 2


def test_check_dist_file(tmp_path, capsys):
    dist = tmp_path / "d.txt"
    dist.write_text("0 0 4 0\n")
    code, _, _ = run(capsys, "check", "cycle:4", "--dist", str(dist),
                     "--root", "v1")
    assert code == 0


# ------------------------------------------------------------------ verify

def test_verify_subset_passes(capsys):
    code, out, _ = run(capsys, "verify", "lempath", "reduction", "--no-progress")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1].startswith("PASS")
    assert all(line.startswith("[ok ]") for line in lines[:-1])
    assert sum("lempath" in line for line in lines) == 3


def test_verify_unknown_suite_exits_2(capsys):
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2


def test_verify_csv_format(capsys):
    code, out, _ = run(capsys, "verify", "lempath", "--format", "csv",
                       "--no-progress")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3
    assert all(r["ok"] == "true" for r in rows)


# --------------------------------------------------------------- enumerate

def test_enumerate_representatives(capsys):
    code, out, _ = run(capsys, "enumerate", "cycle:4", "--size", "2")
    assert code == 0
    assert out.splitlines() == ["0 0 0 2", "0 0 1 1", "0 1 0 1"]


def test_enumerate_trivial_group_counts(capsys):
    code, out, _ = run(capsys, "enumerate", "cycle:4", "--size", "2",
                       "--group", "trivial", "--count-only")
    assert code == 0
    assert "10 representatives of 10" in out


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "path:3", "--size", "2",
                       "--format", "json")
    assert code == 0
    assert json.loads(out) == [[0, 0, 2], [0, 1, 1], [0, 2, 0], [1, 0, 1]]


def test_enumerate_file_graph_needs_trivial_group(tmp_path, capsys):
    path = tmp_path / "g.graph"
    path.write_text(format_graph_text(build_family(FamilySpec("path", 3))))
    code, _, err = run(capsys, "enumerate", str(path), "--size", "1")
    assert code == 2  # family symmetry unavailable for file graphs
    code, out, _ = run(capsys, "enumerate", str(path), "--size", "1",
                       "--group", "trivial")
    assert code == 0
    assert len(out.splitlines()) == 3
