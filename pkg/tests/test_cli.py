import csv
import io
import json
import subprocess
import sys

import pytest

from dpic.cli import main, schedule_from_dict, schedule_to_dict
from dpic import build_instance, build_schedule


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_run_golden_table(capsys):
    code, out, _ = run_cli(capsys, "run", "--C", "9", "--K", "7", "--P", "3")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 13
    assert lines[0] == "L1 P1 client 2: x5 ⊕ x10"
    assert lines[9] == "L2 P1 client 7: x40 ⊕ x41 ⊕ x50"


def test_run_rejects_two_clients_without_force(capsys):
    code, _, err = run_cli(capsys, "run", "--C", "2", "--K", "4", "--P", "2")
    assert code == 2
    assert "C >= 3" in err


def test_run_rejects_small_overlap(capsys):
    code, _, err = run_cli(capsys, "run", "--C", "9", "--K", "7", "--P", "2")
    assert code == 2
    assert "P >= r_max - 2" in err
    assert "P >= 3" in err


def test_run_rejects_overlap_above_base(capsys):
    code, _, err = run_cli(capsys, "run", "--C", "3", "--K", "2", "--P", "3")
    assert code == 2
    assert "overlap" in err


def test_run_json_round_trips(capsys):
    code, out, _ = run_cli(
        capsys, "run", "--C", "9", "--K", "7", "--P", "3", "--format", "json"
    )
    assert code == 0
    schedule = schedule_from_dict(json.loads(out))
    assert schedule == build_schedule(build_instance(9, 7, 3))
    assert schedule_to_dict(schedule) == json.loads(out)


def test_trace_table_matches_reference(capsys):
    code, out, _ = run_cli(capsys, "trace", "--C", "9", "--K", "7", "--P", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["client"] + [
        "x5+x10", "x10+x16", "x10+x13", "x16+x23", "x16+x19", "x23+x24",
        "x23+x26", "x23+x27", "x23+x28", "x40+x41+x50", "x50+x61",
        "x61+x64", "x61+x65",
    ]
    assert lines[9].split() == ["C9", "-", "-", "-", "-", "-", "-", "-", "-",
                                "-", "-", "x50", "-", "-"]


def test_trace_table_and_csv_cells_agree(capsys):
    _, table_out, _ = run_cli(capsys, "trace", "--C", "9", "--K", "7", "--P", "3")
    _, csv_out, _ = run_cli(
        capsys, "trace", "--C", "9", "--K", "7", "--P", "3", "--format", "csv"
    )
    table_cells = [
        ["" if c == "-" else c for c in line.split()[1:]]
        for line in table_out.splitlines()[1:]
    ]
    csv_cells = [row[1:] for row in csv.reader(io.StringIO(csv_out))][1:]
    assert table_cells == csv_cells


def test_trace_payload_check(capsys):
    code, out, _ = run_cli(
        capsys, "trace", "--C", "9", "--K", "7", "--P", "3",
        "--payload-bits", "8", "--seed", "11",
    )
    assert code == 0
    assert out.splitlines()[-1] == "payload check: ok"


def test_verify_golden(capsys):
    code, out, _ = run_cli(capsys, "verify", "--C", "9", "--K", "7", "--P", "3")
    assert code == 0
    assert "security: PASS" in out
    assert "optimality gap: 4" in out


def test_verify_optimal_case(capsys):
    code, out, _ = run_cli(capsys, "verify", "--C", "4", "--K", "6", "--P", "2")
    assert code == 0
    assert "optimality gap: 0" in out


def test_verify_forced_out_of_theorem(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--C", "2", "--K", "5", "--P", "2", "--force"
    )
    assert code == 0
    assert "regime: out-of-theorem" in out


def test_verify_forced_infeasible_reports_failure(capsys):
    code, _, err = run_cli(
        capsys, "verify", "--C", "2", "--K", "4", "--P", "2", "--force"
    )
    assert code == 1
    assert "verification failed" in err


def test_verify_json(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--C", "9", "--K", "7", "--P", "3", "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["all_passed"] is True
    assert report["optimality_gap"] == 4


def test_sweep_golden_gaps(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--C", "3..10", "--format", "csv"
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8
    # frozen from the count recurrence: N(3..10) = 3,4,6,9,10,11,13,16
    assert [int(r["gap"]) for r in rows] == [0, 0, 1, 3, 3, 3, 4, 6]
    assert [int(r["N"]) for r in rows] == [3, 4, 6, 9, 10, 11, 13, 16]
    assert all(r["ok"] == "true" for r in rows)
    assert out.splitlines()[0] == "C,K,P,r_max,N,S_opt,gap,ok"


def test_sweep_single_point(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--C", "9", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert len(rows) == 1
    assert rows[0]["N"] == "13"


def test_sweep_infeasible_combo_is_skipped(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--C", "9", "--K", "7", "--P", "2", "--format", "csv"
    )
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert rows[0]["ok"].startswith("skip(")


@pytest.mark.parametrize(
    "clients,expected_first",
    [(9, "N=13, chain 9→4→0"), (1, "N=1, chain 1"), (0, "N=0, chain 0")],
)
def test_predict(capsys, clients, expected_first):
    code, out, _ = run_cli(capsys, "predict", "--C", str(clients))
    assert code == 0
    assert out.splitlines()[0] == expected_first


def test_output_file(tmp_path, capsys):
    target = tmp_path / "schedule.csv"
    code, out, _ = run_cli(
        capsys, "run", "--C", "9", "--K", "7", "--P", "3",
        "--format", "csv", "--output", str(target),
    )
    assert code == 0
    assert out == ""
    content = target.read_text(encoding="utf-8")
    assert content.splitlines()[0] == "level,phase,slot,transmitter,support"
    assert content.splitlines()[1] == "1,phase1,1,2,x5+x10"


def test_console_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "dpic.cli", "predict", "--C", "9"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout.startswith("N=13")
