import csv
import json

import pytest

from squidtransfer import acceptance
from squidtransfer.cli import CSV_COLUMNS, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_point_peak(capsys):
    code, out, _ = run(capsys, "point", "--r", "0.86", "--tau", "4.712")
    assert code == 0
    data = json.loads(out)
    assert data["path"] == "closed_form"
    assert data["e_npt"] == pytest.approx(0.87, abs=0.03)
    for key in ("A", "B", "C", "D", "concurrence", "eof", "s_linear", "purity", "teleport_useful", "version"):
        assert key in data
    assert all(not isinstance(v, (dict, list)) for v in data.values())


def test_point_vacuum(capsys):
    code, out, _ = run(capsys, "point", "--r", "0", "--tau", "1.0")
    data = json.loads(out)
    assert code == 0 and data["e_npt"] <= 0
    assert (data["A"], data["B"], data["C"], data["D"]) == (1, 0, 0, 0)


def test_point_oracle_path(capsys):
    code, out, _ = run(capsys, "point", "--r", "0.6", "--tau", "1.7", "--alpha", "1.5707963267949", "--beta", "1.5707963267949")
    data = json.loads(out)
    assert code == 0 and data["path"] == "oracle" and data["A"] is None
    assert data["e_npt"] > 0


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["point", "--r", "abc", "--tau", "1"], "--r"),
        (["point", "--r", "0.5", "--tau", "nan"], "--tau"),
        (["point", "--r", "-1", "--tau", "1"], "--r"),
        (["point", "--r", "0.5", "--tau", "1", "--alpha", "9"], "alpha"),
        (["sweep", "--r-range", "0:1"], "--r-range"),
        (["sweep", "--tau-range", "2:1:5"], "--tau-range"),
        (["average", "--r", "0.86", "--tau", "4.7", "--grid-n", "8"], "--grid-n"),
    ],
)
def test_usage_errors(capsys, argv, flag):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert flag in err


def test_sweep_csv(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", "--r-range", "0:2:5", "--tau-range", "0:9.42477796077:4", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "r,tau,e_npt,concurrence,eof,s_linear,purity"
    assert len(lines) == 21
    rows = list(csv.DictReader(lines))
    assert [float(r["r"]) for r in rows[:4]] == [0.0] * 4
    for row in rows:
        e, c = float(row["e_npt"]), float(row["concurrence"])
        assert 0 <= c <= 1 and abs(c - max(0.0, e)) < 1e-10
        assert 0 <= float(row["s_linear"]) <= 1
        for v in row.values():
            mantissa = v.lstrip("-").split("e")[0].replace(".", "").lstrip("0")
            assert len(mantissa) <= 12


def test_sweep_default_grid_size(tmp_path, capsys):
    out = tmp_path / "full.csv"
    assert main(["sweep", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 40001


def test_sweep_slice_peak(tmp_path, capsys):
    out = tmp_path / "slice.csv"
    assert main(["sweep", "--r-range", "0.86:0.87:2", "--tau-range", "0:9.42477796077:400", "--out", str(out)]) == 0
    rows = [r for r in csv.DictReader(out.read_text().splitlines()) if float(r["r"]) == 0.86]
    best = max(rows, key=lambda r: float(r["e_npt"]))
    # located maximum of the slice; see acceptance criterion 1 for the 3pi/2 comparison
    assert float(best["tau"]) == pytest.approx(4.61, abs=0.02)
    assert float(best["e_npt"]) == pytest.approx(0.87, abs=0.02)


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "--r-range", "0.5:1:2", "--tau-range", "0:1:2", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 4 and list(rows[0]) == list(CSV_COLUMNS)


def test_determinism(tmp_path):
    paths = []
    for k, workers in enumerate(("1", "1", "4")):
        p = tmp_path / f"{k}.csv"
        assert main(["sweep", "--r-range", "0:2:9", "--tau-range", "0:9:11", "--workers", workers, "--out", str(p)]) == 0
        paths.append(p.read_bytes())
    assert paths[0] == paths[1] == paths[2]


def test_unwritable_path(capsys):
    code, _, err = run(capsys, "point", "--r", "0.5", "--tau", "1", "--out", "/nonexistent/dir/out.json")
    assert code == 3 and "I/O" in err


def test_average(capsys):
    code, out, _ = run(capsys, "average", "--r", "0.86", "--tau", "0", "--grid-n", "16")
    data = json.loads(out)
    assert code == 0 and data["e_npt"] <= 0
    assert data["convergence"] < 1e-3
    assert sum(data[f"rho_{i}{i}_re"] for i in range(4)) == pytest.approx(1.0, abs=1e-12)


def test_prep_scan(capsys):
    code, out, _ = run(capsys, "prep-scan", "--r", "0.86", "--tau", "4.712", "--grid-n", "5")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "alpha,beta,e_npt" and len(lines) == 26
    assert float(lines[1].split(",")[2]) == pytest.approx(0.841, abs=0.01)


CIRCUIT_FILE = """\
# C2 = D / c_c = 1 pF with these elements
c_j0 = 1e-15
c_g = 1e-17
c_c = 1e-17
c_0 = 4.940544554455445e-15
l_o = 1e-8
e_j0 = 5e-25
phi_ext = 0
v_g = 0.01602176634
"""


def test_circuit_file(tmp_path, capsys):
    path = tmp_path / "circuit.txt"
    path.write_text(CIRCUIT_FILE)
    code, out, _ = run(capsys, "circuit", "--circuit", str(path))
    data = json.loads(out)
    assert code == 0
    assert data["cap_c2"] == pytest.approx(1e-12, rel=1e-12)
    assert data["omega"] == pytest.approx(1e10, rel=1e-12)
    assert data["gate_offset"] == pytest.approx(0.0, abs=1e-12)
    assert "rwa_pass" in data


def test_circuit_nominal(capsys):
    code, out, _ = run(capsys, "circuit")
    data = json.loads(out)
    assert code == 0 and data["omega"] == 1e10 and 1e8 <= data["rabi_omega"] <= 3e8
    assert data["rwa_pass"] is True


def test_circuit_file_errors(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("c_j0 = nope\n")
    assert run(capsys, "circuit", "--circuit", str(path))[0] == 2
    assert run(capsys, "circuit", "--circuit", str(tmp_path / "missing.txt"))[0] == 3


def test_verify_degraded_truncation(capsys):
    checks = acceptance.run_all(epsilon_tail=1e-2, include_determinism=False)
    failed = {c.name for c in checks if not c.passed}
    assert "series vs Kraus sum <= 1e-12 (20x20)" in failed
    assert "closed form vs oracle <= 1e-8 (20x20)" in failed
    assert "averaged_peak" in failed  # oracle state misses 0.6% of its trace
