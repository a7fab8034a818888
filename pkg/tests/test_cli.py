import csv
import io
import json
import subprocess
import sys

import pytest

from gmpdirac import cli, tables


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


SPIN = ("energy", "--mode", "spin", "--alpha", "0.1", "--re", "0.4", "--M", "1", "--D", "15", "--Cs", "0",
        "--state", "0p3/2")


def test_energy_spin_row():
    code, out, _ = run(*SPIN, "--d0", "table")
    assert code == 0
    row = rows_of(out)[0]
    assert row["energy"] == "5.5791076"
    assert (row["n"], row["kappa"]) == ("0", "-2")
    assert abs(float(row["residual"])) < 1e-9


def test_energy_default_shift_is_close_to_table():
    code, out, _ = run(*SPIN)
    assert code == 0
    assert float(rows_of(out)[0]["energy"]) == pytest.approx(5.5791076, abs=5e-6)


def test_energy_nonrel_row():
    code, out, _ = run("energy", "--mode", "nonrel", "--alpha", "0.05", "--re", "0.4", "--D", "15", "--state", "2p")
    assert code == 0
    row = rows_of(out)[0]
    assert float(row["energy"]) == pytest.approx(7.86080, abs=1e-4)
    assert (row["n"], row["l"]) == ("0", "1")


def test_energy_kratzer_and_pseudospin():
    code, out, _ = run("energy", "--potential", "kratzer", "--mode", "nonrel", "--re", "1.0", "--state", "2p")
    assert code == 0 and float(rows_of(out)[0]["energy"]) == pytest.approx(3.21339, abs=1e-5)
    code, out, _ = run("energy", "--mode", "pseudospin", "--state", "0d3/2", "--state", "1s1/2", "--Cps", "5")
    assert code == 0 and len(rows_of(out)) == 2


def test_energy_failures_are_itemized():
    code, out, err = run("energy", "--mode", "spin", "--state", "0s1/2", "--state", "60s1/2")
    assert code == 1
    rows = rows_of(out)
    assert rows[0]["energy"] and not rows[0]["error"]
    assert rows[1]["error"] and not rows[1]["energy"]
    assert "60s1/2" in err


@pytest.mark.parametrize("argv", [
    ("energy", "--state", "bogus"),
    ("energy",),
    ("table", "9"),
    ("wavefunction", "--state", "0s1/2", "--points", "0"),
    ("verify", "--mode", "nonrel"),
    ("energy", "--state", "0s1/2", "--D", "-1"),
    ("energy", "--state", "0s1/2", "--mode", "weird"),
    (),
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


@pytest.mark.parametrize("table_id", tables.TABLE_IDS)
def test_every_table_reproduces(table_id):
    code, out, _ = run("table", str(table_id))
    assert code == 0
    rows = rows_of(out)
    assert len(rows) == len(tables.load_golden(table_id))
    assert all(abs(float(r["diff"])) <= tables.TOLERANCE[table_id] for r in rows)


def test_table_examples():
    rows = rows_of(run("table", "4")[1])
    cell = [r for r in rows if r["state"] == "2p" and r["r_e"] == "1.00"]
    assert cell[0]["value"] == "3.21339"
    assert len(rows) == 14 * 5
    rows = rows_of(run("table", "6")[1])
    cell = [r for r in rows if r["state"] == "2s1/2" and r["C_ps"] == "5.0" and r["golden"] == "10.1707692"]
    assert len(cell) == 1 and cell[0]["value"] == "10.1707692"


def test_table_with_bare_shift_fails_with_cell_list():
    code, _, err = run("table", "5", "--d0", "0")
    assert code == 1
    assert "cell" in err


def test_wavefunction_doublet():
    code, out, err = run("wavefunction", "--state", "0,1", "--state", "0,-2", "--points", "50", "--output", "json")
    assert code == 0
    payload = json.loads(out)
    rows = payload["rows"]
    assert len(rows) == 50
    assert all(r["F[0,1]"] == r["F[0,-2]"] for r in rows)
    assert any(r["G[0,1]"] != r["G[0,-2]"] for r in rows)
    for state in payload["meta"]["states"].values():
        assert state["norm_check"] == pytest.approx(1, abs=1e-8)
    assert "norm_check" in err


def test_wavefunction_unbound_exits_1():
    assert run("wavefunction", "--state", "60s1/2")[0] == 1


def test_potential_curve():
    code, out, _ = run("potential", "--points", "5", "--rmin", "0.5", "--rmax", "2")
    rows = rows_of(out)
    assert code == 0 and len(rows) == 5
    assert set(rows[0]) == {"r", "V", "inv_r2", "inv_r2_approx"}
    code, out, _ = run("potential", "--potential", "kratzer", "--points", "3")
    assert "inv_r2_approx" not in rows_of(out)[0]


def test_verify_bare_shift_is_worse_for_l_positive():
    states = ["--state", "2p", "--state", "3d", "--state", "5g"]
    base = ("verify", "--mode", "nonrel", "--alpha", "0.2", *states)
    good = rows_of(run(*base)[1])
    bare = rows_of(run(*base, "--d0", "0")[1])
    for a, b in zip(good, bare):
        assert float(a["delta"]) < float(b["delta"])


def test_verify_table3_grid():
    code, out, _ = run("verify", "--table", "3")
    rows = rows_of(out)
    assert len(rows) == len(tables.load_golden(3))
    assert code == 0 and all(r["ok"] == "1" for r in rows)


def test_output_is_byte_stable():
    argv = ("energy", "--mode", "pseudospin", "--state", "1s1/2", "--state", "0d3/2", "--Cps", "-5")
    assert run(*argv)[1] == run(*argv)[1]
    assert run("table", "3")[1] == run("table", "3")[1]


def test_csv_and_json_payloads_match():
    argv = ("energy", "--mode", "spin", "--state", "0p3/2", "--state", "1,-1")
    csv_rows = rows_of(run(*argv)[1])
    json_rows = json.loads(run(*argv, "--output", "json")[1])["rows"]
    assert len(csv_rows) == len(json_rows)
    for c, j in zip(csv_rows, json_rows):
        for key, text in c.items():
            value = j[key]
            if text == "":
                assert value is None
            elif isinstance(value, (int, float)):
                assert float(text) == value
            else:
                assert text == value


def test_config_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"mode": "nonrel", "alpha": 0.05, "state": ["2p"], "output": "json"}))
    code, out, _ = run("energy", "--config", str(path))
    assert code == 0
    assert json.loads(out)["rows"][0]["energy"] == pytest.approx(7.8608, abs=1e-4)
    # explicit flags override the file
    code, out, _ = run("energy", "--config", str(path), "--output", "csv")
    assert out.startswith("state,")
    path.write_text(json.dumps({"nonsense": 1}))
    assert run("energy", "--config", str(path))[0] == 2
    assert run("energy", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gmpdirac", "table", "9"], capture_output=True, text=True)
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "gmpdirac", *SPIN], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("state,n,kappa,energy")
