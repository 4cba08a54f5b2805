import json
import subprocess
import sys
from pathlib import Path

import pytest

from reeslab import cli
from reeslab.rees import ReesPackage

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_verified_exit_0(capsys):
    code, out, _ = run(["check", "--theorem", "T3.2", DATA / "ideal_xy.json", "--seed", "7"], capsys)
    assert code == 0
    assert "verified" in out


def test_hypotheses_fail_exit_2(capsys):
    code, out, _ = run(["check", "--theorem", "T2.11", DATA / "sq_max_ideal.json"], capsys)
    assert code == 2
    assert "hypotheses-fail" in out


def test_contradiction_exit_3(capsys, monkeypatch):
    # sabotage the CM test so a true theorem appears violated
    monkeypatch.setattr(ReesPackage, "is_cohen_macaulay", lambda self: False)
    code, out, _ = run(["check", "--theorem", "T4.4", DATA / "sq_max_ideal.json", "--param", "k=1"], capsys)
    assert code == 3
    assert "CONTRADICTION" in out


def test_budget_exit_4(capsys, monkeypatch):
    from reeslab import groebner
    # restore the process-wide limit after the CLI lowers it
    monkeypatch.setattr(groebner.DEFAULT_BUDGET, "max_pairs", groebner.DEFAULT_BUDGET.max_pairs)
    code, _, err = run(["rees", DATA / "sq_max_ideal.json", "--budget", "3"], capsys)
    assert code == 4
    assert "budget" in err


@pytest.mark.parametrize("argv, fragment", [
    (["rees", DATA / "ragged.json"], "ragged"),
    (["rees", DATA / "bad_poly.json"], "line 3, column 26"),
    (["rees", DATA / "missing.json"], "cannot read"),
    (["check", "--theorem", "T9.9", DATA / "ideal_xy.json"], "unknown theorem"),
    (["check", "--theorem", "T3.2"], "needs a module spec"),
    (["rees", DATA / "ideal_xy.json", "--field", "10"], "prime"),
])
def test_malformed_input_exit_1(capsys, argv, fragment):
    code, _, err = run(argv, capsys)
    assert code == 1
    assert fragment in err


def test_rees_golden_report(capsys):
    code, out, _ = run(["rees", DATA / "ideal_xy.json", "--json"], capsys)
    assert code == 0
    assert out == (GOLDEN / "report_rees_xy.json").read_text()


def test_reports_are_deterministic(capsys, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        run(["bourbaki", DATA / "xy_plus_free.json", "--seed", "3", "--out", path], capsys)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_report_echo_round_trips(capsys, tmp_path):
    from reeslab.io import parse_module_spec
    from reeslab.modules import invariant_tuple
    _, out, _ = run(["rees", DATA / "xy_plus_free.json", "--json"], capsys)
    echoed = json.loads(out)["module"]
    again = parse_module_spec(json.dumps(echoed)).module
    orig = parse_module_spec((DATA / "xy_plus_free.json").read_bytes()).module
    assert invariant_tuple(again) == invariant_tuple(orig)


def test_sq_max_lists_quadric(capsys):
    code, out, _ = run(["rees", DATA / "sq_max_ideal.json", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert "T2^2 - T1*T3" in rep["results"]["rees_ideal"]
    assert rep["results"]["linear_type"] is False


def test_other_commands(capsys):
    code, out, _ = run(["fiber", DATA / "sq_max_ideal.json", "--json"], capsys)
    assert code == 0 and json.loads(out)["results"]["reduction_number"] == 1
    code, out, _ = run(["powers", DATA / "ideal_xy.json", "--upto", "3", "--json"], capsys)
    assert code == 0 and json.loads(out)["results"]["powers"]["3"]["generators"] == 4
    code, out, _ = run(["residual", DATA / "ideal_xyz.json", "-s", "3", "--an", "--json"], capsys)
    assert code == 0 and json.loads(out)["results"]["AN"]["status"] == "verified"
    code, out, _ = run(["check", "--theorem", "P3.5", "--json"], capsys)
    assert code == 0


def test_timing_is_opt_in(capsys):
    _, out, _ = run(["rees", DATA / "ideal_xy.json", "--json"], capsys)
    assert "timing" not in json.loads(out)
    _, out, _ = run(["rees", DATA / "ideal_xy.json", "--json", "--timing"], capsys)
    assert "rees" in json.loads(out)["timing"]


def test_gallery_filtered(capsys):
    code, out, _ = run(["gallery", "--filter", "P2.1", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert "CONTRADICTION" not in rep["results"]["counts"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "reeslab.cli", "rees", str(DATA / "ideal_xy.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "y*T1 - x*T2" in proc.stdout
