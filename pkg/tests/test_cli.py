import json

import pytest

from qsys import checks, cli
from qsys.errors import NotDivisible


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--r", "2", "--alpha", "1", "--n", "2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["positive"] is True and obj["seed"]["m"] == [0, 0]


def test_compute_all_ones_table(capsys):
    code, out, _ = run(capsys, "--format", "json", "compute", "--seed", "0", "--all-ones", "--nmax", "5")
    assert code == 0
    assert json.loads(out)["all_ones"]["1"] == {"0": 1, "1": 1, "2": 2, "3": 5, "4": 13, "5": 34}


def test_json_output_is_deterministic(capsys):
    argv = ("verify", "--suite", "bmatrix", "--suite", "conserved", "--r", "2", "--format", "json")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0


@pytest.mark.parametrize("argv", [
    ("compute", "--seed", "0,2"),
    ("compute", "--r", "3", "--seed", "0,0"),
    ("compute", "--r", "2"),
    ("compute", "--r", "2", "--alpha", "4", "--n", "0"),
    ("paths", "--order", "99"),
    ("verify", "--suite", "nope"),
    ("frobnicate",),
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_order_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("QSYS_MAX_ORDER", "4")
    assert run(capsys, "paths", "--order", "5")[0] == 2
    assert run(capsys, "paths", "--order", "4")[0] == 0


def test_failed_check_exits_1(capsys, monkeypatch):
    monkeypatch.setitem(checks.SUITES, "conserved", lambda r, **kw: [checks.Check("forced", False, "x")])
    code, out, _ = run(capsys, "verify", "--suite", "conserved")
    assert code == 1 and "FAIL" in out


def test_internal_error_exits_3(capsys, monkeypatch):
    def boom(r, **kw):
        raise NotDivisible("forced")
    monkeypatch.setitem(checks.SUITES, "conserved", boom)
    code, _, err = run(capsys, "verify", "--suite", "conserved")
    assert code == 3 and "NotDivisible" in err


@pytest.mark.parametrize("argv", [
    ("weights", "--seed", "0,1,1"),
    ("paths", "--seed", "1,0", "--n", "2"),
    ("paths", "--r", "2", "--emit", "dot"),
    ("tilings", "--domain", "iha", "--n", "2", "--alpha", "2"),
    ("tilings", "--domain", "deformed", "--seed", "0,1", "--n", "2"),
    ("tilings", "--n", "2", "--emit", "svg"),
    ("enumerate", "--family", "catalan", "--order", "8"),
    ("enumerate", "--family", "phi", "--r", "3", "--growth"),
    ("enumerate", "--family", "mu1", "--order", "8"),
    ("seeds", "--r", "3"),
])
def test_commands_succeed(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out


def test_svg_to_file(capsys, tmp_path):
    target = tmp_path / "t.svg"
    assert run(capsys, "tilings", "--n", "2", "--emit", "svg", "--out", str(target))[0] == 0
    assert target.read_text().startswith("<svg")


def test_plot_option(capsys, tmp_path):
    pytest.importorskip("matplotlib")
    target = tmp_path / "seq.png"
    assert run(capsys, "enumerate", "--family", "schroeder", "--plot", str(target))[0] == 0
    assert target.stat().st_size > 0
