import json
import subprocess
import sys

import pytest

from nltrace.cli import main

KH_JSON = '{"kind":"explicit","values":[0,1,1],"tail":{"mode":"constant","value":3}}'
STEP_JSON = '{"kind":"step","x":[2],"y":[1,4]}'
P_JSON = '{"segments":[{"value":1.0,"mass":1.3333333333333333}],"cap":null}'
Q_JSON = '{"segments":[{"value":0.0,"mass":1.3333333333333333},{"value":1.0,"mass":1.3333333333333333}],"cap":null}'
DIAG = '{"n":4,"re":[[5,0,0,0],[0,4,0,0],[0,0,3,0],[0,0,0,2]]}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


def test_weight_check(capsys):
    code, out, _ = run(capsys, "weight", "check", "--weight", '{"kind":"power","theta":2}')
    assert code == 0 and out == {"concave": False, "doubling_sup": 4.0}
    code, out, _ = run(capsys, "weight", "check", "--weight", KH_JSON)
    assert out == {"concave": False, "doubling_sup": 3.0}


def test_stepop_sum_of_projections(capsys):
    code, out, _ = run(capsys, "stepop", "choquet", "--stepop", P_JSON, "--stepop", Q_JSON, "--weight", STEP_JSON)
    assert code == 0 and out == {"value": 4.0}
    code, out, _ = run(capsys, "stepop", "stieltjes", "--stepop", P_JSON, "--weight", STEP_JSON)
    assert out == {"value": 1.0}


@pytest.mark.parametrize("op, expected", [("sugeno", 1.0), ("maxtype", 1.0), ("lorentz", 4 / 3)])
def test_stepop_ops(capsys, op, expected):
    code, out, _ = run(capsys, "stepop", op, "--stepop", P_JSON, "--weight", '{"kind":"cap","t":2}')
    assert code == 0 and out["value"] == pytest.approx(expected, rel=1e-15)


def test_stepop_approx_and_witness(capsys):
    a = '{"segments":[{"value":2.0,"mass":0.5}],"cap":1}'
    w = '{"kind":"power","theta":1,"domain":"unit"}'
    code, out, _ = run(capsys, "stepop", "approx", "--stepop", a, "--weight", w, "--M", "8")
    assert code == 0 and out["value"] == 1.0
    code, out, _ = run(capsys, "stepop", "witness", "--stepop", a, "--weight", w)
    assert code == 0 and out["passed"] and out["suite"] == "min-witness"


def test_matrix_commands(capsys):
    assert run(capsys, "eig", "--matrix", DIAG)[1] == {"eigenvalues": [5.0, 4.0, 3.0, 2.0]}
    assert run(capsys, "sv", "--matrix", '{"n":2,"re":[[0,-2],[1,0]]}')[1] == {"singular_values": [2.0, 1.0]}
    assert run(capsys, "choquet", "--matrix", DIAG, "--weight", KH_JSON)[1] == {"value": 11.0}
    assert run(capsys, "pnorm", "--matrix", DIAG, "--weight", '{"kind":"power","theta":1}', "--p", "2")[1]["value"] \
        == pytest.approx(54 ** 0.5)
    p = '{"n":4,"re":[[1,0,0,0],[0,1,0,0],[0,0,0,0],[0,0,0,0]]}'
    q = '{"n":4,"re":[[0,0,0,0],[0,0,0,0],[0,0,1,0],[0,0,0,1]]}'
    assert run(capsys, "ratio", "--matrix", p, "--matrix", q, "--weight", KH_JSON)[1] == {"ratio": 1.5}
    assert run(capsys, "sugeno", "--matrix", DIAG, "--weight", '{"kind":"power","theta":1}')[1] == {"value": 3.0}
    assert run(capsys, "metric", "--matrix", DIAG, "--matrix", DIAG, "--weight", '{"kind":"power","theta":0.5}')[1] \
        == {"value": 0.0}


def test_fuzzy_commands(capsys):
    mu = '{"n":2,"mu":{"0b01":0.5,"0b10":0.25,"0b11":1.0}}'
    assert run(capsys, "integrate", "choquet", "--measure", mu, "--function", '{"f":[3,1]}')[1] == {"value": 2.0}
    assert run(capsys, "integrate", "sugeno", "--measure", mu, "--function", '{"f":[3,1]}')[1] == {"value": 1.0}
    assert run(capsys, "comonotone", "--function", '{"f":[1,2]}', "--function", '{"f":[2,1]}')[1] \
        == {"comonotone": False}


def test_file_inputs_and_out(tmp_path, capsys):
    wfile = tmp_path / "w.json"
    wfile.write_text(KH_JSON)
    mfile = tmp_path / "m.json"
    mfile.write_text(DIAG)
    out = tmp_path / "o.json"
    code = main(["choquet", "--matrix", str(mfile), "--weight", str(wfile), "--out", str(out)])
    assert code == 0 and json.loads(out.read_text()) == {"value": 11.0}
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("argv", [
    ["eig", "--matrix", "missing.json"],
    ["eig", "--matrix", "{bad json"],
    ["eig"],
    ["eig", "--matrix", '{"n":2,"re":[[0,1],[0,0]]}'],
    ["ratio", "--matrix", DIAG, "--weight", KH_JSON],
    ["metric", "--matrix", DIAG, "--matrix", DIAG, "--weight", '{"kind":"power","theta":2}'],
    ["stepop", "sugeno", "--stepop", P_JSON, "--weight", STEP_JSON],
    ["suite", "nope"],
    ["falsify", "--weight", KH_JSON, "--dims", "x-y"],
])
def test_input_errors_exit_2(capsys, argv):
    code = main(argv)
    err = capsys.readouterr().err
    assert code == 2
    assert err.startswith("nltrace: error:") and err.count("\n") == 1


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["nosuchcommand"])
    assert info.value.code == 2


def test_suite_exit_codes_and_bytes(capsys):
    code = main(["suite", "prop-stieltjes", "--seed", "42", "--trials", "300"])
    first = capsys.readouterr().out
    assert code == 0
    main(["suite", "prop-stieltjes", "--seed", "42", "--trials", "300", "--workers", "2"])
    assert capsys.readouterr().out == first
    code, out, _ = run(capsys, "falsify", "--weight", KH_JSON, "--dims", "2-4", "--trials", "10", "--seed", "1")
    assert code == 1 and out["worst"] >= 1.5 and out["witness"] is not None


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("NLTRACE_SEED", "77")
    code, out, _ = run(capsys, "suite", "weyl", "--trials", "5")
    assert code == 0 and out["seed"] == 77
    monkeypatch.setenv("NLTRACE_SEED", "abc")
    assert main(["suite", "weyl", "--trials", "5"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nltrace", "weight", "check", "--weight",
                           '{"kind":"power","theta":2}'], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == '{"concave": false, "doubling_sup": 4.0}\n'
