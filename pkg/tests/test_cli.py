import csv
import json

import pytest

from chances.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_REJECTED, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_deviation_text_six_decimals(capsys):
    code, out, _ = run(capsys, "deviation", "--t", "0.4769363")
    assert code == EXIT_OK
    assert "P: 0.500000" in out


def test_table_stdout_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "table", "--step", "0.5", "--tmax", "1")
    assert out.splitlines() == ["t,P", "0.00,0.000000", "0.50,0.520500", "1.00,0.842701"]
    path = tmp_path / "t.csv"
    assert main(["table", "--step", "0.5", "--tmax", "1", "--csv", str(path)]) == EXIT_OK
    assert path.read_text().splitlines()[-1] == "1.00,0.842701"


def test_json_report_shape_and_digest(capsys):
    code, rep = run_json(capsys, "game", "ruin", "--alpha", "50", "--n", "1000")
    assert code == EXIT_OK
    assert set(rep) == {"command", "inputs", "inputs_digest", "outputs", "warnings"}
    assert rep["outputs"]["main"] == pytest.approx(0.113846, abs=1e-6)
    _, again = run_json(capsys, "game", "ruin", "--n", "1000", "--alpha", "50")
    assert again["inputs_digest"] == rep["inputs_digest"]


def test_global_flags_after_subcommand(capsys):
    code, rep = run_json(capsys, "game", "oscillation", "--P", "19999/20000")
    code2, out, _ = run(capsys, "game", "oscillation", "--P", "19999/20000", "--json")
    assert json.loads(out) == rep
    assert rep["outputs"]["exact"] == 222


def test_sim_is_seeded(capsys):
    args = ("sim", "--scheme", "strategy:martingale", "--replicates", "50000")
    _, a = run_json(capsys, "--seed", "0", *args)
    _, b = run_json(capsys, "--seed", "0", *args, "--workers", "4")
    assert a["outputs"] == b["outputs"]
    assert a["outputs"]["mean"] == pytest.approx(0.24, abs=0.01)
    assert a["outputs"]["se"] == pytest.approx(0.12, abs=0.01)


def test_sim_params(capsys):
    code, rep = run_json(capsys, "sim", "--scheme", "binomial", "--replicates", "1000",
                         "--param", "m=100", "--param", "p=0.5")
    assert code == EXIT_OK
    assert rep["inputs"]["params"] == {"m": 100, "p": 0.5}


@pytest.mark.parametrize("argv", [
    ["tribunal", "--a", "0.2"],
    ["deviation", "--P", "1.5"],
    ["sim", "--scheme", "nope", "--replicates", "10"],
    ["insure", "deficit", "--p", "0"],
])
def test_rejected_input_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_REJECTED
    assert err.startswith("error:")


def test_rejected_input_json(capsys):
    code, out, _ = run(capsys, "--json", "tribunal", "--a", "0.2")
    assert code == EXIT_REJECTED
    assert "error" in json.loads(out)


def test_jury_csv_by_category(capsys, tmp_path):
    path = tmp_path / "cats.csv"
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["label", "c1", "c2", "weight"])
        w.writerow(["persons", "0.5", "0.02", "0.4"])
        w.writerow(["property", "0.6", "0.03", "0.6"])
    code, rep = run_json(capsys, "jury", "--csv", str(path))
    assert code == EXIT_OK
    assert rep["outputs"]


def test_life_csv(capsys, tmp_path):
    path = tmp_path / "life.csv"
    path.write_text("age,survivors\n0,10000\n21,6000\n22,5900\n65,3000\n")
    code, rep = run_json(capsys, "life", "--csv", str(path), "--age", "21")
    assert code == EXIT_OK
    flat = json.dumps(rep["outputs"])
    assert "44" in flat


def test_sexratio_and_comets(capsys):
    code, _ = run_json(capsys, "sexratio", "--m", "23215333", "--n", "11962811")
    assert code == EXIT_OK
    code, rep = run_json(capsys, "comets", "--season", "winter")
    assert code == EXIT_OK


@pytest.mark.parametrize("argv", [
    ["law", "uniform"], ["compare", "--m1", "1000", "--n1", "520", "--fixed", "0.5"],
    ["means"], ["game", "petersburg"], ["game", "punter"], ["game", "passedix"],
    ["insure", "deficit"], ["insure", "boni"], ["insure", "poisson", "--mu", "3"],
    ["jury", "--c1", "0.6", "--c2", "0.03", "--N", "1000"],
    ["tribunal", "--unanimity", "0.6"], ["appeal", "--v", "0.686"],
    ["witness", "--v1", "0.9", "--v2", "0.8", "--v3", "0.7"],
    ["life"], ["life", "--exponential", "0.02"],
])
def test_subcommands_run(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert out.strip()


def test_reproduce_only_topic(capsys):
    code, out, _ = run(capsys, "reproduce", "--only", "table")
    assert code == EXIT_OK
    assert out.strip().endswith("3/3 checks passed")


def test_reproduce_failing_criterion_exits_nonzero(capsys):
    code, rep = run_json(capsys, "reproduce", "--only", "2")
    assert code == EXIT_CHECK_FAILED
    assert any(not c["passed"] for c in rep["outputs"])


def test_reproduce_comma_separated(capsys):
    code, rep = run_json(capsys, "reproduce", "--only", "table,games")
    assert {c["topic"] for c in rep["outputs"]} == {"table", "games"}


def test_insure_window_from_portfolio(capsys, tmp_path):
    path = tmp_path / "p.csv"
    path.write_text("count,value,risk\n1000,1.0,0.01\n500,2.0,0.02\n")
    code, rep = run_json(capsys, "insure", "window", "--csv", str(path))
    assert code == EXIT_OK
    code, _, _ = run(capsys, "insure", "window")
    assert code == EXIT_REJECTED


def test_money_printed_to_cents(capsys, tmp_path):
    path = tmp_path / "p.csv"
    path.write_text("count,value,risk\n1000,1.0,0.01\n500,2.0,0.02\n")
    code, rep = run_json(capsys, "insure", "allocate", "--csv", str(path), "--mu", "35")
    assert code == EXIT_OK
    assert rep["outputs"]["sum"] == "35.00"
    assert all(s.count(".") == 1 and len(s.split(".")[1]) == 2 for s in rep["outputs"]["shares"])
    _, rep = run_json(capsys, "insure", "boni")
    assert rep["outputs"]["centre"] == "5.00"
