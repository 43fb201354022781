from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pycosat
import pytest

from qlattice.cli import EXIT_INPUT, EXIT_OK, EXIT_SCOPE, EXIT_UNSAT, main
from qlattice.datasets import builtin_dataset
from qlattice.io import ray_system_to_json
from qlattice.ks import parse_cnf
from qlattice.reports import AxiomReport, BCReport, KSReport, LawReport, ValuationReport

INPUTS = Path(__file__).resolve().parent.parent / "inputs"
GENERIC, EIGEN = str(INPUTS / "state-generic3.json"), str(INPUTS / "state-eigen3.json")
DIAG, DEGEN = str(INPUTS / "obs-diag3.json"), str(INPUTS / "obs-degenerate3.json")


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- exit codes -------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv, code",
    [
        (["ks-verify", "--builtin", "dim2-control"], EXIT_OK),
        (["ks-verify", "--builtin", "peres33-core"], EXIT_OK),
        (["ks-verify", "--builtin", "cabello18"], EXIT_UNSAT),
        (["ks-verify", "--builtin", "peres33"], EXIT_UNSAT),
        (["ks-verify", "--builtin", "lisonek21"], EXIT_UNSAT),
        (["ks-verify", "--builtin", "no-such-set"], EXIT_INPUT),
        (["ks-verify"], EXIT_INPUT),
        (["ks-verify", str(INPUTS / "bad-context.json")], EXIT_INPUT),
        (["bc", GENERIC, DIAG], EXIT_OK),
        (["bc", GENERIC, DEGEN, "--frame"], EXIT_SCOPE),
        (["bc", str(INPUTS / "prop-e1.json"), DIAG], EXIT_INPUT),
        (["laws", "--trials", "20"], EXIT_OK),
        (["laws", "--trials", "5", "--dims", "0"], EXIT_INPUT),
        (["datasets", "list"], EXIT_OK),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_bad_context_message(capsys):
    code, _, err = run(capsys, "ks-verify", str(INPUTS / "bad-context.json"))
    assert code == EXIT_INPUT
    assert "bad-context.json:5: context 1: has 1 rays, expected 2" in err


def test_axioms_exit_codes(capsys, tmp_path):
    assert run(capsys, "axioms", "--builtin", "dim2-control")[0] == EXIT_OK
    assert run(capsys, "axioms", "--builtin", "cabello18")[0] == EXIT_OK


def test_dimension_mismatch_between_state_and_observable(capsys, tmp_path):
    state = tmp_path / "s.json"
    state.write_text('{"vector": [1, 0]}')
    code, _, err = run(capsys, "bc", str(state), DIAG)
    assert code == EXIT_INPUT
    assert "dimension" in err


# -- ks-verify output -------------------------------------------------------------------


def test_ks_text_output(capsys):
    code, out, _ = run(capsys, "ks-verify", "--builtin", "dim2-control")
    assert code == EXIT_OK
    assert "SAT" in out


def test_ks_cnf_file_matches_solver(capsys, tmp_path):
    cnf = tmp_path / "cabello.cnf"
    assert run(capsys, "ks-verify", "--builtin", "cabello18", "--cnf", str(cnf))[0] == EXIT_UNSAT
    nvars, clauses = parse_cnf(cnf.read_text())
    assert nvars == 18
    assert pycosat.solve(clauses) == "UNSAT"


def test_ks_from_file(capsys, tmp_path):
    path = tmp_path / "lisonek.json"
    path.write_text(json.dumps(ray_system_to_json(builtin_dataset("lisonek21"))))
    code, out, _ = run(capsys, "--json", "ks-verify", str(path))
    assert code == EXIT_UNSAT
    assert json.loads(out)["result"] == "UNSAT"


# -- JSON reports ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv, cls",
    [
        (["ks-verify", "--builtin", "dim2-control"], KSReport),
        (["ks-verify", "--builtin", "cabello18"], KSReport),
        (["bc", GENERIC, DIAG, "--frame"], BCReport),
        (["bc", EIGEN, DEGEN], BCReport),
        (["valuate", GENERIC, DIAG, str(INPUTS / "prop-110.json")], ValuationReport),
        (["valuate", GENERIC, DEGEN, str(INPUTS / "prop-e1.json")], ValuationReport),
        (["axioms", "--builtin", "dim2-control"], AxiomReport),
        (["laws", "--trials", "30"], LawReport),
    ],
)
def test_json_round_trip(capsys, argv, cls):
    _, out, _ = run(capsys, *argv, "--json")
    data = json.loads(out)
    report = cls.from_json(data)
    assert report.to_json() == data
    assert cls.from_json(report.to_json()) == report


@pytest.mark.parametrize(
    "argv",
    [
        ["ks-verify", "--builtin", "peres33"],
        ["bc", GENERIC, DIAG, "--frame"],
        ["valuate", GENERIC, DIAG, str(INPUTS / "prop-110.json")],
        ["laws", "--trials", "50", "--seed", "7"],
    ],
)
@pytest.mark.parametrize("json_flag", [True, False])
def test_repeated_runs_are_byte_identical(capsys, argv, json_flag):
    extra = ["--json"] if json_flag else []
    first = run(capsys, *argv, *extra)
    second = run(capsys, *argv, *extra)
    assert first == second


def test_json_flag_position_does_not_matter(capsys):
    before = run(capsys, "--json", "ks-verify", "--builtin", "cabello18")
    after = run(capsys, "ks-verify", "--builtin", "cabello18", "--json")
    assert before == after
    json.loads(before[1])


def test_seed_flag_position_does_not_matter(capsys):
    a = json.loads(run(capsys, "--seed", "1", "laws", "--trials", "10", "--json")[1])
    b = json.loads(run(capsys, "laws", "--trials", "10", "--json", "--seed", "1")[1])
    assert a == b
    assert a["seed"] == 1


def test_valuation_report_contents(capsys):
    _, out, _ = run(capsys, "--json", "valuate", GENERIC, DIAG, str(INPUTS / "prop-110.json"))
    data = json.loads(out)
    assert data["global"] == "INDETERMINATE"
    assert [v["verdict"] for v in data["verdicts"]] == ["UNDECIDABLE-IN-CONTEXT"] * 3
    assert data["expectation"]["equal"] is True


def test_valuation_of_an_atom(capsys):
    _, out, _ = run(capsys, "--json", "valuate", GENERIC, DIAG, str(INPUTS / "prop-e1.json"))
    data = json.loads(out)
    assert [v["verdict"] for v in data["verdicts"]] == ["TRUE", "FALSE", "FALSE"]


def test_bc_frame_has_eight_events(capsys):
    _, out, _ = run(capsys, "--json", "bc", GENERIC, DIAG, "--frame")
    data = json.loads(out)
    assert len(data["frame"]) == 8
    assert len(data["homs"]) == 3


def test_datasets_list(capsys):
    code, out, _ = run(capsys, "datasets", "list", "--json")
    names = [d["name"] for d in json.loads(out)["datasets"]]
    assert code == EXIT_OK
    assert names == ["peres33", "peres33-core", "cabello18", "lisonek21", "dim2-control"]


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "qlattice.cli", "ks-verify", "--builtin", "cabello18"],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_UNSAT
    assert proc.stdout
