"""End-to-end runs of the command line front end."""

import json
import pathlib

import pytest

from edesolver import cli, systems
from edesolver.fsa import Automaton

SPECS = pathlib.Path(__file__).resolve().parent.parent / "demos" / "specs"

THETA_EQ = str(SPECS / "theta_n_plus_theta.json")
ZERO_EQ = str(SPECS / "zero_eq.json")
ONE_EQ = str(SPECS / "one_eq.json")
EVEN_N = str(SPECS / "even_n.json")
TWO_EQS = str(SPECS / "two_equations.json")
COMPANION = str(SPECS / "companion_power.json")
COMPANION3 = str(SPECS / "companion_n3.json")

ALL_SPECS = [THETA_EQ, ZERO_EQ, ONE_EQ, EVEN_N, TWO_EQS, COMPANION, COMPANION3]


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -------------------------------------------------------------------- build

def test_build_zero_equation_is_one_accepting_state(capsys):
    code, out, _ = run(capsys, "build", ZERO_EQ)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["states"]) == 1
    assert doc["states"][0]["final"] is True


def test_build_one_equation_has_no_reachable_final(capsys):
    code, out, _ = run(capsys, "build", ONE_EQ)
    assert code == 0
    doc = json.loads(out)
    finals = {s["id"] for s in doc["states"] if s["final"]}
    assert finals == set()


def test_build_dot_output(capsys):
    code, out, _ = run(capsys, "build", ZERO_EQ, "--out", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert "doublecircle" in out


def test_build_theta_equation_language(capsys):
    code, out, _ = run(capsys, "build", THETA_EQ)
    assert code == 0
    doc = json.loads(out)
    aut = _from_json(doc)
    from edesolver.digits import DigitWord

    assert not aut.accepts(DigitWord(2, 1, ()))
    assert aut.accepts(DigitWord(2, 1, ((1,),)))
    assert aut.accepts(DigitWord(2, 1, ((1,), (0,), (0,))))
    assert not aut.accepts(DigitWord(2, 1, ((1,), (1,))))
    assert not aut.accepts(DigitWord(2, 1, ((0,), (1,))))


def _from_json(doc):
    n = len(doc["states"])
    table = [[0] * (doc["p"] ** doc["t"]) for _ in range(n)]
    from edesolver.digits import alphabet

    letters = list(alphabet(doc["p"], doc["t"]))
    for tr in doc["transitions"]:
        table[tr["from"]][letters.index(tuple(tr["letter"]))] = tr["to"]
    finals = {s["id"] for s in doc["states"] if s["final"]}
    labels = [s["label"] for s in doc["states"]]
    return Automaton(doc["p"], doc["t"], labels, table, doc["initial"], finals)


def test_build_is_byte_deterministic(capsys):
    outputs = set()
    for _ in range(2):
        _, out, _ = run(capsys, "build", EVEN_N)
        outputs.add(out)
    assert len(outputs) == 1


# -------------------------------------------------------------------- check

def test_check_solution(capsys):
    code, out, _ = run(capsys, "check", THETA_EQ, "--tuple", "1")
    assert code == 0
    assert out.strip() == "solution"


def test_check_non_solution(capsys):
    code, out, _ = run(capsys, "check", THETA_EQ, "--tuple", "2")
    assert code == 1
    assert out.strip() == "not a solution"


def test_check_zero_tuple(capsys):
    code, out, _ = run(capsys, "check", ZERO_EQ, "--tuple", "0")
    assert code == 0


def test_check_tuple_arity(capsys):
    code, _, err = run(capsys, "check", THETA_EQ, "--tuple", "1,2")
    assert code == 2
    assert "t=1" in err


def test_check_tuple_syntax(capsys):
    code, _, err = run(capsys, "check", THETA_EQ, "--tuple", "one")
    assert code == 2
    code, _, _ = run(capsys, "check", THETA_EQ, "--tuple", "-3")
    assert code == 2


# --------------------------------------------------------------------- enum

def test_enum_theta(capsys):
    code, out, _ = run(capsys, "enum", THETA_EQ, "--max-len", "4")
    assert code == 0
    assert out.split() == ["1"]


def test_enum_unsolvable_prints_nothing(capsys):
    code, out, _ = run(capsys, "enum", ONE_EQ)
    assert code == 0
    assert out == ""


def test_enum_even_numbers(capsys):
    code, out, _ = run(capsys, "enum", EVEN_N, "--max-len", "4")
    assert code == 0
    assert out.split() == ["0", "2", "4", "6", "8", "10", "12", "14"]


def test_enum_intersection(capsys):
    code, out, _ = run(capsys, "enum", TWO_EQS, "--max-len", "4")
    assert code == 0
    assert out.split() == ["0"]


# ------------------------------------------------------------------- verify

@pytest.mark.parametrize("spec", ALL_SPECS)
def test_verify_bundled_specs(capsys, spec):
    code, out, _ = run(capsys, "verify", spec)
    assert code == 0
    doc = json.loads(out)
    assert doc["mismatches"] == []


def test_verify_detects_a_corrupted_build(capsys, monkeypatch):
    real = systems.solve_system

    def corrupted(spec, state_cap=None):
        aut = real(spec) if state_cap is None else real(spec, state_cap)
        return Automaton(
            aut.p, aut.t, aut.labels, aut.transitions, aut.initial,
            set(range(aut.num_states)) - set(aut.finals),
        )

    monkeypatch.setattr(systems, "solve_system", corrupted)
    code, out, _ = run(capsys, "verify", THETA_EQ)
    assert code == 1
    assert json.loads(out)["mismatches"]


# ----------------------------------------------------------------- solvable

def test_solvable(capsys):
    assert run(capsys, "solvable", ONE_EQ)[0] == 1
    assert run(capsys, "solvable", ZERO_EQ)[0] == 0
    code, out, _ = run(capsys, "solvable", THETA_EQ)
    assert code == 0
    assert out.strip() == "yes"


# ------------------------------------------------------------ error handling

def test_missing_file(capsys):
    code, _, err = run(capsys, "build", str(SPECS / "missing.json"))
    assert code == 2
    assert "error:" in err


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "build", str(bad))
    assert code == 2
    assert ":1:" in err  # line/column diagnostics


def test_field_diagnostics(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": 2, "r": 1, "t": 1, "equations": [{"summands": [{"Q": "1:"}]}]}')
    code, _, err = run(capsys, "build", str(bad))
    assert code == 2
    assert "equations[0].summands[0]" in err


def test_non_prime_modulus(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": 6, "r": 1, "t": 1, "equations": []}')
    code, _, err = run(capsys, "build", str(bad))
    assert code == 2
    assert ".p" in err


def test_state_cap_flag(capsys):
    code, _, err = run(capsys, "build", THETA_EQ, "--state-cap", "2")
    assert code == 3
    assert "capacity" in err


def test_state_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("EDE_STATE_CAP", "2")
    assert run(capsys, "build", THETA_EQ)[0] == 3
    # explicit flag wins over the environment
    assert run(capsys, "build", THETA_EQ, "--state-cap", "100")[0] == 0
    monkeypatch.setenv("EDE_STATE_CAP", "bogus")
    assert run(capsys, "build", THETA_EQ)[0] == 2


def test_enum_word_cap(capsys, monkeypatch):
    monkeypatch.setattr(cli, "ENUM_WORD_CAP", 5)
    code, _, err = run(capsys, "enum", THETA_EQ, "--max-len", "4")
    assert code == 3


# ------------------------------------------------------------------- module

def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "edesolver", "solvable", THETA_EQ],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "yes"
