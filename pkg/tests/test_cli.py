import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bsfix.cli import main, run
from bsfix.group import parse_element
from bsfix.morphisms import parse_morphism
from bsfix.ring import Base

GOLDEN = Path(__file__).parent / "golden"

# name, argv, exit code
GOLDEN_CASES = [
    ("fix_affine", ["--n", "2", "fix", "[2; 1]"], 0),
    ("fix_affine_json", ["--n", "2", "--json", "fix", "[2; 1]"], 0),
    ("eval_word", ["--n", "2", "eval", "t a T"], 0),
    ("stab_lattice", ["--n", "2", "stab", "(1; 2)"], 0),
    ("root", ["--n", "2", "root", "(3; 2)", "--k", "2"], 0),
    ("fix_malformed", ["--n", "2", "fix", "[1; 0"], 2),
    ("verify_word", ["--n", "6", "verify", "word", "--seed", "7"], 0),
    ("verify_stab", ["--n", "2", "verify", "stab", "--bound", "4"], 0),
    ("verify_fix", ["--n", "2", "verify", "fix", "--bound", "3"], 0),
]


@pytest.mark.parametrize("name, argv, code", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden(name, argv, code, capsys):
    assert main(argv) == code
    out = capsys.readouterr()
    assert (out.out + out.err).encode() == (GOLDEN / f"{name}.out").read_bytes()


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bsfix.cli", "--n", "2", "eval", "t a T"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "(1/2; 0)\n"


@pytest.mark.parametrize(
    "argv, code, expected",
    [
        (["--n", "2", "mul", "(1; 1)", "(3; 2)"], 0, "(7; 3)"),
        (["--n", "2", "pow", "(1; 1)", "--k", "3"], 0, "(7; 3)"),
        (["--n", "2", "inv", "(1; 1)"], 0, "(-1/2; -1)"),
        (["--n", "2", "root", "(1; 2)", "--k", "2"], 0, "none"),
        (["--n", "2", "rootclosure", "(21; 6)"], 0, "(1; 2) ^ 3"),
        (["--n", "2", "classify", "(3; 2)", "(1; 1)"], 0, "cyclic generator (1; 1)"),
        (["--n", "2", "classify", "(0; 1)", "(1; 0)"], 0,
         "finite_index t_part (0; 1) kernel_gen (1; 0)"),
        (["--n", "2", "apply", "[2; 1]", "(-1; 1)"], 0, "(-1; 1)"),
        (["--n", "2", "compose", "[2; 1]", "[2; 1]"], 0, "[4; 3]"),
        (["--n", "2", "per", "<<1; -1>>"], 0, "cyclic generator (-2; 1)"),
        (["--n", "2", "stab", "(0; 1)", "(1; 0)"], 0, "trivial"),
        (["--n", "2", "stab", "(5; 0)"], 0, "kernel_translations"),
        (["--n", "2", "estab", "(3; 2)"], 0, "type_i parametric coeff 1 tau 1; type_ii <<1; 1>>"),
        (["--n", "2", "cl", "(3; 2)"], 0, "cyclic generator (1; 1)"),
        (["--n", "2", "ecl", "(1; 2)"], 0, "cyclic generator (1; 2)"),
        (["--n", "2", "cl", "(0; 1)", "(1; 0)"], 0, "whole"),
        (["--n", "6", "stab", "(1; 1)"], 0, "lattice rank 2 generators [2; -1], [3; -2], [-1; 2]"),
    ],
)
def test_commands(argv, code, expected):
    assert run(argv) == (code, expected)


@pytest.mark.parametrize(
    "argv, code",
    [
        (["--n", "1", "eval", "a"], 2),
        (["eval", "a"], 2),
        (["--n", "2", "frobnicate"], 2),
        (["--n", "2", "verify", "nothing"], 2),
        (["--n", "2", "pow", "(1; 1)"], 2),
        (["--n", "2", "eval", "a b"], 2),
        (["--n", "2", "mul", "(1/3; 0)"], 2),
        (["--n", "2", "cl", "(0; 0)"], 3),
        (["--n", "2", "rootclosure", "(1; 0)"], 3),
        (["--n", "2", "stab", "(0; 0)"], 3),
        (["--n", "2", "compose", "<<1; 1>>", "[3; 0]"], 0),
        (["--n", "2", "pow", "(1; 1)", "--k", "-2"], 0),
        (["--n", "2", "root", "(1; 1)", "--k", "0"], 3),
    ],
)
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_parse_error_names_token_and_position():
    code, text = run(["--n", "2", "apply", "[2; x]", "(1; 1)"])
    assert code == 2
    assert "position 4" in text and "'x'" in text


def test_json_is_key_sorted():
    _, text = run(["--n", "2", "--json", "--verbose", "stab", "(1; 2)"])
    payload = json.loads(text)
    assert text == json.dumps(payload, sort_keys=True, separators=(",", ":"))
    assert payload["derivation"]["mu_prime"] == 3
    _, text = run(["--n", "2", "--json", "estab", "(3; 2)"])
    assert json.loads(text) == {
        "type_i": {"coeff": "1", "excluded_beta": "1", "tau": 1, "type": "parametric"},
        "type_ii": {"c": 1, "gamma": "1"},
    }


def test_verbose_fix_shows_derivation():
    _, text = run(["--n", "6", "--verbose", "fix", "[2/3; 1]"])
    head, tail = text.split("\n")
    assert head == "cyclic generator (3; 1)"
    assert json.loads(tail) == {"M": 5, "c0": 4, "c_tilde": 1, "kappa": "3/5", "q_core": -1}


def test_verify_json_report():
    code, text = run(["--n", "3", "--json", "verify", "roots", "--count", "20"])
    assert code == 0
    assert json.loads(text) == {"checked": 20, "mismatches": [], "subject": "roots"}
    assert run(["--n", "6", "verify", "closures", "--count", "20"])[0] == 0


def test_printed_literals_round_trip():
    b = Base(6)
    _, text = run(["--n", "6", "inv", "(5/6; 3)"])
    assert parse_element(text, b) ** -1 == parse_element("(5/6; 3)", b)
    _, text = run(["--n", "6", "compose", "[2; 1/6]", "[3; -1]"])
    assert parse_morphism(text, b).alpha == b(6)


@given(st.lists(st.text(alphabet="()[];<>/^-+ 0123456789atAT", max_size=10), max_size=3),
       st.sampled_from(["eval", "mul", "fix", "stab", "estab", "cl", "apply", "classify"]))
def test_never_panics(args, cmd):
    code, text = run(["--n", "6", cmd, *args])
    assert code in (0, 2, 3)
    assert isinstance(text, str)
