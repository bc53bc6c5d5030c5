"""Front-end tests: grammar, printing, configuration and exit codes."""

import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qhyper.cli import SessionConfig, run_command
from qhyper.parser import DIALECTS, ParseError, dumps, parse, to_json, to_text, tokenize
from qhyper.qalgebra import uq
from qhyper.scalars import QParams

QP = QParams()


def test_parse_examples():
    assert parse("K*E - q^2*E*K", "uq", QP).is_zero()
    assert parse("a*d - q*b*c", "slq2", QP) == parse("1", "slq2", QP)
    U = uq(QP)
    assert parse("F*E", "uq", QP) == U.generator("F") * U.generator("E")
    assert parse("K^-2 * K^2", "uq", QP) == U.one()
    assert parse("3/4 * E", "uq", QP) == U.generator("E").scale(Fraction(3, 4))


@pytest.mark.parametrize("text, where", [
    ("(", (1, 1)),
    ("E +", (1, 4)),
    ("E ** F", (1, 4)),
    ("E\n  + %", (2, 5)),
    ("(E + F", (1, 1)),
    ("E)", (1, 2)),
])
def test_parse_error_positions(text, where):
    with pytest.raises(ParseError) as err:
        parse(text, "uq", QP)
    assert (err.value.line, err.value.col) == where


def test_parse_rejections():
    with pytest.raises(ParseError, match="unknown identifier"):
        parse("a", "uq", QP)
    with pytest.raises(ParseError, match="exceeds"):
        parse("E^10001", "uq", QP)
    with pytest.raises(ParseError, match="scalar"):
        parse("E / F", "uq", QP)
    with pytest.raises(ParseError, match="non-invertible"):
        parse("E^-1", "uq", QP)
    with pytest.raises(ParseError, match="division by zero"):
        parse("E / 0", "uq", QP)
    with pytest.raises(ValueError):
        parse("E", "nonsense", QP)


def test_tokens_carry_positions():
    toks = tokenize("K_-^2 *\n E")
    assert [(t.kind, t.text, t.line, t.col) for t in toks] == [
        ("ident", "K_-", 1, 1), ("op", "^", 1, 4), ("int", "2", 1, 5), ("op", "*", 1, 7),
        ("ident", "E", 2, 2), ("end", "", 2, 3)]


GENS = {"uq": ["E", "F", "K", "K^-1"], "breve": ["E", "F", "K", "K^-1"],
        "double": ["E", "F", "K", "K^-1", "K_-", "K_-^-1"], "slq2": ["a", "b", "c", "d"],
        "skew": ["z", "K", "K^-1"]}


@st.composite
def expressions(draw, dialect):
    terms = []
    for _ in range(draw(st.integers(1, 3))):
        word = draw(st.lists(st.sampled_from(GENS[dialect]), min_size=1, max_size=3))
        num = draw(st.integers(-9, 9))
        den = draw(st.integers(1, 9))
        terms.append(f"{num}/{den}*" + "*".join(word))
    return " + ".join(terms)


@pytest.mark.parametrize("dialect", DIALECTS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_print_parse_round_trip(dialect, data):
    x = parse(data.draw(expressions(dialect)), dialect, QP)
    assert parse(to_text(x), dialect, QP) == x


def test_json_is_stable():
    x = parse("F*E + 2*K^-1", "uq", QP)
    a = dumps(to_json(x))
    assert a == dumps(to_json(parse("2*K^-1 + F*E", "uq", QP)))
    assert json.loads(a)["variant"] == "standard"


def test_worked_examples():
    assert run_command(["norm", "--nuprime", "E^3"]) == (0, "5^3")
    assert run_command(["pair", "E", "c"]) == (0, "1")
    assert run_command(["quotient", "K - K_-"]) == (0, "0")
    assert run_command(["normalize", "-d", "slq2", "a*d - q*b*c"]) == (0, "1")


def test_weierstrass_commands():
    code, out = run_command(["wdiv", "z^2", "z - 5/3"])
    assert code == 0
    assert out.splitlines()[:3] == ["q = (5/3) + (1)*z", "r = (25/9)", "residual = 0"]
    code, out = run_command(["wprep", "z - 5"])
    assert code == 0 and out.startswith("w = (-5) + (1)*z")


def test_exit_codes():
    assert run_command(["normalize", "("])[0] == 2
    assert run_command(["wdiv", "z", "5*z"])[0] == 1
    assert run_command(["--eK", "1", "delta", "K"])[0] == 1
    assert run_command(["check", "factorial"])[0] == 0
    assert run_command(["check", "routes"])[0] == 3


def test_doublemul_engines_agree():
    a = run_command(["doublemul", "F*E^2", "E*F"])
    b = run_command(["doublemul", "--engine", "relations", "F*E^2", "E*F"])
    assert a == b and a[0] == 0


def test_json_output_is_deterministic():
    runs = {run_command(["--json", "delta", "E*F"]) for _ in range(3)}
    assert len(runs) == 1
    code, out = runs.pop()
    assert code == 0
    json.loads(out)


def test_config_layering(tmp_path):
    cfg = tmp_path / "session.conf"
    cfg.write_text("# comment\np = 7\nu = 8\neE = 2\n")
    assert run_command(["--config", str(cfg), "nu", "E"]) == (0, "7^2")
    env = {"QHYPER_EE": "3"}
    assert run_command(["--config", str(cfg), "nu", "E"], env=env) == (0, "7^3")
    assert run_command(["--config", str(cfg), "--eE", "1", "nu", "E"], env=env) == (0, "7^1")
    jcfg = tmp_path / "session.json"
    jcfg.write_text(json.dumps({"p": 3, "u": "4"}))
    assert run_command(["--config", str(jcfg), "nu", "F"]) == (0, "3^1")


def test_bad_configuration():
    code, _ = run_command(["nu", "E"], env={"QHYPER_U": "2"})
    assert code == 1
    assert SessionConfig().qparams() == QP


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qhyper", "pair", "F", "b"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1"
