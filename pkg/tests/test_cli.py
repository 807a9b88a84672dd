import io
import json
import subprocess
import sys

import jsonschema
import pytest

from bgkit.cli import ENV_BUDGET, OUTPUT_SCHEMA, run


def call(*argv, environ=None):
    out = io.StringIO()
    code = run(list(argv), out, environ if environ is not None else {})
    return code, out.getvalue()


def call_json(*argv, environ=None):
    code, text = call("--json", *argv, environ=environ)
    assert code == 0
    rec = json.loads(text)
    jsonschema.validate(rec, OUTPUT_SCHEMA)
    return rec


def test_is_id_pinch():
    assert call("is-id", "t^-1 x t y^-1") == (0, "true\n")


def test_is_id_false():
    assert call("is-id", "x t") == (0, "false\n")


def test_compose():
    assert call("aut", "compose", "1/2", "1/4") == (0, "3/4\n")


def test_reduce_identity():
    assert call("reduce", "1") == (0, "1 (t-length 0)\n")


def test_reduce_reports_t_length():
    code, text = call("reduce", "t x t^-1 y")
    assert code == 0
    assert text.endswith("(t-length 2)\n")


def test_eval_h():
    code, text = call("eval-h", "y^-1 x y")
    assert code == 0
    assert text == "(2, 0) = x^2\n"


def test_psi():
    assert call("psi", "y x^3 y^-1") == (0, "3/2\n")
    assert call("psi", "y") == (0, "NotInCentralizer\n")


def test_invert_negative_needs_separator():
    assert call("aut", "invert", "--", "-3/8") == (0, "3/8\n")
    assert call("aut", "invert", "5/2^3") == (0, "-5/8\n")


def test_aut_std_and_apply():
    code, text = call("aut", "std", "1/2")
    assert code == 0
    assert text.splitlines()[0] == "x -> x"
    code, text = call("aut", "apply", "3", "t^-1 x t y^-1")
    assert (code, text) == (0, "1 (t-length 0)\n")


def test_conj_certificate():
    code, text = call("conj", "y^3", "y^12")
    assert code == 0
    assert "conjugate: true" in text
    assert "start conj=" in text and "end conj=" in text


def test_conj_negative_answers_exit_zero():
    code, text = call("conj", "x^3", "x^5")
    assert code == 0 and "conjugate: false" in text
    code, text = call("conj", "x", "t x t^-1 y")
    assert code == 0 and "conjugate: false" in text


def test_classify_kinds():
    code, text = call("classify", "--x", "x", "--y", "y", "--t", "y x^3 y^-1 t")
    assert code == 0
    assert text.splitlines()[:2] == ["kind: aut", "out_class: 3/2"]
    code, text = call("classify", "--x", "1", "--y", "1", "--t", "t x")
    assert (code, text.splitlines()[0]) == (0, "kind: degenerate")
    code, text = call("classify", "--x", "x", "--y", "x", "--t", "t")
    assert (code, text.splitlines()[0]) == (0, "kind: not_hom")


@pytest.mark.parametrize(
    "argv",
    [
        ("is-id", "x^"),
        ("reduce", "x y z"),
        ("eval-h", "x t"),
        ("aut", "compose", "0.5", "1"),
        ("aut", "invert", "1/3"),
        ("--bit-budget", "10", "reduce", "x"),
    ],
)
def test_syntax_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_budget_exceeded_exit_3():
    assert call("--bit-budget", "64", "reduce", "y^-70 x y^70")[0] == 3


def test_env_budget_and_flag_precedence():
    word = "y^-70 x y^70"
    assert call("reduce", word, environ={ENV_BUDGET: "64"})[0] == 3
    assert call("--bit-budget", "128", "reduce", word, environ={ENV_BUDGET: "64"})[0] == 0
    rec = call_json("reduce", "x", environ={ENV_BUDGET: "100"})
    assert rec["budget_bits"] == 100


def test_flags_after_subcommand():
    rec = call_json("reduce", "x", "--bit-budget", "200")
    assert rec["budget_bits"] == 200


@pytest.mark.parametrize(
    "argv",
    [
        ("reduce", "t x t^-1"),
        ("is-id", "t^-1 x t y^-1"),
        ("eval-h", "y x"),
        ("psi", "x^4"),
        ("psi", "y"),
        ("conj", "y^3", "y^12"),
        ("conj", "x^3", "x^5"),
        ("conj", "t x", "x t"),
        ("classify", "--x", "x", "--y", "y", "--t", "x t"),
        ("classify", "--x", "1", "--y", "1", "--t", "t"),
        ("classify", "--x", "y", "--y", "y", "--t", "t"),
        ("aut", "std", "--", "-1/4"),
        ("aut", "apply", "1", "t"),
        ("aut", "compose", "1/2", "1/4"),
        ("aut", "invert", "7"),
    ],
)
def test_json_matches_schema(argv):
    rec = call_json(*argv)
    assert rec["command"].split()[0] == argv[0]


def test_json_and_text_agree():
    rec = call_json("classify", "--x", "x", "--y", "y", "--t", "y x^3 y^-1 t")
    assert rec["result"] == "aut" and rec["out_class"] == "3/2"
    rec = call_json("reduce", "t x t^-1 y")
    assert rec["t_length"] == 2
    assert call("reduce", "t x t^-1 y")[1] == f"{rec['result']} (t-length 2)\n"


def test_output_is_deterministic():
    argv = ["--json", "conj", "x^3", "y^24"]
    first = call(*argv)
    assert all(call(*argv) == first for _ in range(3))


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bgkit", "aut", "compose", "1/2", "1/4"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "3/4\n"
