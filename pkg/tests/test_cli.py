import io
import subprocess
import sys

import pytest

from dcoset.automata import isomorphic, parse_table
from dcoset.catalog import fixture_path, load_acceptor
from dcoset.cli import EXIT_ERROR, EXIT_OK, EXIT_PARTIAL, main
from dcoset.regex import parse_regex, regex_to_dfa
from dcoset.automata import dfa_equivalent


def fx(name):
    return str(fixture_path(name + ".pres"))


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_complete_free():
    code, text = run("complete", fx("free_a6_a4"))
    assert code == EXIT_OK
    assert "status: complete" in text
    assert "H a a K -> H K" in text


def test_complete_with_limit_is_partial():
    code, text = run("complete", fx("trefoil_dc"), "--limit", "3")
    assert code == EXIT_PARTIAL
    assert "status: partial" in text


def test_complete_logged_shows_logs():
    code, text = run("complete", fx("trefoil"), "--group", "--logged")
    assert code == EXIT_OK
    assert "y y x -> x y y" in text and "# a5^-1 x . xa5" in text


def test_reduce():
    code, text = run("reduce", fx("free_a6_a4"), "aaaaaaa", "AK")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "HaaaaaaaK -> HaK"


def test_reduce_logged():
    code, text = run("reduce", fx("trefoil_dc"), "yy", "--limit", "10", "--logged")
    assert text.startswith("HyyK -> HK  # ")


def test_decide_same_with_witness():
    code, text = run("decide", fx("trefoil_dc"), "Y", "id", "--limit", "10", "--witness")
    assert code == EXIT_OK
    assert text.splitlines() == ["SAME HK HK", "h = X^-1 x x ; k = y^-1"]


def test_decide_different_complete():
    code, text = run("decide", fx("free_a6_a4"), "a", "id")
    assert code == EXIT_OK
    assert text.strip() == "DIFFERENT HaK HK"


def test_decide_undecided_when_partial():
    code, text = run("decide", fx("free_a6_a4"), "a", "id", "--limit", "0")
    assert code == EXIT_PARTIAL
    assert text.startswith("UNDECIDED")


def test_acceptor_table_matches_reference(tmp_path):
    table = tmp_path / "acc.dfa"
    dot = tmp_path / "acc.dot"
    code, text = run("acceptor", fx("free_a6_a4"), "--table", str(table), "--dot", str(dot))
    assert code == EXIT_OK
    assert text.strip() == "states: nfa 22, determinized 24, minimal 15"
    d = parse_table(table.read_text())
    assert isomorphic(d, load_acceptor("free_a6_a4_minimal", d.alphabet))
    assert dot.read_text().startswith("digraph")


def test_acceptor_import(tmp_path):
    code, group_table = run("acceptor", fx("trefoil"), "--group")
    body = group_table.split("\n", 1)[1]
    path = tmp_path / "group.dfa"
    path.write_text(body)
    c1, plain = run("acceptor", fx("trefoil_dc"), "--limit", "10")
    c2, imported = run("acceptor", fx("trefoil_dc"), "--limit", "10", "--import-acceptor", str(path))
    d1 = parse_table(plain.split("\n", 1)[1])
    d2 = parse_table(imported.split("\n", 1)[1])
    assert dfa_equivalent(d1, d2)[0]


def test_regex_group():
    code, text = run("regex", fx("trefoil"), "--group")
    assert code == EXIT_OK
    alphabet = ("x", "X", "y", "Y")
    got = regex_to_dfa(parse_regex(text.strip(), alphabet), alphabet)
    _, table = run("acceptor", fx("trefoil"), "--group")
    assert dfa_equivalent(got, parse_table(table.split("\n", 1)[1]))[0]


def test_enum_s3():
    code, text = run("enum", fx("s3"), "--maxlen", "5")
    assert code == EXIT_OK
    assert text.splitlines() == ["HK", "HtsK", "counts: 1 0 1 0 0 0"]


def test_verify_passes():
    code, text = run("verify", fx("s3"), "--maxlen", "6")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert len(lines) == 5 and all(ln.startswith("PASS") for ln in lines)


def test_output_is_deterministic():
    assert run("complete", fx("trefoil_dc"), "--limit", "10", "--logged") == \
        run("complete", fx("trefoil_dc"), "--limit", "10", "--logged")


@pytest.mark.parametrize("argv", [
    ["reduce", "missing.pres", "a"],
    ["reduce", "FIXTURE", "q"],
    ["decide", "FIXTURE", "a"],
    ["reduce", "FIXTURE"],
])
def test_errors_exit_one(argv, capsys):
    argv = [fx("free_a6_a4") if a == "FIXTURE" else a for a in argv]
    assert run(*argv)[0] == EXIT_ERROR
    assert "dcoset: error:" in capsys.readouterr().err


def test_bad_arguments_exit_usage():
    with pytest.raises(SystemExit) as exc:
        run("complete", fx("s3"), "--limit", "-1")
    assert exc.value.code == 2


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "dcoset.cli", "enum", fx("s3"), "--maxlen", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "counts: 1 0 1"
