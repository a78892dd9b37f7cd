import io
import json
import subprocess
import sys

import pytest

from modalsim.charform import characteristic_formula, encode_term
from modalsim.cli import main
from modalsim.formulas import formula_text
from modalsim.selfcheck import property_ids
from modalsim.systems import action
from modalsim.terms import term_text
from modalsim.textio import parse_system, parse_term, print_system
from modalsim.translate import decorate_by_class, lts_of_mts, mts_of_lts

UNIVERSAL = "mts universal\nactions: a\nstates: u\ninit: u\nmay: u a u\n"
DEMANDING = "mts demanding\nactions: a\nstates: m\ninit: m\nmay: m a m\nmust: m a m\n"
CCEX = (
    "lts ccex\ncov: a\ncon: b\nstates: p q r s\ninit: p\n"
    "trans: p a s\ntrans: p b s\ntrans: q a s\ntrans: r b s\n"
)
VENDING = (
    "mts vending\nactions: coin tea\nstates: idle paid served\ninit: idle\n"
    "may: idle coin paid\nmay: paid coin paid\nmay: paid tea served\n"
    "may: served coin paid\nmust: idle coin paid\nmust: paid tea served\n"
)
LOOP_A = "lts loop_a\ncov: a\ncon: b\nstates: p\ninit: p\ntrans: p a p\n"
LOOP_AB = "lts loop_ab\ncov: a\ncon: b\nstates: q\ninit: q\ntrans: q a q\ntrans: q b q\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_refine_related(files, capsys):
    u = files("u.mts", UNIVERSAL)
    m = files("m.mts", DEMANDING)
    code, out, err = run(capsys, "check", "refine", u, m)
    assert (code, out, err) == (0, "related\n", "")


def test_check_refine_unrelated_reports_a_witness(files, capsys):
    u = files("u.mts", UNIVERSAL)
    m = files("m.mts", DEMANDING)
    code, out, _ = run(capsys, "check", "refine", m, u, "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["kind"] == "refine"
    assert payload["related"] is False
    assert payload["left_state"] == "m"
    assert payload["right_state"] == "u"
    witness = payload["distinguishing_formula"]
    assert witness is not None
    # The witness holds at the left state and fails at the right one.
    assert run(capsys, "mc", m, "m", witness)[0] == 0
    assert run(capsys, "mc", u, "u", witness)[0] == 1


def test_check_ccsim_with_explicit_states(files, capsys):
    path = files("ccex.lts", CCEX)
    code, out, _ = run(
        capsys, "check", "ccsim", path, path, "--left-state", "r", "--right-state", "p"
    )
    assert (code, out) == (0, "related\n")
    code, out, _ = run(
        capsys, "check", "ccsim", path, path, "--left-state", "q", "--right-state", "p"
    )
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "not related"
    assert lines[1].startswith("distinguishing formula: ")


def test_check_pbsim_depends_on_the_bisimset(files, capsys):
    p = files("p.lts", "lts p\ncov: a b\nstates: p\ninit: p\ntrans: p a p\n")
    q = files("q.lts", "lts q\ncov: a b\nstates: q\ninit: q\ntrans: q a q\ntrans: q b q\n")
    assert run(capsys, "check", "pbsim", p, q)[0] == 0
    assert run(capsys, "check", "pbsim", p, q, "--bisimset", "a")[0] == 0
    assert run(capsys, "check", "pbsim", p, q, "--bisimset", "a,b")[0] == 1
    code, _, err = run(capsys, "check", "pbsim", p, q, "--bisimset", "z")
    assert code == 2
    assert err.startswith("error:")


def test_check_kind_mismatch_is_an_error(files, capsys):
    path = files("ccex.lts", CCEX)
    code, _, err = run(capsys, "check", "refine", path, path)
    assert code == 2
    assert "refine compares two mts files" in err


def test_check_unknown_state_is_an_error(files, capsys):
    u = files("u.mts", UNIVERSAL)
    code, _, err = run(capsys, "check", "refine", u, u, "--left-state", "zz")
    assert code == 2
    assert "'zz' is not a state of the left system" in err


def test_translate_m_matches_the_library(files, capsys):
    path = files("ccex.lts", CCEX)
    code, out, _ = run(capsys, "translate", "m", path)
    assert code == 0
    assert out == print_system(mts_of_lts(parse_system(CCEX)))


def test_translate_c_json_report(files, capsys):
    path = files("vending.mts", VENDING)
    code, out, _ = run(capsys, "translate", "c", path, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["op"] == "c"
    assert payload["kind"] == "lts"
    assert payload["text"] == print_system(lts_of_mts(parse_system(VENDING)))
    assert payload["report"]["added_state"] is None
    assert ["coin", "cv(coin)"] in payload["report"]["label_map"]


def test_translate_n_marks_must_labels(files, capsys):
    path = files("plain.lts", "lts plain\ncov: a b\nstates: s\ninit: s\ntrans: s a s\ntrans: s b s\n")
    code, out, _ = run(capsys, "translate", "n", path, "--bisimset", "a")
    assert code == 0
    parsed = parse_system(out)
    assert parsed.must == frozenset({("s", action("a"), "s")})
    assert len(parsed.may) == 2


def test_translate_round_trip_through_files(files, capsys):
    original = parse_system(VENDING)
    encoded_path = files("encoded.lts", print_system(lts_of_mts(original)))
    code, out, _ = run(capsys, "translate", "cinv", encoded_path)
    assert code == 0
    assert parse_system(out) == original

    plain = files("plain.lts", CCEX)
    code, _, err = run(capsys, "translate", "cinv", plain)
    assert code == 2
    assert "error:" in err


def test_translate_rho_needs_a_target_for_lts_input(files, capsys):
    base_text = "lts base\ncov: a\ncon: b\nstates: s\ninit: s\ntrans: s a s\n"
    base = parse_system(base_text)
    decorated_path = files("decorated.lts", print_system(decorate_by_class(base)))
    code, _, err = run(capsys, "translate", "rho", decorated_path)
    assert code == 2
    assert "--like" in err

    like = files("base.lts", base_text)
    code, out, _ = run(capsys, "translate", "rho", decorated_path, "--like", like)
    assert code == 0
    assert parse_system(out) == base


def test_translate_reads_stdin(files, capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(VENDING))
    code, out, _ = run(capsys, "translate", "c", "-")
    assert code == 0
    assert out == print_system(lts_of_mts(parse_system(VENDING)))


def test_mc_exit_codes(files, capsys):
    path = files("vending.mts", VENDING)
    assert run(capsys, "mc", path, "idle", "<coin>tt")[:2] == (0, "true\n")
    assert run(capsys, "mc", path, "idle", "[coin]<tea>tt")[0] == 0
    assert run(capsys, "mc", path, "idle", "<tea>tt")[:2] == (1, "false\n")

    code, out, _ = run(capsys, "mc", path, "idle", "<coin>tt", "--format", "json")
    assert code == 0
    assert json.loads(out) == {
        "state": "idle",
        "formula": "<coin>tt",
        "holds": True,
    }

    assert run(capsys, "mc", path, "zz", "tt")[0] == 2
    code, _, err = run(capsys, "mc", path, "idle", "<zz>tt")
    assert code == 2
    assert "error:" in err
    assert run(capsys, "mc", path, "idle", "<coin>")[0] == 2


def test_charform_output(files, capsys):
    result = characteristic_formula(parse_term("a!0"), frozenset({"a"}))
    code, out, _ = run(capsys, "charform", "a!0", "--cc")
    assert code == 0
    assert out.splitlines() == [
        f"term: {term_text(result.term)}",
        "actions: a",
        f"formula: {formula_text(result.formula)}",
        f"simplified: {formula_text(result.simplified)}",
        f"encoded term: {term_text(encode_term(result.term))}",
        "encoded formula: <cv(a)>[ct(a)]ff & [ct(a)][ct(a)]ff",
    ]
    assert out.splitlines()[2] == "formula: <a>[a]ff & [a][a]ff"

    code, out, _ = run(capsys, "charform", "0", "--actions", "a,b", "--format", "json")
    assert code == 0
    assert json.loads(out) == {
        "term": "0",
        "actions": "a b",
        "formula": "[a]ff & [b]ff",
        "simplified": "[a]ff & [b]ff",
    }

    assert run(capsys, "charform", "a!")[0] == 2


def test_selfcheck_list_and_subset(capsys):
    code, out, _ = run(capsys, "selfcheck", "--list")
    assert code == 0
    assert out.splitlines() == property_ids()

    code, out, _ = run(
        capsys,
        "selfcheck",
        "--cases",
        "3",
        "--property",
        "systems.validate-accepts-generated",
    )
    assert code == 0
    assert "result: ok (1 properties: 1 pass)" in out
    assert "\x1b[" not in out

    code, _, err = run(capsys, "selfcheck", "--property", "no.such.id")
    assert code == 2
    assert "unknown properties" in err


def test_missing_file_is_reported(capsys):
    code, _, err = run(capsys, "check", "refine", "/no/such/file.mts", "-")
    assert code == 2
    assert err.startswith("error: cannot read")


def test_selfcheck_subprocess_is_deterministic():
    cmd = [
        sys.executable,
        "-m",
        "modalsim",
        "selfcheck",
        "--cases",
        "5",
        "--max-states",
        "3",
        "--format",
        "json",
    ]
    one = subprocess.run(cmd, capture_output=True, text=True)
    two = subprocess.run(cmd, capture_output=True, text=True)
    assert one.returncode == 0
    assert one.stdout == two.stdout
    payload = json.loads(one.stdout)
    assert payload["ok"] is True
    assert payload["config"]["cases"] == 5
