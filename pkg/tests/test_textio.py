import pytest

from modalsim.formulas import (
    And,
    BLLogic,
    Bottom,
    Box,
    CCLogic,
    Diamond,
    Or,
    Top,
    formula_text,
)
from modalsim.systems import action, actions, cv, ct, lts, mts, signature
from modalsim.terms import MustPrefix, Omega, Prefix, Sum, Zero, term_text
from modalsim.textio import (
    ParseError,
    parse_formula,
    parse_label,
    parse_system,
    parse_system_details,
    parse_term,
    print_system,
)

A = action("a")
B = action("b")


def err(text, strict=False):
    with pytest.raises(ParseError) as info:
        parse_system_details(text, strict=strict)
    return info.value


def test_parse_with_comments_and_repeats():
    text = """
# a tiny spec
mts demo
actions: a
actions: b   # repeats accumulate
states: s "wait here"
init: s
may: s a "wait here"   # trailing comment
may: "wait here" b s
must: s a "wait here"
"""
    parsed = parse_system_details(text)
    assert parsed.name == "demo"
    assert parsed.warnings == ()
    system = parsed.system
    assert system.actions == actions("a", "b")
    assert system.states == frozenset({"s", "wait here"})
    assert system.may == frozenset(
        {("s", A, "wait here"), ("wait here", B, "s")}
    )
    assert system.must == frozenset({("s", A, "wait here")})


def test_quoted_states_round_trip_with_escapes():
    awkward = 'say "hi"\\now'
    system = mts([awkward, "s"], ["a"], [("s", "a", awkward)], [], "s")
    text = print_system(system, name=awkward)
    again = parse_system_details(text)
    assert again.system == system
    assert again.name == awkward
    assert again.warnings == ()


def test_canonical_print_is_sorted_and_quoted():
    system = lts(
        states=["b state", "a"],
        sig=signature(cov=["z", "a"], con=["m"]),
        transitions=[("b state", "z", "a"), ("a", "a", "a")],
        init="b state",
    )
    assert print_system(system, name="x") == (
        'lts x\n'
        "cov: a z\n"
        "con: m\n"
        'states: a "b state"\n'
        'init: "b state"\n'
        "trans: a a a\n"
        'trans: "b state" z a\n'
    )


def test_must_twin_repair_and_strict_mode():
    text = "mts m\nactions: a\nstates: s t\ninit: s\nmust: s a t\n"
    parsed = parse_system_details(text)
    assert parsed.warnings == (
        "line 5: must transition s a t has no may twin; adding it",
    )
    assert parsed.system.may == frozenset({("s", A, "t")})
    assert parsed.system.must == parsed.system.may

    failure = err(text, strict=True)
    assert failure.line == 5
    assert failure.col == 9
    assert "has no may twin" in failure.message


def test_error_positions():
    e = err('mts m\nstates: "abc\ninit: s\n')
    assert (e.line, e.col) == (2, 9)
    assert e.message == "unterminated quote"

    e = err('mts m\nstates: "a\\x"\ninit: s\n')
    assert e.line == 2
    assert "unknown escape" in e.message

    e = err("actions: a\n")
    assert (e.line, e.col) == (1, 1)
    assert "header" in e.message

    e = err("mts m\nactions: a\nstates: s\n")
    assert e.message == "missing init: directive"

    e = err("mts m extra\n")
    assert (e.line, e.col) == (1, 7)

    e = err("mts m\nstates: s\ninit: s\ninit: s\n")
    assert e.message == "init: was already given"

    e = err("mts m\nstates: s t\ninit: s t\n")
    assert "exactly one state" in e.message

    e = err("mts m\nactions: a\nstates: s\ninit: s\ntrans: s a s\n")
    assert (e.line, e.col) == (5, 1)
    assert "not valid in a mts file" in e.message

    e = err("lts l\ncov: a\ncon: a\nstates: s\ninit: s\n")
    assert (e.line, e.col) == (3, 6)
    assert "more than one signature class" in e.message

    e = err('mts m\nactions: a\nstates: s\ninit: s\nmay: s "a" s\n')
    assert e.message == "labels cannot be quoted"

    e = err("mts m\nactions: a\nstates: s\ninit: t\n")
    assert e.message == "undeclared state 't'"

    e = err("mts m\nactions: a\nstates: s\ninit: s\nmay: s b s\n")
    assert e.message == "undeclared label b"

    e = err("mts m\nactions: a\nstates: s\ninit: s\nmay: s a\n")
    assert "exactly three operands" in e.message

    e = err("mts m\nactions: a\nstates: s\ninit: s\nbogus: s\n")
    assert "unknown directive" in e.message


def test_parse_label_structure():
    assert parse_label("a") == A
    assert parse_label("cv(a)") == cv(A)
    assert parse_label("cv(ct(b))") == cv(ct(B))
    with pytest.raises(ParseError):
        parse_label("a b")
    with pytest.raises(ParseError):
        parse_label("cv(a")
    with pytest.raises(ParseError):
        parse_label("(a)")


def test_formula_parsing_and_precedence():
    assert parse_formula("tt & ff | tt") == Or(And(Top(), Bottom()), Top())
    assert parse_formula("tt | ff & tt") == Or(Top(), And(Bottom(), Top()))
    assert parse_formula("(tt | ff) & tt") == And(Or(Top(), Bottom()), Top())
    assert parse_formula("<a>[b]ff") == Diamond(A, Box(B, Bottom()))
    assert parse_formula("[cv(a)]tt") == Box(cv(A), Top())

    for text in ("<a>", "tt &", "tt tt", "a", "<a]tt", ""):
        with pytest.raises(ParseError):
            parse_formula(text)


def test_formula_well_formedness_hook():
    contra_only = CCLogic(signature(con=["a"]))
    assert parse_formula("[a]ff", logic=contra_only) == Box(A, Bottom())
    with pytest.raises(ValueError):
        parse_formula("<a>tt", logic=contra_only)
    assert parse_formula("<a>tt", logic=BLLogic(actions("a"))) == Diamond(A, Top())


def test_formula_text_round_trip():
    for text in (
        "tt",
        "ff & tt",
        "(tt | ff) & tt",
        "<a>(tt | ff)",
        "[ct(b)][a]ff",
        "tt | ff | tt",
    ):
        assert formula_text(parse_formula(text)) == text


def test_term_parsing():
    assert parse_term("0") == Zero()
    assert parse_term("w") == Omega()
    assert parse_term("a.0 + b!w") == Sum(
        Prefix(A, Zero()), MustPrefix(B, Omega())
    )
    assert parse_term("a.(0 + w)") == Prefix(A, Sum(Zero(), Omega()))
    assert parse_term("cv(a).0", kind="lts") == Prefix(cv(A), Zero())

    with pytest.raises(ParseError):
        parse_term("a!0", kind="lts")
    with pytest.raises(ParseError):
        parse_term("a")
    with pytest.raises(ParseError):
        parse_term("0.a")
    with pytest.raises(ParseError):
        parse_term("w!0")
    with pytest.raises(ValueError):
        parse_term("0", kind="nonsense")


def test_term_text_round_trip():
    for text in ("0", "w", "a.0 + b!w", "a!(0 + w)", "ct(a).w"):
        assert term_text(parse_term(text)) == text


def test_system_print_parse_round_trip():
    ccex = lts(
        states=["p", "q", "r", "s"],
        sig=signature(cov=["a"], con=["b"]),
        transitions=[
            ("p", "a", "s"),
            ("p", "b", "s"),
            ("q", "a", "s"),
            ("r", "b", "s"),
        ],
        init="p",
    )
    text = print_system(ccex, "ccex")
    again = parse_system_details(text)
    assert again.system == ccex
    assert again.name == "ccex"
    assert print_system(again.system, again.name) == text
