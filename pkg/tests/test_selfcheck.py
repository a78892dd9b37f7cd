import json

import pytest

from modalsim.selfcheck import (
    SCHEMA,
    PropertyReport,
    SelfCheckConfig,
    SelfCheckReport,
    _PropertyDef,
    _REGISTRY,
    property_ids,
    run_property,
    run_selfcheck,
)

QUICK = SelfCheckConfig(cases=8, max_states=3)

EXPECTED_FAIL_IDS = {
    "charform.literal-prefix-clause-fails",
    "translate.approximation-complete-unguarded",
}


def test_registry_contents():
    ids = property_ids()
    assert ids == sorted(ids)
    assert len(ids) == len(set(ids))
    assert len(ids) >= 50
    assert EXPECTED_FAIL_IDS <= set(ids)
    prefixes = {pid.split(".", 1)[0] for pid in ids}
    assert prefixes == {
        "charform",
        "formulas",
        "institutions",
        "preorders",
        "sampling",
        "systems",
        "terms",
        "textio",
        "translate",
    }


def test_quick_run_is_green():
    report = run_selfcheck(QUICK)
    assert report.ok
    assert report.schema == SCHEMA
    assert len(report.properties) == len(property_ids())
    for item in report.properties:
        if item.property_id in EXPECTED_FAIL_IDS:
            assert item.status == "expected-fail"
            assert item.failures
        else:
            assert item.status == "pass"
            assert item.failures == ()


def test_selected_subset_and_unknown_ids():
    config = SelfCheckConfig(cases=5, properties=("systems.validate-accepts-generated",))
    report = run_selfcheck(config)
    assert [p.property_id for p in report.properties] == [
        "systems.validate-accepts-generated"
    ]
    assert report.config["properties"] == ["systems.validate-accepts-generated"]
    with pytest.raises(ValueError):
        run_selfcheck(SelfCheckConfig(properties=("no.such.property",)))
    with pytest.raises(ValueError):
        run_property("no.such.property", QUICK)


def test_json_output_is_stable_and_parses():
    one = run_selfcheck(QUICK).to_json()
    two = run_selfcheck(QUICK).to_json()
    assert one == two
    payload = json.loads(one)
    assert payload["schema"] == SCHEMA
    assert payload["seed"] == 42
    assert payload["ok"] is True
    assert payload["config"]["cases"] == 8
    by_id = {p["id"]: p for p in payload["properties"]}
    assert set(by_id) == set(property_ids())
    assert all(p["cases"] >= 1 for p in payload["properties"])
    # Different seeds change the run but not the shape.
    other = run_selfcheck(SelfCheckConfig(seed=7, cases=8, max_states=3))
    assert json.loads(other.to_json())["seed"] == 7
    assert other.ok


def test_status_mapping_for_a_failing_property():
    def bad(config, rng):
        return 1, ["it broke"]

    def good(config, rng):
        return 1, []

    _REGISTRY["zz.test-bad"] = _PropertyDef("zz.test-bad", bad)
    _REGISTRY["zz.test-good-but-expected-bad"] = _PropertyDef(
        "zz.test-good-but-expected-bad", good, expect_fail=True
    )
    try:
        report = run_property("zz.test-bad", QUICK)
        assert report.status == "fail"
        assert not report.ok
        assert report.failures == ("it broke",)

        surprise = run_property("zz.test-good-but-expected-bad", QUICK)
        assert surprise.status == "unexpected-pass"
        assert not surprise.ok

        whole = run_selfcheck(
            SelfCheckConfig(properties=("zz.test-bad", "zz.test-good-but-expected-bad"))
        )
        assert not whole.ok
        assert "result: FAILED" in whole.to_text()
    finally:
        del _REGISTRY["zz.test-bad"]
        del _REGISTRY["zz.test-good-but-expected-bad"]


def test_text_rendering():
    report = SelfCheckReport(
        schema=SCHEMA,
        seed=3,
        config={"cases": 1},
        properties=(
            PropertyReport("x.alpha", "pass", 4, ()),
            PropertyReport("x.beta", "fail", 4, ("first line\nsecond line",)),
        ),
    )
    text = report.to_text()
    assert text.splitlines() == [
        "selfcheck seed=3",
        "[pass] x.alpha  cases=4",
        "[fail] x.beta  cases=4",
        "    first line",
        "    second line",
        "result: FAILED (2 properties: 1 fail, 1 pass)",
    ]
    assert "\x1b[" not in text
    colored = report.to_text(color=True)
    assert "\x1b[32m[pass]\x1b[0m" in colored
    assert "\x1b[31m[fail]\x1b[0m" in colored


def test_duplicate_registration_is_rejected():
    from modalsim.selfcheck import prop

    with pytest.raises(ValueError):
        prop("systems.validate-accepts-generated")(lambda config, rng: (1, []))
