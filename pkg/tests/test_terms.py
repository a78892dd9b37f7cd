import random

import pytest
from hypothesis import given, strategies as st

from modalsim.sampling import lts_term_forms, mts_term_forms, random_term
from modalsim.systems import action, signature
from modalsim.terms import (
    MustPrefix,
    Omega,
    Prefix,
    Sum,
    Zero,
    canonical_term,
    enumerate_lts_terms,
    enumerate_mts_terms,
    expand_lts_term,
    expand_mts_term,
    must_prefix,
    prefix,
    term_labels,
    term_text,
)

A = action("a")
B = action("b")


def test_term_text_basic_shapes():
    assert term_text(Zero()) == "0"
    assert term_text(Omega()) == "w"
    assert term_text(prefix("a", Zero())) == "a.0"
    assert term_text(must_prefix("a", Omega())) == "a!w"
    assert term_text(Sum(prefix("a", Zero()), prefix("b", Zero()))) == "a.0 + b.0"


def test_term_text_parenthesises_sums_under_prefixes():
    t = prefix("a", Sum(Zero(), Omega()))
    assert term_text(t) == "a.(0 + w)"
    deeper = must_prefix("b", t)
    assert term_text(deeper) == "b!a.(0 + w)"


def test_canonical_term_sorts_summands():
    messy = Sum(prefix("b", Zero()), Sum(prefix("a", Zero()), prefix("b", Zero())))
    tidy = canonical_term(messy)
    assert term_text(tidy) == "a.0 + b.0 + b.0"
    assert canonical_term(tidy) == tidy


def test_term_labels_collects_prefix_actions():
    t = Sum(prefix("a", must_prefix("b", Zero())), Omega())
    assert term_labels(t) == frozenset({A, B})


def test_expand_mts_term_merges_duplicate_targets():
    """A may and a must prefix to the same rest share a single may edge."""
    t = Sum(prefix("a", Zero()), must_prefix("a", Zero()))
    expansion = expand_mts_term(t, frozenset({A}))
    init = expansion.init
    assert init == "a!0 + a.0"
    assert expansion.states == frozenset({init, "0"})
    assert expansion.may == frozenset({(init, A, "0")})
    assert expansion.must == frozenset({(init, A, "0")})


def test_expand_mts_term_omega_loops_on_every_action():
    expansion = expand_mts_term(Omega(), frozenset({A, B}))
    assert expansion.states == frozenset({"w"})
    assert expansion.may == frozenset({("w", A, "w"), ("w", B, "w")})
    assert expansion.must == frozenset()


def test_expand_lts_term_omega_loops_on_contravariant_only():
    sig = signature(cov=["a"], con=["b"])
    expansion = expand_lts_term(Omega(), sig)
    assert expansion.transitions == frozenset({("w", B, "w")})


def test_expand_lts_term_rejects_must_prefixes_and_bivariant_labels():
    with pytest.raises(ValueError):
        expand_lts_term(must_prefix("a", Zero()), signature(cov=["a"]))
    with pytest.raises(ValueError):
        expand_lts_term(Zero(), signature(bi=["a"]))


def test_enumerate_mts_terms_height_two_single_label():
    terms = enumerate_mts_terms(frozenset({A}), 2)
    assert [term_text(t) for t in terms] == [
        "0",
        "0 + 0",
        "0 + w",
        "a!0",
        "a!w",
        "a.0",
        "a.w",
        "w",
        "w + w",
    ]


def test_enumerate_lts_terms_have_no_must_prefixes():
    sig = signature(cov=["a"], con=["b"])
    for t in enumerate_lts_terms(sig, 2):
        assert not isinstance(t, MustPrefix)
        for lab in term_labels(t):
            assert lab in sig.actions


def test_enumeration_is_sorted_and_deduplicated():
    terms = enumerate_mts_terms(frozenset({A}), 3)
    texts = [term_text(t) for t in terms]
    assert texts == sorted(texts)
    assert len(texts) == len(set(texts))
    assert all(canonical_term(t) == t for t in terms)


@given(st.integers(min_value=0, max_value=10**6))
def test_random_mts_terms_expand_to_valid_systems(seed):
    rng = random.Random(seed)
    acts = frozenset({A, B})
    t = random_term(rng, mts_term_forms(acts), 4)
    expansion = expand_mts_term(t, acts)
    assert expansion.init == term_text(canonical_term(t))
    for src, lab, dst in expansion.must:
        assert (src, lab, dst) in expansion.may


@given(st.integers(min_value=0, max_value=10**6))
def test_random_lts_terms_expand_inside_their_signature(seed):
    rng = random.Random(seed)
    sig = signature(cov=["a"], con=["b"])
    t = random_term(rng, lts_term_forms(sig), 4)
    expansion = expand_lts_term(t, sig)
    for _, lab, _ in expansion.transitions:
        assert lab in sig.actions
