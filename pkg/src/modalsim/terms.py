"""Finite loop-free process terms and their transition-system expansions.

One AST covers both system kinds:

* read as an MTS term, ``Prefix`` is a may prefix (``a.t``) and
  ``MustPrefix`` a must prefix (``a!t``);
* read as an LTS term, ``Prefix`` is an ordinary prefix and ``MustPrefix``
  is rejected.

``Omega`` is the loosest process: expanded as an MTS it may loop on every
ambient action, expanded as an LTS it loops exactly on the contravariant
actions.  Expansion states are the canonically printed subterms reachable
from the root, so expanding equal terms always yields identical systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .systems import (
    Action,
    CCSignature,
    PointedLTS,
    PointedMTS,
    action,
    sorted_actions,
)


class Term:
    """Base class for process terms."""

    __slots__ = ()


@dataclass(frozen=True)
class Zero(Term):
    """The stopped process ``0``: no transitions at all."""


@dataclass(frozen=True)
class Omega(Term):
    """The loosest process ``w``."""


@dataclass(frozen=True)
class Prefix(Term):
    """``a.t``: a may prefix (MTS reading) or plain prefix (LTS reading)."""

    action: Action
    rest: Term


@dataclass(frozen=True)
class MustPrefix(Term):
    """``a!t``: a must prefix; only meaningful for MTS terms."""

    action: Action
    rest: Term


@dataclass(frozen=True)
class Sum(Term):
    """Binary choice ``t + t``."""

    left: Term
    right: Term


def prefix(a: Union[str, Action], rest: Term) -> Prefix:
    return Prefix(action(a), rest)


def must_prefix(a: Union[str, Action], rest: Term) -> MustPrefix:
    return MustPrefix(action(a), rest)


def term_text(t: Term) -> str:
    """Canonical concrete syntax; prefixes bind tighter than ``+``."""
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Omega):
        return "w"
    if isinstance(t, Prefix):
        return f"{t.action}.{_prefix_body(t.rest)}"
    if isinstance(t, MustPrefix):
        return f"{t.action}!{_prefix_body(t.rest)}"
    if isinstance(t, Sum):
        return f"{term_text(t.left)} + {term_text(t.right)}"
    raise TypeError(f"not a term: {t!r}")


def _prefix_body(t: Term) -> str:
    body = term_text(t)
    return f"({body})" if isinstance(t, Sum) else body


def term_labels(t: Term) -> frozenset[Action]:
    if isinstance(t, (Zero, Omega)):
        return frozenset()
    if isinstance(t, (Prefix, MustPrefix)):
        return frozenset({t.action}) | term_labels(t.rest)
    if isinstance(t, Sum):
        return term_labels(t.left) | term_labels(t.right)
    raise TypeError(f"not a term: {t!r}")


def is_lts_term(t: Term) -> bool:
    """True when ``t`` contains no must prefix."""
    if isinstance(t, (Zero, Omega)):
        return True
    if isinstance(t, Prefix):
        return is_lts_term(t.rest)
    if isinstance(t, MustPrefix):
        return False
    if isinstance(t, Sum):
        return is_lts_term(t.left) and is_lts_term(t.right)
    raise TypeError(f"not a term: {t!r}")


def summands(t: Term) -> list[Term]:
    """Flatten nested sums into their non-sum summands."""
    if isinstance(t, Sum):
        return summands(t.left) + summands(t.right)
    return [t]


def canonical_term(t: Term) -> Term:
    """A canonical representative of ``t`` modulo associativity and
    commutativity of ``+``: summands canonicalised recursively, sorted by
    their printed form and rebuilt as a left-nested chain."""
    if isinstance(t, (Zero, Omega)):
        return t
    if isinstance(t, Prefix):
        return Prefix(t.action, canonical_term(t.rest))
    if isinstance(t, MustPrefix):
        return MustPrefix(t.action, canonical_term(t.rest))
    if isinstance(t, Sum):
        parts = sorted((canonical_term(s) for s in summands(t)), key=term_text)
        out = parts[0]
        for part in parts[1:]:
            out = Sum(out, part)
        return out
    raise TypeError(f"not a term: {t!r}")


def _may_moves(t: Term, acts: list[Action]) -> list[tuple[Action, Term]]:
    if isinstance(t, Zero):
        return []
    if isinstance(t, Omega):
        return [(a, t) for a in acts]
    if isinstance(t, (Prefix, MustPrefix)):
        return [(t.action, t.rest)]
    if isinstance(t, Sum):
        return _may_moves(t.left, acts) + _may_moves(t.right, acts)
    raise TypeError(f"not a term: {t!r}")


def _must_moves(t: Term) -> list[tuple[Action, Term]]:
    if isinstance(t, (Zero, Omega, Prefix)):
        return []
    if isinstance(t, MustPrefix):
        return [(t.action, t.rest)]
    if isinstance(t, Sum):
        return _must_moves(t.left) + _must_moves(t.right)
    raise TypeError(f"not a term: {t!r}")


def expand_mts_term(t: Term, acts: Iterable[Union[str, Action]]) -> PointedMTS:
    """The sub-MTS of the universal MTS over ``acts`` reachable from ``t``.

    States are the canonically printed reachable subterms, so syntactically
    duplicate subterms share one state and ``w`` is a single shared state.
    """
    ambient = frozenset(action(a) for a in acts)
    stray = sorted_actions(term_labels(t) - ambient)
    if stray:
        raise ValueError(f"term labels {stray} are outside the ambient action set")
    loop_labels = sorted_actions(ambient)
    root = canonical_term(t)
    states: dict[str, Term] = {}
    may: set[tuple[str, Action, str]] = set()
    must: set[tuple[str, Action, str]] = set()
    queue = [root]
    while queue:
        node = queue.pop()
        name = term_text(node)
        if name in states:
            continue
        states[name] = node
        for a, nxt in _may_moves(node, loop_labels):
            may.add((name, a, term_text(nxt)))
            queue.append(nxt)
        for a, nxt in _must_moves(node):
            must.add((name, a, term_text(nxt)))
    return PointedMTS(
        states=frozenset(states),
        actions=ambient,
        may=frozenset(may),
        must=frozenset(must),
        init=term_text(root),
    )


def expand_lts_term(t: Term, sig: CCSignature) -> PointedLTS:
    """The sub-LTS of the universal LTS over ``sig`` reachable from ``t``.

    ``sig`` must have no bivariant actions; ``w`` loops exactly on the
    contravariant class.  Must prefixes are rejected.
    """
    if sig.bivariant:
        raise ValueError("LTS terms live over signatures without bivariant actions")
    if not is_lts_term(t):
        raise ValueError("must prefixes are not LTS term syntax")
    stray = sorted_actions(term_labels(t) - sig.actions)
    if stray:
        raise ValueError(f"term labels {stray} are outside the signature")
    loop_labels = sorted_actions(sig.contravariant)
    root = canonical_term(t)
    states: dict[str, Term] = {}
    trans: set[tuple[str, Action, str]] = set()
    queue = [root]
    while queue:
        node = queue.pop()
        name = term_text(node)
        if name in states:
            continue
        states[name] = node
        for a, nxt in _may_moves(node, loop_labels):
            trans.add((name, a, term_text(nxt)))
            queue.append(nxt)
    return PointedLTS(
        states=frozenset(states),
        signature=sig,
        transitions=frozenset(trans),
        init=term_text(root),
    )


def enumerate_terms(
    prefix_forms: Iterable[tuple[Union[str, Action], bool]],
    max_height: int,
) -> list[Term]:
    """Canonical representatives of every term of syntax-tree height at most
    ``max_height``, deduplicated modulo associativity and commutativity of
    ``+``.

    ``prefix_forms`` lists the available prefixes as (label, is_must) pairs;
    atoms (``0`` and ``w``) have height 1, prefixes and sums add one level.
    The raw tree count grows quadratically with each level, so this is meant
    for small bounds (height up to 3 or so).
    """
    forms = [(action(a), m) for a, m in prefix_forms]
    atoms: list[Term] = [Zero(), Omega()]
    level: list[Term] = list(atoms)
    for _ in range(max_height - 1):
        nxt: list[Term] = list(atoms)
        nxt.extend(
            MustPrefix(a, t) if m else Prefix(a, t) for a, m in forms for t in level
        )
        nxt.extend(Sum(x, y) for x in level for y in level)
        level = nxt
    seen: dict[str, Term] = {}
    for t in level:
        rep = canonical_term(t)
        seen.setdefault(term_text(rep), rep)
    return [seen[k] for k in sorted(seen)]


def enumerate_mts_terms(acts: Iterable[Union[str, Action]], max_height: int) -> list[Term]:
    labels = sorted_actions(action(a) for a in acts)
    forms = [(a, False) for a in labels] + [(a, True) for a in labels]
    return enumerate_terms(forms, max_height)


def enumerate_lts_terms(sig: CCSignature, max_height: int) -> list[Term]:
    if sig.bivariant:
        raise ValueError("LTS terms live over signatures without bivariant actions")
    forms = [(a, False) for a in sorted_actions(sig.actions)]
    return enumerate_terms(forms, max_height)
