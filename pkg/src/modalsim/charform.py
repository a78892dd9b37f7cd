"""Characteristic formulae for finite loop-free process terms.

For an MTS term ``t`` over an ambient alphabet ``A``, the characteristic
formula ``chi(t)`` pins ``t`` down up to refinement: ``t`` refines ``t2``
exactly when the expansion of ``t2`` satisfies ``chi(t)``.  The construction
recurses over two helpers, a set ``delta(t)`` of diamond obligations (one
``<a>chi(t')`` per must prefix reachable through sums) and a per-action
formula ``gamma_a(t)`` bounding what may happen after ``a``:

* ``delta(0) = {}``, ``gamma_a(0) = ff``
* ``delta(w) = {}``, ``gamma_a(w) = tt``
* ``delta(a.t) = {}``, ``gamma_a(a.t) = chi(t)`` and ``gamma_b(a.t) = ff``
  for ``b != a``
* ``delta(a!t) = {<a>chi(t)}``, ``gamma`` as for ``a.t``
* ``delta(t1+t2) = delta(t1) | delta(t2)``,
  ``gamma_a(t1+t2) = gamma_a(t1) | gamma_a(t2)``

and ``chi(t)`` conjoins ``delta(t)`` with ``[a]gamma_a(t)`` for every
ambient ``a``.  The prefix clause is sometimes stated as
``gamma_a(a.t) = gamma_a(t)``, which propagates the helper through the
prefix instead of switching to the characteristic formula of the
continuation; that variant breaks the characterisation already for ``a.0``
and is kept behind ``literal_prefix_clause`` purely to demonstrate the
failure.

A leaner equivalent shape is also computed: one diamond per must
transition of the expanded term, and one box per action whose may
successors are all distinguishable from ``w`` (for the others the box is a
tautology and is dropped).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .formulas import (
    Bottom,
    Box,
    Diamond,
    Formula,
    Or,
    Top,
    conj,
    disj,
    formula_text,
    simplify,
)
from .preorders import greatest_refinement
from .systems import Action, action, ct, cv, sorted_actions
from .terms import (
    MustPrefix,
    Omega,
    Prefix,
    Sum,
    Term,
    Zero,
    _may_moves,
    _must_moves,
    canonical_term,
    expand_mts_term,
    term_text,
)
from .translate import encode_formula


@dataclass(frozen=True)
class CharFormResult:
    """A term, its ambient alphabet, the characteristic formula as defined
    by the recursion, and the leaner equivalent form."""

    term: Term
    actions: frozenset[Action]
    formula: Formula
    simplified: Formula


def is_omega_equivalent(t: Term, acts: Iterable[Union[str, Action]]) -> bool:
    """Is ``t`` refinement-equivalent to the loosest process ``w`` over the
    given alphabet?"""
    ambient = frozenset(action(a) for a in acts)
    left = expand_mts_term(t, ambient)
    right = expand_mts_term(Omega(), ambient)
    forward = greatest_refinement(left, right)
    backward = greatest_refinement(right, left)
    return (left.init, right.init) in forward and (right.init, left.init) in backward


class _Builder:
    def __init__(self, ambient: list[Action], literal_prefix_clause: bool):
        self.ambient = ambient
        self.literal = literal_prefix_clause
        self._chi: dict[str, Formula] = {}
        self._gamma: dict[tuple[str, Action], Formula] = {}

    def chi(self, t: Term) -> Formula:
        key = term_text(t)
        if key not in self._chi:
            parts = list(self.delta(t))
            parts.extend(Box(a, self.gamma(t, a)) for a in self.ambient)
            self._chi[key] = conj(parts)
        return self._chi[key]

    def delta(self, t: Term) -> list[Formula]:
        if isinstance(t, (Zero, Omega, Prefix)):
            return []
        if isinstance(t, MustPrefix):
            return [Diamond(t.action, self.chi(t.rest))]
        if isinstance(t, Sum):
            merged: dict[str, Formula] = {}
            for part in self.delta(t.left) + self.delta(t.right):
                merged.setdefault(formula_text(part), part)
            return [merged[k] for k in sorted(merged)]
        raise TypeError(f"not a term: {t!r}")

    def gamma(self, t: Term, a: Action) -> Formula:
        key = (term_text(t), a)
        if key in self._gamma:
            return self._gamma[key]
        if isinstance(t, Zero):
            out: Formula = Bottom()
        elif isinstance(t, Omega):
            out = Top()
        elif isinstance(t, (Prefix, MustPrefix)):
            if t.action != a:
                out = Bottom()
            elif self.literal:
                out = self.gamma(t.rest, a)
            else:
                out = self.chi(t.rest)
        elif isinstance(t, Sum):
            out = Or(self.gamma(t.left, a), self.gamma(t.right, a))
        else:
            raise TypeError(f"not a term: {t!r}")
        self._gamma[key] = out
        return out


def characteristic_formula(
    t: Term,
    acts: Iterable[Union[str, Action]],
    literal_prefix_clause: bool = False,
) -> CharFormResult:
    """The characteristic formula of ``t`` over alphabet ``acts``.

    ``literal_prefix_clause`` switches the prefix case of ``gamma`` to the
    variant that does not characterise (see the module docstring); it only
    affects ``formula``, never ``simplified``.
    """
    ambient = frozenset(action(a) for a in acts)
    ordered = sorted_actions(ambient)
    root = canonical_term(t)
    builder = _Builder(ordered, literal_prefix_clause)
    formula = builder.chi(root)
    simplified = _simplified(root, ambient, ordered, {}, {})
    return CharFormResult(term=root, actions=ambient, formula=formula, simplified=simplified)


def _simplified(
    t: Term,
    ambient: frozenset[Action],
    ordered: list[Action],
    memo: dict[str, Formula],
    omega_memo: dict[str, bool],
) -> Formula:
    key = term_text(t)
    if key in memo:
        return memo[key]

    def omega_like(sub: Term) -> bool:
        k = term_text(sub)
        if k not in omega_memo:
            omega_memo[k] = is_omega_equivalent(sub, ambient)
        return omega_memo[k]

    parts: list[Formula] = []
    musts = sorted(set(_must_moves(t)), key=lambda m: (str(m[0]), term_text(m[1])))
    for a, nxt in musts:
        parts.append(Diamond(a, _simplified(nxt, ambient, ordered, memo, omega_memo)))
    mays = _may_moves(t, ordered)
    for a in ordered:
        targets: dict[str, Term] = {}
        for b, nxt in mays:
            if b == a:
                targets.setdefault(term_text(nxt), nxt)
        # Drop the box when some may successor is as loose as w: the bound
        # it would state is vacuous.  No a-successors at all gives [a]ff.
        if any(omega_like(sub) for sub in targets.values()):
            continue
        branches = [
            _simplified(targets[k], ambient, ordered, memo, omega_memo)
            for k in sorted(targets)
        ]
        parts.append(Box(a, disj(branches)))
    out = simplify(conj(parts))
    memo[key] = out
    return out


def encode_term(t: Term) -> Term:
    """Term companion of the MTS-to-LTS encoding: may prefixes become
    contravariant copies, must prefixes split into a covariant and a
    contravariant branch."""
    if isinstance(t, (Zero, Omega)):
        return t
    if isinstance(t, Prefix):
        return Prefix(ct(t.action), encode_term(t.rest))
    if isinstance(t, MustPrefix):
        rest = encode_term(t.rest)
        return Sum(Prefix(cv(t.action), rest), Prefix(ct(t.action), rest))
    if isinstance(t, Sum):
        return Sum(encode_term(t.left), encode_term(t.right))
    raise TypeError(f"not a term: {t!r}")


def characteristic_formula_cc(t: Term, acts: Iterable[Union[str, Action]]) -> Formula:
    """The encoded characteristic formula: characteristic for the encoded
    term among all LTS terms over the decorated signature."""
    return encode_formula(characteristic_formula(t, acts).formula)
