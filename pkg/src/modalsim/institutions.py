"""Institution-style packaging of the two logics.

Signatures are plain alphabets (MTS side) or covariant-contravariant
signatures (LTS side).  A signature morphism maps labels to labels, class
preserving on the LTS side; sentences travel along morphisms by relabelling
modalities, models travel backwards by pulling transitions back along the
label map (states and the distinguished state stay put).  The satisfaction
condition, truth is invariant under this round trip, holds for both logics
and is checked pointwise by :func:`check_satisfaction_condition`.

The two institutions are connected by mapping an alphabet ``A`` to the
decorated signature ``(cv(A), ct(A), {})``, sentences backwards via
:func:`morphism_formula_map` (exactly the formula decoding) and models via
:func:`morphism_model_map` (exactly the MTS encoding);
:func:`check_morphism_condition` checks the resulting invariance.

Some canonical models:

* :func:`weakly_final_implementation`: one state looping on every covariant
  label; every same-signature model simulates into it (signatures without
  bivariant labels);
* :func:`universal_specification`: one state looping on every contravariant
  label; it simulates into every same-signature model (again bivariant
  free);
* :func:`weakly_initial_mts`: the one-state may-everything MTS, which
  refines into every MTS over its alphabet.

No MTS plays the weakly final role, and no LTS model is weakly initial once
a bivariant label exists; :func:`final_obstruction_pair` and
:func:`initial_obstruction_pair` build the concrete two-model instances
that rule the candidates out.  A degenerate morphism collapsing every label
(making all systems indistinguishable) exists but is deliberately not part
of the API.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .formulas import (
    And,
    Bottom,
    Box,
    CCLogic,
    BLLogic,
    Diamond,
    Formula,
    Or,
    Top,
    check_wf,
    mc_cc,
    mc_mts,
)
from .systems import (
    Action,
    CCSignature,
    PointedLTS,
    PointedMTS,
    action,
    ct,
    cv,
    signature,
    sorted_actions,
    universal_mts,
)
from .translate import decode_formula, lts_of_mts


def _freeze_mapping(mapping: Mapping[Action, Action]) -> tuple[tuple[Action, Action], ...]:
    return tuple(sorted(mapping.items(), key=lambda kv: str(kv[0])))


@dataclass(frozen=True)
class MtsSignatureMorphism:
    """A total label map between two alphabets."""

    source: frozenset[Action]
    target: frozenset[Action]
    pairs: tuple[tuple[Action, Action], ...]

    def __post_init__(self) -> None:
        keys = frozenset(k for k, _ in self.pairs)
        if keys != self.source:
            raise ValueError("morphism must be defined on exactly the source alphabet")
        stray = sorted_actions(frozenset(v for _, v in self.pairs) - self.target)
        if stray:
            raise ValueError(f"morphism images {stray} are outside the target alphabet")

    def apply(self, a: Action) -> Action:
        for k, v in self.pairs:
            if k == a:
                return v
        raise KeyError(f"label {a} not in the source alphabet")


@dataclass(frozen=True)
class CCSignatureMorphism:
    """A total, class-preserving label map between two signatures."""

    source: CCSignature
    target: CCSignature
    pairs: tuple[tuple[Action, Action], ...]

    def __post_init__(self) -> None:
        keys = frozenset(k for k, _ in self.pairs)
        if keys != self.source.actions:
            raise ValueError("morphism must be defined on exactly the source alphabet")
        classes = (
            ("covariant", self.source.covariant, self.target.covariant),
            ("contravariant", self.source.contravariant, self.target.contravariant),
            ("bivariant", self.source.bivariant, self.target.bivariant),
        )
        lookup = dict(self.pairs)
        for name, src_class, tgt_class in classes:
            for a in sorted_actions(src_class):
                if lookup[a] not in tgt_class:
                    raise ValueError(
                        f"{name} label {a} maps to {lookup[a]}, which is not {name}"
                    )

    def apply(self, a: Action) -> Action:
        for k, v in self.pairs:
            if k == a:
                return v
        raise KeyError(f"label {a} not in the source alphabet")


SignatureMorphism = Union[MtsSignatureMorphism, CCSignatureMorphism]


def mts_morphism(
    source: Iterable[Union[str, Action]],
    target: Iterable[Union[str, Action]],
    mapping: Mapping[Union[str, Action], Union[str, Action]],
) -> MtsSignatureMorphism:
    src = frozenset(action(a) for a in source)
    tgt = frozenset(action(a) for a in target)
    pairs = {action(k): action(v) for k, v in mapping.items()}
    return MtsSignatureMorphism(src, tgt, _freeze_mapping(pairs))


def cc_morphism(
    source: CCSignature,
    target: CCSignature,
    mapping: Mapping[Union[str, Action], Union[str, Action]],
) -> CCSignatureMorphism:
    pairs = {action(k): action(v) for k, v in mapping.items()}
    return CCSignatureMorphism(source, target, _freeze_mapping(pairs))


def identity_morphism(
    sig: Union[CCSignature, Iterable[Union[str, Action]]],
) -> SignatureMorphism:
    if isinstance(sig, CCSignature):
        return cc_morphism(sig, sig, {a: a for a in sig.actions})
    alphabet = frozenset(action(a) for a in sig)
    return mts_morphism(alphabet, alphabet, {a: a for a in alphabet})


def compose_morphisms(f: SignatureMorphism, g: SignatureMorphism) -> SignatureMorphism:
    """``f`` after ``g``: the source of ``f`` must be the target of ``g``."""
    if isinstance(f, MtsSignatureMorphism) != isinstance(g, MtsSignatureMorphism):
        raise TypeError("cannot compose morphisms of different institutions")
    if isinstance(f, MtsSignatureMorphism):
        if g.target != f.source:
            raise ValueError("composition needs target(g) == source(f)")
        mapping = {k: f.apply(v) for k, v in g.pairs}
        return MtsSignatureMorphism(g.source, f.target, _freeze_mapping(mapping))
    if g.target != f.source:
        raise ValueError("composition needs target(g) == source(f)")
    mapping = {k: f.apply(v) for k, v in g.pairs}
    return CCSignatureMorphism(g.source, f.target, _freeze_mapping(mapping))


def sen_map(f: SignatureMorphism, phi: Formula) -> Formula:
    """Translate a sentence along a morphism by relabelling its modalities.

    Class preservation keeps well-formedness, which is asserted on the way
    out.
    """
    out = _relabel(phi, f)
    if isinstance(f, CCSignatureMorphism):
        logic: Union[BLLogic, CCLogic] = CCLogic(f.target)
    else:
        logic = BLLogic(f.target)
    problems = check_wf(out, logic)
    assert not problems, f"sentence translation broke well-formedness: {problems}"
    return out


def _relabel(phi: Formula, f: SignatureMorphism) -> Formula:
    if isinstance(phi, (Bottom, Top)):
        return phi
    if isinstance(phi, And):
        return And(_relabel(phi.left, f), _relabel(phi.right, f))
    if isinstance(phi, Or):
        return Or(_relabel(phi.left, f), _relabel(phi.right, f))
    if isinstance(phi, Diamond):
        return Diamond(f.apply(phi.action), _relabel(phi.body, f))
    if isinstance(phi, Box):
        return Box(f.apply(phi.action), _relabel(phi.body, f))
    raise TypeError(f"not a formula: {phi!r}")


def reduct(
    system: Union[PointedMTS, PointedLTS], f: SignatureMorphism
) -> Union[PointedMTS, PointedLTS]:
    """Pull a model over the target signature back to the source: same
    states, same distinguished state, and an ``a`` transition wherever the
    model has an ``f(a)`` one."""
    if isinstance(system, PointedMTS):
        if not isinstance(f, MtsSignatureMorphism):
            raise TypeError("an MTS reduct needs an alphabet morphism")
        if system.actions != f.target:
            raise ValueError("the model must live over the morphism's target alphabet")
        may = set()
        must = set()
        for a, fa in f.pairs:
            may.update((s, a, d) for (s, lab, d) in system.may if lab == fa)
            must.update((s, a, d) for (s, lab, d) in system.must if lab == fa)
        return PointedMTS(system.states, f.source, frozenset(may), frozenset(must), system.init)
    if not isinstance(f, CCSignatureMorphism):
        raise TypeError("an LTS reduct needs a signature morphism")
    if system.signature != f.target:
        raise ValueError("the model must live over the morphism's target signature")
    trans = set()
    for a, fa in f.pairs:
        trans.update((s, a, d) for (s, lab, d) in system.transitions if lab == fa)
    return PointedLTS(system.states, f.source, frozenset(trans), system.init)


def check_satisfaction_condition(
    f: SignatureMorphism,
    system: Union[PointedMTS, PointedLTS],
    state: str,
    phi: Formula,
) -> bool:
    """Does the satisfaction condition hold for this morphism, model, state
    and source sentence: translated sentence at the model iff original
    sentence at the reduct?"""
    if isinstance(f, MtsSignatureMorphism):
        there = mc_mts(system, state, sen_map(f, phi))
        back = mc_mts(reduct(system, f), state, phi)
    else:
        there = mc_cc(system, state, sen_map(f, phi))
        back = mc_cc(reduct(system, f), state, phi)
    return there == back


# The connecting morphism between the two institutions: alphabets map to
# their decorated signatures, sentences come back by decoding, models go
# forward by encoding.
morphism_formula_map = decode_formula
morphism_model_map = lts_of_mts


def morphism_signature_map(alphabet: Iterable[Union[str, Action]]) -> CCSignature:
    labels = frozenset(action(a) for a in alphabet)
    return CCSignature(
        covariant=frozenset(cv(a) for a in labels),
        contravariant=frozenset(ct(a) for a in labels),
        bivariant=frozenset(),
    )


def check_morphism_condition(m: PointedMTS, state: str, phi: Formula) -> bool:
    """Truth is invariant across the connecting morphism: the decoded
    sentence holds at an MTS state iff the sentence holds at the same state
    of the encoded model."""
    return mc_mts(m, state, morphism_formula_map(phi)) == mc_cc(
        morphism_model_map(m), state, phi
    )


def weakly_final_implementation(sig: CCSignature, state: str = "s") -> PointedLTS:
    """One state looping on every covariant label; weakly final among models
    over a bivariant-free signature."""
    if sig.bivariant:
        raise ValueError("weak finality needs a signature without bivariant labels")
    loops = frozenset((state, a, state) for a in sig.covariant)
    return PointedLTS(frozenset({state}), sig, loops, state)


def universal_specification(sig: CCSignature, state: str = "s") -> PointedLTS:
    """One state looping on every contravariant label; weakly initial among
    models over a bivariant-free signature."""
    if sig.bivariant:
        raise ValueError("weak initiality needs a signature without bivariant labels")
    loops = frozenset((state, a, state) for a in sig.contravariant)
    return PointedLTS(frozenset({state}), sig, loops, state)


def weakly_initial_mts(alphabet: Iterable[Union[str, Action]], state: str = "u") -> PointedMTS:
    """The may-everything one-state MTS; weakly initial among MTSs."""
    return universal_mts(alphabet, state)


WITNESS_KINDS = ("weakly-final-cc", "universal-spec-cc", "weakly-initial-mts")


def canonical_witness(
    kind: str,
    sig: Union[CCSignature, Iterable[Union[str, Action]]],
) -> Union[PointedLTS, PointedMTS]:
    """Dispatch to one of the three canonical witness builders by name."""
    if kind == "weakly-final-cc":
        if not isinstance(sig, CCSignature):
            raise TypeError("this witness needs a signature")
        return weakly_final_implementation(sig)
    if kind == "universal-spec-cc":
        if not isinstance(sig, CCSignature):
            raise TypeError("this witness needs a signature")
        return universal_specification(sig)
    if kind == "weakly-initial-mts":
        if isinstance(sig, CCSignature):
            raise TypeError("this witness needs a plain alphabet")
        return weakly_initial_mts(sig)
    raise ValueError(f"unknown witness kind {kind!r}; pick one of {WITNESS_KINDS}")


def final_obstruction_pair(label: Union[str, Action] = "a") -> tuple[PointedMTS, PointedMTS]:
    """Two MTSs over one letter that no single MTS can receive refinement
    arrows from simultaneously: one demands an infinite must path, the other
    forbids any may step."""
    a = action(label)
    demanding = PointedMTS(
        states=frozenset({"m"}),
        actions=frozenset({a}),
        may=frozenset({("m", a, "m")}),
        must=frozenset({("m", a, "m")}),
        init="m",
    )
    silent = PointedMTS(
        states=frozenset({"n"}),
        actions=frozenset({a}),
        may=frozenset(),
        must=frozenset(),
        init="n",
    )
    return demanding, silent


def initial_obstruction_pair(label: Union[str, Action] = "c") -> tuple[PointedLTS, PointedLTS]:
    """Two LTSs over one bivariant letter that no single model can simulate
    into simultaneously: one loops on the bivariant label, the other is
    silent."""
    c = action(label)
    sig = signature(bi=[c])
    looping = PointedLTS(frozenset({"p"}), sig, frozenset({("p", c, "p")}), "p")
    silent = PointedLTS(frozenset({"q"}), sig, frozenset(), "q")
    return looping, silent
