"""Finite pointed transition systems and their action labels.

Two system kinds live here:

* :class:`PointedMTS`, a modal transition system with separate ``may`` and
  ``must`` transition relations (every must transition needs a may twin);
* :class:`PointedLTS`, a labelled transition system whose actions are split
  by a :class:`CCSignature` into covariant, contravariant and bivariant
  classes.

States are plain strings.  Labels are :class:`Action` values; a label is
either a plain name or a structural ``cv``/``ct`` copy of another label, so
translations that decorate or strip labels never have to parse strings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")

PLAIN = "plain"
CV = "cv"
CT = "ct"


@dataclass(frozen=True)
class Action:
    """A transition label.

    ``mark`` is ``"plain"`` for ordinary named labels, ``"cv"`` or ``"ct"``
    for the covariant / contravariant copy of ``base``.  Decorations nest.
    """

    name: str = ""
    mark: str = PLAIN
    base: "Action | None" = None

    def __post_init__(self) -> None:
        if self.mark == PLAIN:
            if self.base is not None:
                raise ValueError("plain labels carry no base label")
            if not _NAME_RE.match(self.name):
                raise ValueError(f"bad label name: {self.name!r}")
        elif self.mark in (CV, CT):
            if self.base is None:
                raise ValueError(f"{self.mark} labels need a base label")
            if self.name:
                raise ValueError(f"{self.mark} labels carry no name of their own")
        else:
            raise ValueError(f"unknown label mark: {self.mark!r}")

    def __str__(self) -> str:
        if self.mark == PLAIN:
            return self.name
        return f"{self.mark}({self.base})"

    def __repr__(self) -> str:
        return f"Action({str(self)!r})"


def is_name_token(text: str) -> bool:
    """True when ``text`` is a bare name token (letters, digits, underscores).

    Label names must be tokens; state names may be anything but are quoted
    in text form when they are not tokens.
    """
    return bool(_NAME_RE.match(text))


def action(name: Union[str, Action]) -> Action:
    """Coerce a string to a plain :class:`Action` (identity on actions)."""
    if isinstance(name, Action):
        return name
    return Action(name=name)


def cv(a: Union[str, Action]) -> Action:
    """The covariant copy of label ``a``."""
    return Action(mark=CV, base=action(a))


def ct(a: Union[str, Action]) -> Action:
    """The contravariant copy of label ``a``."""
    return Action(mark=CT, base=action(a))


def actions(*names: Union[str, Action]) -> frozenset[Action]:
    return frozenset(action(n) for n in names)


def action_set(names: Iterable[Union[str, Action]]) -> frozenset[Action]:
    return frozenset(action(n) for n in names)


def sorted_actions(labels: Iterable[Action]) -> list[Action]:
    """Labels in canonical (printed) order; used wherever determinism matters."""
    return sorted(labels, key=str)


COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"
BIVARIANT = "bivariant"


@dataclass(frozen=True)
class CCSignature:
    """A partition of an action alphabet into covariant, contravariant and
    bivariant classes.

    Construction does not enforce disjointness so that
    :func:`validate_cc_lts` can report overlaps; well-formed signatures keep
    the three classes pairwise disjoint.
    """

    covariant: frozenset[Action]
    contravariant: frozenset[Action]
    bivariant: frozenset[Action]

    @property
    def actions(self) -> frozenset[Action]:
        return self.covariant | self.contravariant | self.bivariant

    def overlaps(self) -> list[Action]:
        doubled = (
            (self.covariant & self.contravariant)
            | (self.covariant & self.bivariant)
            | (self.contravariant & self.bivariant)
        )
        return sorted_actions(doubled)

    def class_of(self, a: Action) -> str:
        if a in self.bivariant:
            return BIVARIANT
        if a in self.covariant:
            return COVARIANT
        if a in self.contravariant:
            return CONTRAVARIANT
        raise KeyError(f"label {a} not in signature")


def signature(
    cov: Iterable[Union[str, Action]] = (),
    con: Iterable[Union[str, Action]] = (),
    bi: Iterable[Union[str, Action]] = (),
) -> CCSignature:
    return CCSignature(action_set(cov), action_set(con), action_set(bi))


def plain_signature(labels: Iterable[Union[str, Action]]) -> CCSignature:
    """All-covariant signature; the reading used for plain LTSs."""
    return signature(cov=labels)


Transition = tuple[str, Action, str]


def _transitions(triples: Iterable[tuple]) -> frozenset[Transition]:
    out = set()
    for src, lab, dst in triples:
        out.add((str(src), action(lab), str(dst)))
    return frozenset(out)


@dataclass(frozen=True)
class PointedMTS:
    """A finite modal transition system with a distinguished initial state."""

    states: frozenset[str]
    actions: frozenset[Action]
    may: frozenset[Transition]
    must: frozenset[Transition]
    init: str


@dataclass(frozen=True)
class PointedLTS:
    """A finite labelled transition system over a covariant-contravariant
    signature, with a distinguished initial state."""

    states: frozenset[str]
    signature: CCSignature
    transitions: frozenset[Transition]
    init: str


System = Union[PointedMTS, PointedLTS]


def mts(
    states: Iterable[str],
    acts: Iterable[Union[str, Action]],
    may: Iterable[tuple],
    must: Iterable[tuple],
    init: str,
) -> PointedMTS:
    """Convenience constructor coercing strings to labels."""
    return PointedMTS(
        states=frozenset(str(s) for s in states),
        actions=action_set(acts),
        may=_transitions(may),
        must=_transitions(must),
        init=str(init),
    )


def lts(
    states: Iterable[str],
    sig: CCSignature,
    transitions: Iterable[tuple],
    init: str,
) -> PointedLTS:
    return PointedLTS(
        states=frozenset(str(s) for s in states),
        signature=sig,
        transitions=_transitions(transitions),
        init=str(init),
    )


def universal_mts(acts: Iterable[Union[str, Action]], state: str = "u") -> PointedMTS:
    """The one-state MTS that may loop on every action and requires nothing.

    Every MTS over the same alphabet refines it from its single state, which
    also makes it the weakly initial model among MTSs over that alphabet.
    """
    labels = action_set(acts)
    return PointedMTS(
        states=frozenset({state}),
        actions=labels,
        may=frozenset((state, a, state) for a in labels),
        must=frozenset(),
        init=state,
    )


def validate_mts(m: PointedMTS) -> list[str]:
    """All well-formedness violations of ``m``, deterministically ordered.

    Checks: init is a state, transition endpoints are states, transition
    labels are declared, and every must transition has a may twin.
    """
    problems: list[str] = []
    if m.init not in m.states:
        problems.append(f"initial state {m.init!r} is not a declared state")
    for rel_name, rel in (("may", m.may), ("must", m.must)):
        for src, lab, dst in sorted(rel, key=_triple_key):
            if src not in m.states:
                problems.append(f"{rel_name} transition source {src!r} is not a declared state")
            if dst not in m.states:
                problems.append(f"{rel_name} transition target {dst!r} is not a declared state")
            if lab not in m.actions:
                problems.append(f"{rel_name} transition label {lab} is not a declared action")
    for triple in sorted(m.must - m.may, key=_triple_key):
        src, lab, dst = triple
        problems.append(f"must transition ({src}, {lab}, {dst}) has no may twin")
    return problems


def validate_cc_lts(p: PointedLTS) -> list[str]:
    """All well-formedness violations of ``p``, deterministically ordered.

    Checks: the signature classes are pairwise disjoint, init is a state,
    endpoints are states, and transition labels belong to the signature.
    """
    problems: list[str] = []
    for lab in p.signature.overlaps():
        problems.append(f"label {lab} appears in more than one signature class")
    if p.init not in p.states:
        problems.append(f"initial state {p.init!r} is not a declared state")
    universe = p.signature.actions
    for src, lab, dst in sorted(p.transitions, key=_triple_key):
        if src not in p.states:
            problems.append(f"transition source {src!r} is not a declared state")
        if dst not in p.states:
            problems.append(f"transition target {dst!r} is not a declared state")
        if lab not in universe:
            problems.append(f"transition label {lab} is not in the signature")
    return problems


def _triple_key(t: Transition) -> tuple[str, str, str]:
    return (t[0], str(t[1]), t[2])


SuccIndex = dict[str, dict[Action, tuple[str, ...]]]


def successor_index(states: Iterable[str], transitions: Iterable[Transition]) -> SuccIndex:
    """Map each state to its successors grouped by label (targets sorted)."""
    raw: dict[str, dict[Action, set[str]]] = {s: {} for s in states}
    for src, lab, dst in transitions:
        raw.setdefault(src, {}).setdefault(lab, set()).add(dst)
    return {
        s: {lab: tuple(sorted(dsts)) for lab, dsts in labmap.items()}
        for s, labmap in raw.items()
    }


def rename_actions(
    system: System,
    mapping: Mapping[Action, Action],
    target: Union[frozenset[Action], CCSignature],
) -> System:
    """Relabel every transition of ``system`` through ``mapping``.

    ``mapping`` must be total on the system's declared labels.  For an MTS,
    ``target`` is the new action set; for an LTS it is the new signature.  In
    both cases every renamed label must land inside the target.  Renaming is
    on sets of transitions, so non-injective maps merge transitions.
    """
    if isinstance(system, PointedMTS):
        labels = system.actions
    else:
        labels = system.signature.actions
    missing = sorted_actions(lab for lab in labels if lab not in mapping)
    if missing:
        raise ValueError(f"rename map is not total; missing {missing}")
    if isinstance(system, PointedMTS):
        if not isinstance(target, frozenset):
            target = frozenset(target)
        image = frozenset(mapping[lab] for lab in labels)
        stray = sorted_actions(image - target)
        if stray:
            raise ValueError(f"renamed labels {stray} are outside the target action set")
        remap = lambda rel: frozenset((s, mapping[a], d) for s, a, d in rel)
        return PointedMTS(system.states, target, remap(system.may), remap(system.must), system.init)
    if not isinstance(target, CCSignature):
        raise TypeError("renaming an LTS needs a target signature")
    universe = target.actions
    image = frozenset(mapping[lab] for lab in labels)
    stray = sorted_actions(image - universe)
    if stray:
        raise ValueError(f"renamed labels {stray} are outside the target signature")
    moved = frozenset((s, mapping[a], d) for s, a, d in system.transitions)
    return PointedLTS(system.states, target, moved, system.init)
