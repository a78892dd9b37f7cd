"""Greatest behavioural preorders between pointed systems.

Four preorder kinds are supported:

* :class:`Refinement` between MTSs: required (must) behaviour of the left
  system is matched by the right, allowed (may) behaviour of the right is
  matched by the left;
* :class:`CCSim` between LTSs over one signature: covariant and bivariant
  moves of the left are matched rightwards, contravariant and bivariant
  moves of the right are matched leftwards;
* :class:`PartialBisim` between LTSs read as plain systems: every move of
  the left is matched rightwards, moves of the right on actions in the
  bisimulation set are matched leftwards.  This is exactly covariant-
  contravariant simulation after reclassifying the alphabet, and
  :func:`greatest_pbsim` is implemented by that delegation;
* :class:`Simulation`: partial bisimulation with the empty bisimulation set.

``greatest_*`` computes the greatest relation of a kind by iterated removal
from the full state product.  :func:`oracle_greatest` recomputes it by brute
force (enumerating every subset of the product) and exists purely so the
fixpoint can be tested against an independent path; it is capped at products
of 12 pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional, Union

from .formulas import Box, Diamond, Formula, conj, disj
from .systems import (
    Action,
    CCSignature,
    PointedLTS,
    PointedMTS,
    SuccIndex,
    sorted_actions,
    successor_index,
)


@dataclass(frozen=True)
class Refinement:
    """Modal refinement between MTSs."""


@dataclass(frozen=True)
class CCSim:
    """Covariant-contravariant simulation between same-signature LTSs."""


@dataclass(frozen=True)
class Simulation:
    """Plain simulation between LTSs (signature classes ignored)."""


@dataclass(frozen=True)
class PartialBisim:
    """Partial bisimulation with bisimulation set ``bset``."""

    bset: frozenset[Action]


PreorderKind = Union[Refinement, CCSim, Simulation, PartialBisim]

ORACLE_PRODUCT_CAP = 12

Pair = tuple[str, str]


@dataclass(frozen=True)
class Relation:
    """A relation between the state sets of two systems."""

    pairs: frozenset[Pair]
    left: str = ""
    right: str = ""

    def relates(self, p: str, q: str) -> bool:
        return (p, q) in self.pairs

    def __contains__(self, pair: Pair) -> bool:
        return pair in self.pairs

    def inverse(self) -> "Relation":
        return Relation(frozenset((q, p) for p, q in self.pairs), self.right, self.left)


def compose_relations(r1: Relation, r2: Relation) -> Relation:
    by_left: dict[str, set[str]] = {}
    for a, b in r1.pairs:
        by_left.setdefault(b, set()).add(a)
    pairs = set()
    for b, c in r2.pairs:
        for a in by_left.get(b, ()):
            pairs.add((a, c))
    return Relation(frozenset(pairs), r1.left, r2.right)


# A violation of a candidate pair is (label, clause, witness state) where
# clause 1 is the leftward obligation (diamond side when turned into a
# distinguishing formula) and clause 2 the rightward one (box side).
Violation = tuple[Action, int, str]
ViolationFinder = Callable[[str, str, set[Pair]], Optional[Violation]]


def _refinement_finder(p_sys: PointedMTS, q_sys: PointedMTS) -> tuple[ViolationFinder, dict]:
    p_must = successor_index(p_sys.states, p_sys.must)
    p_may = successor_index(p_sys.states, p_sys.may)
    q_must = successor_index(q_sys.states, q_sys.must)
    q_may = successor_index(q_sys.states, q_sys.may)
    ctx = {"left_diamond": q_must, "right_box": p_may}

    def find(p: str, q: str, rel: set[Pair]) -> Optional[Violation]:
        labels = sorted_actions(set(p_must[p]) | set(q_may[q]))
        for a in labels:
            for p2 in p_must[p].get(a, ()):
                if not any((p2, q2) in rel for q2 in q_must[q].get(a, ())):
                    return (a, 1, p2)
            for q2 in q_may[q].get(a, ()):
                if not any((p2, q2) in rel for p2 in p_may[p].get(a, ())):
                    return (a, 2, q2)
        return None

    return find, ctx


def _ccsim_finder(p_sys: PointedLTS, q_sys: PointedLTS) -> tuple[ViolationFinder, dict]:
    sig = p_sys.signature
    forward = sig.covariant | sig.bivariant
    backward = sig.contravariant | sig.bivariant
    p_succ = successor_index(p_sys.states, p_sys.transitions)
    q_succ = successor_index(q_sys.states, q_sys.transitions)
    ctx = {"left_diamond": q_succ, "right_box": p_succ}

    def find(p: str, q: str, rel: set[Pair]) -> Optional[Violation]:
        labels = sorted_actions(
            (set(p_succ[p]) & forward) | (set(q_succ[q]) & backward)
        )
        for a in labels:
            if a in forward:
                for p2 in p_succ[p].get(a, ()):
                    if not any((p2, q2) in rel for q2 in q_succ[q].get(a, ())):
                        return (a, 1, p2)
            if a in backward:
                for q2 in q_succ[q].get(a, ()):
                    if not any((p2, q2) in rel for p2 in p_succ[p].get(a, ())):
                        return (a, 2, q2)
        return None

    return find, ctx


def _fixpoint(
    left_states: frozenset[str],
    right_states: frozenset[str],
    find: ViolationFinder,
) -> tuple[frozenset[Pair], list[frozenset[Pair]], dict[Pair, tuple[int, Violation]]]:
    rel: set[Pair] = {(p, q) for p in left_states for q in right_states}
    rounds = [frozenset(rel)]
    records: dict[Pair, tuple[int, Violation]] = {}
    round_no = 0
    while True:
        # Violations are detected against the relation at the start of the
        # round and removed together, so every blocking pair referenced by a
        # violation was removed in a strictly earlier round.
        bad = []
        for pair in sorted(rel):
            violation = find(pair[0], pair[1], rel)
            if violation is not None:
                bad.append((pair, violation))
        if not bad:
            return frozenset(rel), rounds, records
        round_no += 1
        for pair, violation in bad:
            rel.discard(pair)
            records[pair] = (round_no, violation)
        rounds.append(frozenset(rel))


def _check_mts_pair(p_sys: PointedMTS, q_sys: PointedMTS) -> None:
    if p_sys.actions != q_sys.actions:
        raise ValueError("refinement needs both systems over the same action set")


def _check_lts_pair(p_sys: PointedLTS, q_sys: PointedLTS) -> None:
    if p_sys.signature != q_sys.signature:
        raise ValueError("covariant-contravariant simulation needs identical signatures")


def greatest_refinement(p_sys: PointedMTS, q_sys: PointedMTS) -> Relation:
    """The greatest modal refinement relation between the two state sets."""
    _check_mts_pair(p_sys, q_sys)
    find, _ = _refinement_finder(p_sys, q_sys)
    rel, _, _ = _fixpoint(p_sys.states, q_sys.states, find)
    return Relation(rel)


def greatest_ccsim(p_sys: PointedLTS, q_sys: PointedLTS) -> Relation:
    """The greatest covariant-contravariant simulation between the two
    state sets; the systems must share one signature."""
    _check_lts_pair(p_sys, q_sys)
    find, _ = _ccsim_finder(p_sys, q_sys)
    rel, _, _ = _fixpoint(p_sys.states, q_sys.states, find)
    return Relation(rel)


def _pb_signature(universe: frozenset[Action], bset: frozenset[Action]) -> CCSignature:
    return CCSignature(
        covariant=universe - bset,
        contravariant=frozenset(),
        bivariant=bset,
    )


def _reclass_for_pb(
    p_sys: PointedLTS, q_sys: PointedLTS, bset: frozenset[Action]
) -> tuple[PointedLTS, PointedLTS]:
    universe = p_sys.signature.actions
    if universe != q_sys.signature.actions:
        raise ValueError("partial bisimulation needs both systems over the same alphabet")
    stray = sorted_actions(bset - universe)
    if stray:
        raise ValueError(f"bisimulation set labels {stray} are outside the alphabet")
    sig = _pb_signature(universe, frozenset(bset))
    return replace(p_sys, signature=sig), replace(q_sys, signature=sig)


def greatest_pbsim(p_sys: PointedLTS, q_sys: PointedLTS, bset: frozenset[Action]) -> Relation:
    """The greatest partial bisimulation with bisimulation set ``bset``.

    Computed by reclassifying the alphabet (actions outside ``bset``
    covariant, actions inside bivariant) and delegating to
    :func:`greatest_ccsim`; the two definitions coincide pair for pair.
    """
    left, right = _reclass_for_pb(p_sys, q_sys, bset)
    return greatest_ccsim(left, right)


def greatest_simulation(p_sys: PointedLTS, q_sys: PointedLTS) -> Relation:
    """The plain simulation preorder: partial bisimulation with the empty
    bisimulation set."""
    return greatest_pbsim(p_sys, q_sys, frozenset())


def fixpoint_rounds(
    kind: PreorderKind,
    p_sys: Union[PointedMTS, PointedLTS],
    q_sys: Union[PointedMTS, PointedLTS],
) -> list[frozenset[Pair]]:
    """The chain of relations the removal loop passes through, starting at
    the full product; mainly for inspection and property tests."""
    if isinstance(kind, Refinement):
        _check_mts_pair(p_sys, q_sys)
        find, _ = _refinement_finder(p_sys, q_sys)
    elif isinstance(kind, CCSim):
        _check_lts_pair(p_sys, q_sys)
        find, _ = _ccsim_finder(p_sys, q_sys)
    elif isinstance(kind, PartialBisim):
        p_sys, q_sys = _reclass_for_pb(p_sys, q_sys, kind.bset)
        find, _ = _ccsim_finder(p_sys, q_sys)
    elif isinstance(kind, Simulation):
        p_sys, q_sys = _reclass_for_pb(p_sys, q_sys, frozenset())
        find, _ = _ccsim_finder(p_sys, q_sys)
    else:
        raise TypeError(f"unknown preorder kind: {kind!r}")
    _, rounds, _ = _fixpoint(p_sys.states, q_sys.states, find)
    return rounds


def _oracle_obligations(
    kind: PreorderKind,
    p_sys: Union[PointedMTS, PointedLTS],
    q_sys: Union[PointedMTS, PointedLTS],
    pairs: list[Pair],
    index: dict[Pair, int],
) -> list[list[int]]:
    # Literal transcription of each definition's clauses into bitmasks of
    # supporting pairs; kept separate from the fixpoint code on purpose.
    obligations: list[list[int]] = [[] for _ in pairs]

    def mask(cands: list[Pair]) -> int:
        out = 0
        for cand in cands:
            out |= 1 << index[cand]
        return out

    if isinstance(kind, Refinement):
        p_must = successor_index(p_sys.states, p_sys.must)
        p_may = successor_index(p_sys.states, p_sys.may)
        q_must = successor_index(q_sys.states, q_sys.must)
        q_may = successor_index(q_sys.states, q_sys.may)
        for i, (p, q) in enumerate(pairs):
            for a, targets in p_must[p].items():
                for p2 in targets:
                    obligations[i].append(mask([(p2, q2) for q2 in q_must[q].get(a, ())]))
            for a, targets in q_may[q].items():
                for q2 in targets:
                    obligations[i].append(mask([(p2, q2) for p2 in p_may[p].get(a, ())]))
        return obligations

    if isinstance(kind, CCSim):
        sig = p_sys.signature
        forward = sig.covariant | sig.bivariant
        backward = sig.contravariant | sig.bivariant
        p_succ = successor_index(p_sys.states, p_sys.transitions)
        q_succ = successor_index(q_sys.states, q_sys.transitions)
        for i, (p, q) in enumerate(pairs):
            for a, targets in p_succ[p].items():
                if a in forward:
                    for p2 in targets:
                        obligations[i].append(mask([(p2, q2) for q2 in q_succ[q].get(a, ())]))
            for a, targets in q_succ[q].items():
                if a in backward:
                    for q2 in targets:
                        obligations[i].append(mask([(p2, q2) for p2 in p_succ[p].get(a, ())]))
        return obligations

    if isinstance(kind, (PartialBisim, Simulation)):
        bset = kind.bset if isinstance(kind, PartialBisim) else frozenset()
        p_succ = successor_index(p_sys.states, p_sys.transitions)
        q_succ = successor_index(q_sys.states, q_sys.transitions)
        for i, (p, q) in enumerate(pairs):
            for a, targets in p_succ[p].items():
                for p2 in targets:
                    obligations[i].append(mask([(p2, q2) for q2 in q_succ[q].get(a, ())]))
            for a, targets in q_succ[q].items():
                if a in bset:
                    for q2 in targets:
                        obligations[i].append(mask([(p2, q2) for p2 in p_succ[p].get(a, ())]))
        return obligations

    raise TypeError(f"unknown preorder kind: {kind!r}")


def oracle_greatest(
    kind: PreorderKind,
    p_sys: Union[PointedMTS, PointedLTS],
    q_sys: Union[PointedMTS, PointedLTS],
) -> Relation:
    """Brute-force greatest relation of ``kind``: enumerate every subset of
    the state product, keep the ones satisfying the defining clauses
    pointwise and return the union of the keepers.

    Unions of satisfying relations satisfy the clauses again, so the union
    is the greatest one.  Only usable when the product has at most
    ``ORACLE_PRODUCT_CAP`` pairs.
    """
    if isinstance(kind, Refinement):
        _check_mts_pair(p_sys, q_sys)
    elif isinstance(kind, CCSim):
        _check_lts_pair(p_sys, q_sys)
    elif isinstance(kind, (PartialBisim, Simulation)):
        bset = kind.bset if isinstance(kind, PartialBisim) else frozenset()
        if p_sys.signature.actions != q_sys.signature.actions:
            raise ValueError("partial bisimulation needs both systems over the same alphabet")
        stray = sorted_actions(bset - p_sys.signature.actions)
        if stray:
            raise ValueError(f"bisimulation set labels {stray} are outside the alphabet")
    else:
        raise TypeError(f"unknown preorder kind: {kind!r}")
    pairs = sorted((p, q) for p in p_sys.states for q in q_sys.states)
    n = len(pairs)
    if n > ORACLE_PRODUCT_CAP:
        raise ValueError(
            f"state product has {n} pairs; the brute-force oracle is capped at {ORACLE_PRODUCT_CAP}"
        )
    index = {pair: i for i, pair in enumerate(pairs)}
    obligations = _oracle_obligations(kind, p_sys, q_sys, pairs, index)
    union = 0
    full = (1 << n) - 1
    for subset in range(1 << n):
        if subset & ~union == 0:
            continue  # cannot grow the union
        ok = True
        rest = subset
        while rest and ok:
            low = rest & (-rest)
            rest ^= low
            for need in obligations[low.bit_length() - 1]:
                if not subset & need:
                    ok = False
                    break
        if ok:
            union |= subset
            if union == full:
                break
    return Relation(frozenset(pairs[i] for i in range(n) if union >> i & 1))


def distinguishing_formula(
    kind: PreorderKind,
    p_sys: Union[PointedMTS, PointedLTS],
    p: str,
    q_sys: Union[PointedMTS, PointedLTS],
    q: str,
) -> Optional[Formula]:
    """A formula satisfied by ``(p_sys, p)`` but not by ``(q_sys, q)``, or
    ``None`` when the pair lies in the greatest relation of ``kind``.

    Built from the removal round that deleted the pair: a failed leftward
    obligation on ``a`` becomes ``<a>(...)`` over the opposing successors, a
    failed rightward obligation becomes ``[a](...)``.  No minimality is
    promised, only that it witnesses the failure.  Supported for
    :class:`Refinement` and :class:`CCSim`.
    """
    if isinstance(kind, Refinement):
        _check_mts_pair(p_sys, q_sys)
        find, ctx = _refinement_finder(p_sys, q_sys)
    elif isinstance(kind, CCSim):
        _check_lts_pair(p_sys, q_sys)
        find, ctx = _ccsim_finder(p_sys, q_sys)
    else:
        raise TypeError("distinguishing formulae exist for refinement and cc-simulation")
    if p not in p_sys.states:
        raise ValueError(f"{p!r} is not a state of the left system")
    if q not in q_sys.states:
        raise ValueError(f"{q!r} is not a state of the right system")
    rel, _, records = _fixpoint(p_sys.states, q_sys.states, find)
    if (p, q) in rel:
        return None
    left_diamond: SuccIndex = ctx["left_diamond"]
    right_box: SuccIndex = ctx["right_box"]
    memo: dict[Pair, Formula] = {}

    def build(pair: Pair) -> Formula:
        if pair in memo:
            return memo[pair]
        _, (a, clause, _witness) = records[pair]
        pp, qq = pair
        if clause == 1:
            _, (_, _, p2) = records[pair]
            blockers = left_diamond[qq].get(a, ())
            out: Formula = Diamond(a, conj([build((p2, q2)) for q2 in blockers]))
        else:
            _, (_, _, q2) = records[pair]
            movers = right_box[pp].get(a, ())
            out = Box(a, disj([build((p2, q2)) for p2 in movers]))
        memo[pair] = out
        return out

    return build((p, q))
