"""A registry of executable correctness properties with a deterministic
runner.

Each property is a function ``(config, rng) -> (cases, failures)`` registered
under a dotted id.  The runner seeds every property with its own
``random.Random(f"{seed}:{property_id}")``, so reports are reproducible and
independent of which other properties run.  A few properties are registered
with ``expect_fail=True``: they pin known boundaries (an approximation that
is deliberately one-sided, a formula recursion variant that does not
characterise) and count as OK exactly when their failure materialises.

Reports serialise to JSON with sorted keys and no timing information, so two
runs with one seed produce byte-identical output.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Callable, Iterable, Iterator, Optional, Union

from .charform import characteristic_formula, encode_term
from .formulas import (
    BLLogic,
    Bottom,
    Box,
    CCLogic,
    Formula,
    Or,
    Top,
    check_wf,
    formula_text,
    is_existential,
    mc_cc,
    mc_mts,
    replace_subformula,
    satisfying_states_cc,
    satisfying_states_mts,
    simplify,
    subformulas,
)
from .institutions import (
    CCSignatureMorphism,
    MtsSignatureMorphism,
    cc_morphism,
    check_morphism_condition,
    check_satisfaction_condition,
    compose_morphisms,
    final_obstruction_pair,
    identity_morphism,
    initial_obstruction_pair,
    mts_morphism,
    reduct,
    sen_map,
    universal_specification,
    weakly_final_implementation,
)
from .preorders import (
    CCSim,
    ORACLE_PRODUCT_CAP,
    PartialBisim,
    PreorderKind,
    Refinement,
    Relation,
    Simulation,
    compose_relations,
    distinguishing_formula,
    greatest_ccsim,
    greatest_pbsim,
    greatest_refinement,
    greatest_simulation,
    oracle_greatest,
)
from .sampling import (
    lts_term_forms,
    mts_term_forms,
    pool_labels,
    random_alphabet,
    random_bl_formula,
    random_cc_formula,
    random_lts,
    random_lts_pair,
    random_mts,
    random_mts_pair,
    random_plain_lts,
    random_signature,
    random_state,
    random_term,
)
from .systems import (
    BIVARIANT,
    CONTRAVARIANT,
    COVARIANT,
    Action,
    CCSignature,
    PointedLTS,
    PointedMTS,
    Transition,
    plain_signature,
    signature,
    sorted_actions,
    universal_mts,
    validate_cc_lts,
    validate_mts,
)
from .terms import (
    Omega,
    Term,
    Zero,
    canonical_term,
    enumerate_lts_terms,
    enumerate_mts_terms,
    expand_lts_term,
    expand_mts_term,
    term_text,
)
from .textio import (
    parse_formula,
    parse_system,
    parse_system_details,
    parse_term,
    print_system,
)
from .translate import (
    NotInEncodingRange,
    approximate_formula,
    decode_formula,
    decorate_by_class,
    eliminate_bivariant,
    embed_formula,
    encode_formula,
    fresh_sink_name,
    lts_of_mts,
    mts_of_encoded_lts,
    mts_of_lts,
    mts_of_plain_lts,
    strip_decorations,
)

SCHEMA = "modalsim-selfcheck/1"

_FAILURE_CAP = 3


@dataclass(frozen=True)
class SelfCheckConfig:
    """Knobs shared by all properties; the defaults finish in seconds."""

    seed: int = 42
    cases: int = 60
    max_states: int = 4
    max_labels: int = 2
    max_formula_depth: int = 4
    term_height: int = 2
    properties: tuple[str, ...] = ()


@dataclass(frozen=True)
class PropertyReport:
    property_id: str
    status: str  # pass | fail | expected-fail | unexpected-pass
    cases: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "expected-fail")


@dataclass(frozen=True)
class SelfCheckReport:
    schema: str
    seed: int
    config: dict
    properties: tuple[PropertyReport, ...]

    @property
    def ok(self) -> bool:
        return all(p.ok for p in self.properties)

    def to_json(self) -> str:
        payload = {
            "schema": self.schema,
            "seed": self.seed,
            "config": self.config,
            "ok": self.ok,
            "properties": [
                {
                    "id": p.property_id,
                    "status": p.status,
                    "cases": p.cases,
                    "failures": list(p.failures),
                }
                for p in self.properties
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def to_text(self, color: bool = False) -> str:
        def paint(text: str, good: bool) -> str:
            if not color:
                return text
            code = "32" if good else "31"
            return f"\x1b[{code}m{text}\x1b[0m"

        lines = [f"selfcheck seed={self.seed}"]
        for p in self.properties:
            tag = paint(f"[{p.status}]", p.ok)
            lines.append(f"{tag} {p.property_id}  cases={p.cases}")
            for failure in p.failures:
                for sub in failure.splitlines():
                    lines.append(f"    {sub}")
        counts: dict[str, int] = {}
        for p in self.properties:
            counts[p.status] = counts.get(p.status, 0) + 1
        summary = ", ".join(f"{counts[k]} {k}" for k in sorted(counts))
        verdict = "ok" if self.ok else "FAILED"
        lines.append(paint(f"result: {verdict} ({len(self.properties)} properties: {summary})", self.ok))
        return "\n".join(lines) + "\n"


PropertyFn = Callable[[SelfCheckConfig, random.Random], tuple[int, list[str]]]


@dataclass(frozen=True)
class _PropertyDef:
    pid: str
    fn: PropertyFn
    expect_fail: bool = False


_REGISTRY: dict[str, _PropertyDef] = {}


def prop(pid: str, expect_fail: bool = False) -> Callable[[PropertyFn], PropertyFn]:
    def register(fn: PropertyFn) -> PropertyFn:
        if pid in _REGISTRY:
            raise ValueError(f"property id {pid!r} registered twice")
        _REGISTRY[pid] = _PropertyDef(pid, fn, expect_fail)
        return fn

    return register


def property_ids() -> list[str]:
    return sorted(_REGISTRY)


def run_property(pid: str, config: SelfCheckConfig) -> PropertyReport:
    """Run one property under its own seeded generator."""
    if pid not in _REGISTRY:
        raise ValueError(f"unknown property {pid!r}")
    definition = _REGISTRY[pid]
    rng = random.Random(f"{config.seed}:{pid}")
    cases, failures = definition.fn(config, rng)
    if definition.expect_fail:
        status = "expected-fail" if failures else "unexpected-pass"
    else:
        status = "fail" if failures else "pass"
    return PropertyReport(pid, status, cases, tuple(failures))


def run_selfcheck(config: SelfCheckConfig = SelfCheckConfig()) -> SelfCheckReport:
    selected = config.properties or tuple(property_ids())
    unknown = sorted(set(selected) - set(_REGISTRY))
    if unknown:
        raise ValueError(f"unknown properties: {', '.join(unknown)}")
    reports = tuple(run_property(pid, config) for pid in sorted(set(selected)))
    snapshot = {
        "cases": config.cases,
        "max_formula_depth": config.max_formula_depth,
        "max_labels": config.max_labels,
        "max_states": config.max_states,
        "term_height": config.term_height,
    }
    if config.properties:
        snapshot["properties"] = sorted(set(config.properties))
    return SelfCheckReport(
        schema=SCHEMA, seed=config.seed, config=snapshot, properties=reports
    )


# --------------------------------------------------------------------------
# shared helpers


def _triple_key(t: Transition) -> tuple[str, str, str]:
    return (t[0], str(t[1]), t[2])


def _show_pair(p: Union[PointedMTS, PointedLTS], q: Union[PointedMTS, PointedLTS]) -> str:
    return f"left system:\n{print_system(p)}right system:\n{print_system(q)}"


def _greatest(kind: PreorderKind, p, q) -> Relation:
    if isinstance(kind, Refinement):
        return greatest_refinement(p, q)
    if isinstance(kind, CCSim):
        return greatest_ccsim(p, q)
    if isinstance(kind, PartialBisim):
        return greatest_pbsim(p, q, kind.bset)
    if isinstance(kind, Simulation):
        return greatest_simulation(p, q)
    raise TypeError(f"unknown preorder kind: {kind!r}")


def _mts_reductions(m: PointedMTS) -> Iterator[PointedMTS]:
    for t in sorted(m.must, key=_triple_key):
        yield replace(m, must=m.must - {t})
    for t in sorted(m.may - m.must, key=_triple_key):
        yield replace(m, may=m.may - {t})
    for s in sorted(m.states - {m.init}):
        keep = frozenset(tr for tr in m.may if s not in (tr[0], tr[2]))
        must = frozenset(tr for tr in m.must if s not in (tr[0], tr[2]))
        yield PointedMTS(m.states - {s}, m.actions, keep, must, m.init)


def _lts_reductions(p: PointedLTS) -> Iterator[PointedLTS]:
    for t in sorted(p.transitions, key=_triple_key):
        yield replace(p, transitions=p.transitions - {t})
    for s in sorted(p.states - {p.init}):
        keep = frozenset(tr for tr in p.transitions if s not in (tr[0], tr[2]))
        yield PointedLTS(p.states - {s}, p.signature, keep, p.init)


def _reductions(system):
    if isinstance(system, PointedMTS):
        return _mts_reductions(system)
    return _lts_reductions(system)


def shrink_pair(p, q, still_fails: Callable[[object, object], bool], budget: int = 200):
    """Greedy minimisation of a failing pair: drop transitions, then states,
    as long as the failure persists."""
    while budget > 0:
        for candidate in [(rp, q) for rp in _reductions(p)] + [(p, rq) for rq in _reductions(q)]:
            budget -= 1
            if still_fails(*candidate):
                p, q = candidate
                break
            if budget <= 0:
                break
        else:
            break
    return p, q


def _product_bounded_sizes(rng: random.Random, cfg: SelfCheckConfig) -> tuple[int, int]:
    left = rng.randint(1, min(cfg.max_states, ORACLE_PRODUCT_CAP))
    right = max(1, min(cfg.max_states, ORACLE_PRODUCT_CAP // left))
    return left, right


def _oracle_mts_pair(rng: random.Random, cfg: SelfCheckConfig):
    acts = random_alphabet(rng, cfg.max_labels)
    left_bound, _ = _product_bounded_sizes(rng, cfg)
    p = random_mts(rng, acts, left_bound, prefix="p")
    right_bound = max(1, min(cfg.max_states, ORACLE_PRODUCT_CAP // len(p.states)))
    q = random_mts(rng, acts, right_bound, prefix="q")
    return p, q


def _oracle_lts_pair(rng: random.Random, cfg: SelfCheckConfig, classes):
    sig = random_signature(rng, max_per_class=1, classes=classes)
    left_bound, _ = _product_bounded_sizes(rng, cfg)
    p = random_lts(rng, sig, left_bound, prefix="p")
    right_bound = max(1, min(cfg.max_states, ORACLE_PRODUCT_CAP // len(p.states)))
    q = random_lts(rng, sig, right_bound, prefix="q")
    return p, q


def _random_bset(rng: random.Random, acts: frozenset[Action]) -> frozenset[Action]:
    labels = sorted_actions(acts)
    return frozenset(rng.sample(labels, rng.randint(0, len(labels))))


def _oracle_disagreement(kind: PreorderKind, p, q) -> bool:
    return _greatest(kind, p, q).pairs != oracle_greatest(kind, p, q).pairs


def _oracle_case(kind: PreorderKind, p, q, failures: list[str], what: str) -> None:
    if _oracle_disagreement(kind, p, q):
        p, q = shrink_pair(p, q, lambda a, b: _oracle_disagreement(kind, a, b))
        failures.append(f"{what}: fixpoint and brute force disagree on\n{_show_pair(p, q)}")


# --------------------------------------------------------------------------
# systems and terms


@prop("systems.validate-accepts-generated")
def _prop_validate_generated(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for case in range(cfg.cases):
        if case % 2 == 0:
            m = random_mts(rng, random_alphabet(rng, cfg.max_labels), cfg.max_states)
            problems = validate_mts(m)
        else:
            p = random_lts(rng, random_signature(rng, cfg.max_labels), cfg.max_states)
            problems = validate_cc_lts(p)
        if problems:
            failures.append(f"generated system failed validation: {problems}")
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("terms.expansion-well-formed")
def _prop_term_expansion(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    ran = 0
    for case in range(cfg.cases):
        ran += 1
        if case % 2 == 0:
            acts = random_alphabet(rng, cfg.max_labels)
            t = random_term(rng, mts_term_forms(acts), cfg.term_height + 1)
            expansion = expand_mts_term(t, acts)
            problems = validate_mts(expansion)
            kind = "mts"
        else:
            sig = random_signature(rng, cfg.max_labels, classes=(COVARIANT, CONTRAVARIANT))
            t = random_term(rng, lts_term_forms(sig), cfg.term_height + 1)
            expansion = expand_lts_term(t, sig)
            problems = validate_cc_lts(expansion)
            kind = "lts"
        root = canonical_term(t)
        if problems:
            failures.append(f"expansion of {term_text(t)} is ill-formed: {problems}")
        elif expansion.init != term_text(root):
            failures.append(f"expansion of {term_text(t)} starts at {expansion.init!r}")
        elif canonical_term(root) != root:
            failures.append(f"canonical form of {term_text(t)} is not idempotent")
        else:
            for state in sorted(expansion.states):
                back = parse_term(state, kind)
                if canonical_term(back) != back or term_text(back) != state:
                    failures.append(f"state {state!r} is not a canonical printed term")
                    break
        if len(failures) >= _FAILURE_CAP:
            break
    return ran, failures


# --------------------------------------------------------------------------
# preorders


@prop("preorders.fixpoint-matches-oracle.refinement")
def _prop_oracle_refinement(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    ran = 0
    for _ in range(cfg.cases):
        ran += 1
        p, q = _oracle_mts_pair(rng, cfg)
        _oracle_case(Refinement(), p, q, failures, "refinement")
        if len(failures) >= _FAILURE_CAP:
            break
    return ran, failures


@prop("preorders.fixpoint-matches-oracle.ccsim")
def _prop_oracle_ccsim(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    ran = 0
    for _ in range(cfg.cases):
        ran += 1
        p, q = _oracle_lts_pair(rng, cfg, (COVARIANT, CONTRAVARIANT, BIVARIANT))
        _oracle_case(CCSim(), p, q, failures, "cc-simulation")
        if len(failures) >= _FAILURE_CAP:
            break
    return ran, failures


@prop("preorders.fixpoint-matches-oracle.pbsim")
def _prop_oracle_pbsim(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    ran = 0
    for _ in range(cfg.cases):
        ran += 1
        acts = random_alphabet(rng, cfg.max_labels)
        left_bound, _ = _product_bounded_sizes(rng, cfg)
        p = random_plain_lts(rng, acts, left_bound, prefix="p")
        right_bound = max(1, min(cfg.max_states, ORACLE_PRODUCT_CAP // len(p.states)))
        q = random_plain_lts(rng, acts, right_bound, prefix="q")
        kind = PartialBisim(_random_bset(rng, acts))
        _oracle_case(kind, p, q, failures, "partial bisimulation")
        if len(failures) >= _FAILURE_CAP:
            break
    return ran, failures


@prop("preorders.fixpoint-matches-oracle.simulation")
def _prop_oracle_simulation(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    ran = 0
    for _ in range(cfg.cases):
        ran += 1
        acts = random_alphabet(rng, cfg.max_labels)
        left_bound, _ = _product_bounded_sizes(rng, cfg)
        p = random_plain_lts(rng, acts, left_bound, prefix="p")
        right_bound = max(1, min(cfg.max_states, ORACLE_PRODUCT_CAP // len(p.states)))
        q = random_plain_lts(rng, acts, right_bound, prefix="q")
        _oracle_case(Simulation(), p, q, failures, "simulation")
        if len(failures) >= _FAILURE_CAP:
            break
    return ran, failures


@prop("preorders.pbsim-empty-is-simulation")
def _prop_pbsim_empty(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        acts = random_alphabet(rng, cfg.max_labels)
        left_bound, _ = _product_bounded_sizes(rng, cfg)
        p = random_plain_lts(rng, acts, left_bound, prefix="p")
        right_bound = max(1, min(cfg.max_states, ORACLE_PRODUCT_CAP // len(p.states)))
        q = random_plain_lts(rng, acts, right_bound, prefix="q")
        empty = greatest_pbsim(p, q, frozenset()).pairs
        if empty != greatest_simulation(p, q).pairs:
            failures.append(f"empty-set partial bisimulation differs from simulation on\n{_show_pair(p, q)}")
        elif empty != oracle_greatest(Simulation(), p, q).pairs:
            failures.append(f"empty-set partial bisimulation differs from the simulation oracle on\n{_show_pair(p, q)}")
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("preorders.refinement-preorder-laws")
def _prop_refinement_laws(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        acts = random_alphabet(rng, cfg.max_labels)
        p = random_mts(rng, acts, cfg.max_states, prefix="p")
        q = random_mts(rng, acts, cfg.max_states, prefix="q")
        r = random_mts(rng, acts, cfg.max_states, prefix="r")
        identity = greatest_refinement(p, p)
        if any((s, s) not in identity for s in p.states):
            failures.append(f"refinement is not reflexive on\n{print_system(p)}")
        through = compose_relations(greatest_refinement(p, q), greatest_refinement(q, r))
        if not through.pairs <= greatest_refinement(p, r).pairs:
            failures.append(f"refinement is not transitive through\n{print_system(q)}")
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("preorders.ccsim-preorder-laws")
def _prop_ccsim_laws(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        sig = random_signature(rng, max_per_class=1)
        p = random_lts(rng, sig, cfg.max_states, prefix="p")
        q = random_lts(rng, sig, cfg.max_states, prefix="q")
        r = random_lts(rng, sig, cfg.max_states, prefix="r")
        identity = greatest_ccsim(p, p)
        if any((s, s) not in identity for s in p.states):
            failures.append(f"cc-simulation is not reflexive on\n{print_system(p)}")
        through = compose_relations(greatest_ccsim(p, q), greatest_ccsim(q, r))
        if not through.pairs <= greatest_ccsim(p, r).pairs:
            failures.append(f"cc-simulation is not transitive through\n{print_system(q)}")
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("preorders.distinguishing-formula-witnesses")
def _prop_distinguishing(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for case in range(cfg.cases):
        if case % 2 == 0:
            p, q = random_mts_pair(rng, cfg.max_states, cfg.max_labels)
            kind: PreorderKind = Refinement()
            logic: Union[BLLogic, CCLogic] = BLLogic(p.actions)
            holds = mc_mts
        else:
            p, q = random_lts_pair(rng, cfg.max_states)
            kind = CCSim()
            logic = CCLogic(p.signature)
            holds = mc_cc
        rel = _greatest(kind, p, q)
        pp, qq = random_state(rng, p), random_state(rng, q)
        phi = distinguishing_formula(kind, p, pp, q, qq)
        related = (pp, qq) in rel
        if related and phi is not None:
            failures.append(f"related pair ({pp}, {qq}) got a distinguishing formula {formula_text(phi)}")
        elif not related:
            if phi is None:
                failures.append(f"unrelated pair ({pp}, {qq}) got no distinguishing formula")
            elif check_wf(phi, logic):
                failures.append(f"distinguishing formula {formula_text(phi)} is ill-formed")
            elif not holds(p, pp, phi) or holds(q, qq, phi):
                failures.append(
                    f"formula {formula_text(phi)} does not separate ({pp}, {qq}) on\n{_show_pair(p, q)}"
                )
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


# --------------------------------------------------------------------------
# logic


@prop("formulas.satisfaction-monotone.mts")
def _prop_monotone_mts(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        acts = random_alphabet(rng, cfg.max_labels)
        m = random_mts(rng, acts, cfg.max_states)
        phi = random_bl_formula(rng, acts, cfg.max_formula_depth)
        parts = list(subformulas(phi))
        target = parts[rng.randrange(len(parts))]
        weaker = replace_subformula(
            phi, target, Or(target, random_bl_formula(rng, acts, 2))
        )
        if not satisfying_states_mts(m, phi) <= satisfying_states_mts(m, weaker):
            failures.append(
                f"weakening {formula_text(phi)} to {formula_text(weaker)} lost states on\n{print_system(m)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("formulas.satisfaction-monotone.cc")
def _prop_monotone_cc(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        sig = random_signature(rng, cfg.max_labels)
        p = random_lts(rng, sig, cfg.max_states)
        phi = random_cc_formula(rng, sig, cfg.max_formula_depth)
        parts = list(subformulas(phi))
        target = parts[rng.randrange(len(parts))]
        weaker = replace_subformula(
            phi, target, Or(target, random_cc_formula(rng, sig, 2))
        )
        if not satisfying_states_cc(p, phi) <= satisfying_states_cc(p, weaker):
            failures.append(
                f"weakening {formula_text(phi)} to {formula_text(weaker)} lost states on\n{print_system(p)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("formulas.refinement-preserves-truth")
def _prop_refinement_truth(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        p, q = random_mts_pair(rng, cfg.max_states, cfg.max_labels)
        rel = greatest_refinement(p, q)
        phi = random_bl_formula(rng, p.actions, cfg.max_formula_depth)
        sat_p = satisfying_states_mts(p, phi)
        sat_q = satisfying_states_mts(q, phi)
        for pp, qq in sorted(rel.pairs):
            if pp in sat_p and qq not in sat_q:
                failures.append(
                    f"{formula_text(phi)} holds at {pp} but not at related {qq} on\n{_show_pair(p, q)}"
                )
                break
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("formulas.ccsim-preserves-truth")
def _prop_ccsim_truth(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        p, q = random_lts_pair(rng, cfg.max_states)
        rel = greatest_ccsim(p, q)
        phi = random_cc_formula(rng, p.signature, cfg.max_formula_depth)
        sat_p = satisfying_states_cc(p, phi)
        sat_q = satisfying_states_cc(q, phi)
        for pp, qq in sorted(rel.pairs):
            if pp in sat_p and qq not in sat_q:
                failures.append(
                    f"{formula_text(phi)} holds at {pp} but not at related {qq} on\n{_show_pair(p, q)}"
                )
                break
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("formulas.simplify-preserves-meaning")
def _prop_simplify(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for case in range(cfg.cases):
        if case % 2 == 0:
            acts = random_alphabet(rng, cfg.max_labels)
            m = random_mts(rng, acts, cfg.max_states)
            phi = random_bl_formula(rng, acts, cfg.max_formula_depth)
            same = satisfying_states_mts(m, phi) == satisfying_states_mts(m, simplify(phi))
        else:
            sig = random_signature(rng, cfg.max_labels)
            p = random_lts(rng, sig, cfg.max_states)
            phi = random_cc_formula(rng, sig, cfg.max_formula_depth)
            same = satisfying_states_cc(p, phi) == satisfying_states_cc(p, simplify(phi))
        if not same:
            failures.append(
                f"simplify changed the meaning of {formula_text(phi)} "
                f"(now {formula_text(simplify(phi))})"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


# --------------------------------------------------------------------------
# text round trips


@prop("textio.system-roundtrip")
def _prop_system_roundtrip(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for case in range(cfg.cases):
        if case % 2 == 0:
            system: Union[PointedMTS, PointedLTS] = random_mts(
                rng, random_alphabet(rng, cfg.max_labels), cfg.max_states
            )
        else:
            system = random_lts(rng, random_signature(rng, cfg.max_labels), cfg.max_states)
        text = print_system(system)
        parsed = parse_system_details(text, strict=True)
        if parsed.system != system:
            failures.append(f"round trip changed the system:\n{text}")
        elif parsed.warnings:
            failures.append(f"canonical text produced warnings: {parsed.warnings}")
        elif print_system(parsed.system) != text:
            failures.append(f"printing is not a fixpoint on:\n{text}")
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("textio.formula-roundtrip")
def _prop_formula_roundtrip(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        acts = random_alphabet(rng, cfg.max_labels)
        m = random_mts(rng, acts, cfg.max_states)
        phi = random_bl_formula(rng, acts, cfg.max_formula_depth)
        text = formula_text(phi)
        back = parse_formula(text, BLLogic(acts))
        if formula_text(back) != text:
            failures.append(f"formula text is not a parse/print fixpoint: {text}")
        elif satisfying_states_mts(m, back) != satisfying_states_mts(m, phi):
            failures.append(f"reparsing changed the meaning of {text}")
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("textio.term-roundtrip")
def _prop_term_roundtrip(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for case in range(cfg.cases):
        if case % 2 == 0:
            acts = random_alphabet(rng, cfg.max_labels)
            t = random_term(rng, mts_term_forms(acts), cfg.term_height + 1)
            kind = "mts"
        else:
            sig = random_signature(rng, cfg.max_labels, classes=(COVARIANT, CONTRAVARIANT))
            t = random_term(rng, lts_term_forms(sig), cfg.term_height + 1)
            kind = "lts"
        text = term_text(t)
        back = parse_term(text, kind)
        root = canonical_term(t)
        if term_text(back) != text:
            failures.append(f"term text is not a parse/print fixpoint: {text}")
        elif parse_term(term_text(root), kind) != root:
            failures.append(f"canonical term does not reparse to itself: {term_text(root)}")
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("textio.must-twin-repair")
def _prop_must_twin_repair(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        m = random_mts(rng, random_alphabet(rng, cfg.max_labels), cfg.max_states)
        # Print by hand, leaving out the may twins of must transitions.
        lines = ["mts"]
        if m.actions:
            lines.append("actions: " + " ".join(str(a) for a in sorted_actions(m.actions)))
        lines.append("states: " + " ".join(sorted(m.states)))
        lines.append(f"init: {m.init}")
        for src, lab, dst in sorted(m.may - m.must, key=_triple_key):
            lines.append(f"may: {src} {lab} {dst}")
        for src, lab, dst in sorted(m.must, key=_triple_key):
            lines.append(f"must: {src} {lab} {dst}")
        text = "\n".join(lines) + "\n"
        parsed = parse_system_details(text)
        if parsed.system != m:
            failures.append(f"twin repair did not rebuild the system from:\n{text}")
        elif len(parsed.warnings) != len(m.must):
            failures.append(
                f"expected {len(m.must)} repair warnings, got {len(parsed.warnings)} from:\n{text}"
            )
        else:
            strict_raised = False
            try:
                parse_system(text, strict=True)
            except ValueError:
                strict_raised = True
            if strict_raised != bool(m.must):
                failures.append(f"strict parsing disagreed with the presence of bare musts:\n{text}")
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("textio.golden-files-stable")
def _prop_golden_files(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    root = resources.files("modalsim").joinpath("fixtures")
    names = sorted(
        entry.name for entry in root.iterdir() if entry.name.endswith((".mts", ".lts"))
    )
    if not names:
        return 0, ["no golden fixture files found"]
    for name in names:
        text = root.joinpath(name).read_text(encoding="utf-8")
        parsed = parse_system_details(text, strict=True)
        if parsed.warnings:
            failures.append(f"{name}: parsing warned: {parsed.warnings}")
        elif print_system(parsed.system, parsed.name) != text:
            failures.append(f"{name}: not in canonical print form")
        elif parse_system(print_system(parsed.system, parsed.name)) != parsed.system:
            failures.append(f"{name}: parse/print round trip changed the system")
    return len(names), failures


# --------------------------------------------------------------------------
# translations


@prop("translate.embedding-preserves-ccsim")
def _prop_embedding_corollary(cfg: SelfCheckConfig, rng: random.Random):
    def disagreement(p: PointedLTS, q: PointedLTS) -> Optional[str]:
        cc = greatest_ccsim(p, q).pairs
        mp, mq = mts_of_lts(p), mts_of_lts(q)
        ref = greatest_refinement(mp, mq).pairs
        for pp in sorted(p.states):
            for qq in sorted(q.states):
                if ((pp, qq) in cc) != ((pp, qq) in ref):
                    return f"state pair ({pp}, {qq})"
        sink = fresh_sink_name(p.states)
        for x in sorted(mq.states):
            if (sink, x) not in ref:
                return f"sink row pair ({sink}, {x})"
        return None

    failures: list[str] = []
    for _ in range(cfg.cases):
        p, q = random_lts_pair(rng, cfg.max_states)
        what = disagreement(p, q)
        if what is not None:
            p, q = shrink_pair(p, q, lambda a, b: disagreement(a, b) is not None)
            failures.append(
                f"embedding broke the simulation/refinement match at {disagreement(p, q)} on\n{_show_pair(p, q)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("translate.encoding-preserves-refinement")
def _prop_encoding_corollary(cfg: SelfCheckConfig, rng: random.Random):
    def disagrees(m: PointedMTS, n: PointedMTS) -> bool:
        return (
            greatest_refinement(m, n).pairs
            != greatest_ccsim(lts_of_mts(m), lts_of_mts(n)).pairs
        )

    failures: list[str] = []
    for _ in range(cfg.cases):
        m, n = random_mts_pair(rng, cfg.max_states, cfg.max_labels)
        if disagrees(m, n):
            m, n = shrink_pair(m, n, disagrees)
            failures.append(f"encoding broke the refinement/simulation match on\n{_show_pair(m, n)}")
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("translate.encoding-roundtrip")
def _prop_encoding_roundtrip(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        m = random_mts(rng, random_alphabet(rng, cfg.max_labels), cfg.max_states)
        back = mts_of_encoded_lts(lts_of_mts(m))
        if back != m:
            failures.append(f"decoding the encoding changed the system:\n{print_system(m)}")
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("translate.encoding-range-rejects")
def _prop_encoding_range(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    ran = 0
    for _ in range(cfg.cases):
        ran += 1
        m = random_mts(rng, random_alphabet(rng, cfg.max_labels), cfg.max_states)
        if not m.must:
            forced = (m.init, sorted_actions(m.actions)[0], m.init)
            m = replace(m, may=m.may | {forced}, must=m.must | {forced})
        encoded = lts_of_mts(m)
        sig = encoded.signature
        first_cv = sorted_actions(sig.covariant)[0]
        mutants = [
            (
                "a bivariant label slipped through",
                replace(
                    encoded,
                    signature=CCSignature(
                        sig.covariant, sig.contravariant, frozenset({Action("z")})
                    ),
                ),
            ),
            (
                "an undecorated covariant label slipped through",
                replace(
                    encoded,
                    signature=CCSignature(
                        sig.covariant | {Action("z")}, sig.contravariant, frozenset()
                    ),
                ),
            ),
            (
                "mismatched base alphabets slipped through",
                replace(
                    encoded,
                    signature=CCSignature(
                        sig.covariant,
                        frozenset(
                            lab
                            for lab in sig.contravariant
                            if lab.base != first_cv.base
                        ),
                        frozenset(),
                    ),
                ),
            ),
        ]
        cv_triples = sorted(
            (t for t in encoded.transitions if t[1].mark == "cv"), key=_triple_key
        )
        src, lab, dst = cv_triples[0]
        broken = replace(
            encoded,
            transitions=encoded.transitions - {(src, Action(mark="ct", base=lab.base), dst)},
        )
        mutants.append(("a missing contravariant twin slipped through", broken))
        if mts_of_encoded_lts(encoded) != m:
            failures.append("the unmutated encoding failed to invert")
        for what, mutant in mutants:
            try:
                mts_of_encoded_lts(mutant)
            except NotInEncodingRange:
                continue
            failures.append(what)
        if len(failures) >= _FAILURE_CAP:
            break
    return ran, failures


@prop("translate.plain-reading-matches-pbsim")
def _prop_plain_reading(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        acts = random_alphabet(rng, cfg.max_labels)
        p = random_plain_lts(rng, acts, cfg.max_states, prefix="p")
        q = random_plain_lts(rng, acts, cfg.max_states, prefix="q")
        bset = _random_bset(rng, acts)
        direct = greatest_pbsim(p, q, bset).pairs
        through = greatest_refinement(
            mts_of_plain_lts(q, bset), mts_of_plain_lts(p, bset)
        ).inverse().pairs
        if direct != through:
            failures.append(
                f"modal reading with set {sorted_actions(bset)} disagreed on\n{_show_pair(p, q)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("translate.results-validate")
def _prop_translations_validate(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        sig = random_signature(rng, cfg.max_labels)
        p = random_lts(rng, sig, cfg.max_states)
        m = random_mts(rng, random_alphabet(rng, cfg.max_labels), cfg.max_states)
        checks = [
            ("embedding", validate_mts(mts_of_lts(p))),
            ("encoding", validate_cc_lts(lts_of_mts(m))),
            ("plain reading", validate_mts(mts_of_plain_lts(p, _random_bset(rng, sig.actions)))),
            ("bivariant elimination", validate_cc_lts(eliminate_bivariant(p))),
        ]
        flat = random_lts(
            rng,
            random_signature(rng, cfg.max_labels, classes=(COVARIANT, CONTRAVARIANT)),
            cfg.max_states,
        )
        checks.append(("class decoration", validate_cc_lts(decorate_by_class(flat))))
        for what, problems in checks:
            if problems:
                failures.append(f"{what} produced an ill-formed system: {problems}")
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("translate.formula-codec-roundtrip")
def _prop_formula_codec(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        acts = random_alphabet(rng, cfg.max_labels)
        phi = random_bl_formula(rng, acts, cfg.max_formula_depth)
        if decode_formula(encode_formula(phi)) != phi:
            failures.append(f"decode(encode(..)) changed {formula_text(phi)}")
        encoded_sig = lts_of_mts(
            PointedMTS(frozenset({"s"}), acts, frozenset(), frozenset(), "s")
        ).signature
        psi = random_cc_formula(rng, encoded_sig, cfg.max_formula_depth)
        if encode_formula(decode_formula(psi)) != psi:
            failures.append(f"encode(decode(..)) changed {formula_text(psi)}")
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("translate.formula-embedding-truth")
def _prop_embed_truth(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        sig = random_signature(rng, cfg.max_labels)
        p = random_lts(rng, sig, cfg.max_states)
        s = random_state(rng, p)
        phi = random_cc_formula(rng, sig, cfg.max_formula_depth)
        if mc_cc(p, s, phi) != mc_mts(mts_of_lts(p), s, embed_formula(phi)):
            failures.append(
                f"embedding changed the truth of {formula_text(phi)} at {s} on\n{print_system(p)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("translate.formula-encoding-truth")
def _prop_encode_truth(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        m = random_mts(rng, random_alphabet(rng, cfg.max_labels), cfg.max_states)
        s = random_state(rng, m)
        phi = random_bl_formula(rng, m.actions, cfg.max_formula_depth)
        if mc_mts(m, s, phi) != mc_cc(lts_of_mts(m), s, encode_formula(phi)):
            failures.append(
                f"encoding changed the truth of {formula_text(phi)} at {s} on\n{print_system(m)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("translate.formula-decoding-truth")
def _prop_decode_truth(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        m = random_mts(rng, random_alphabet(rng, cfg.max_labels), cfg.max_states)
        encoded = lts_of_mts(m)
        back = mts_of_encoded_lts(encoded)
        s = random_state(rng, encoded)
        psi = random_cc_formula(rng, encoded.signature, cfg.max_formula_depth)
        if mc_cc(encoded, s, psi) != mc_mts(back, s, decode_formula(psi)):
            failures.append(
                f"decoding changed the truth of {formula_text(psi)} at {s} on\n{print_system(m)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("translate.approximation-sound")
def _prop_approx_sound(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        sig = random_signature(rng, cfg.max_labels)
        p = random_lts(rng, sig, cfg.max_states)
        s = random_state(rng, p)
        phi = random_bl_formula(rng, sig.actions, cfg.max_formula_depth)
        if mc_mts(mts_of_lts(p), s, phi) and not mc_cc(p, s, approximate_formula(phi, sig)):
            failures.append(
                f"approximation of {formula_text(phi)} is unsound at {s} on\n{print_system(p)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


def _approx_converse_violation(
    p: PointedLTS, s: str, phi: Formula
) -> bool:
    sig = p.signature
    return mc_cc(p, s, approximate_formula(phi, sig)) and not mc_mts(mts_of_lts(p), s, phi)


@prop("translate.approximation-complete-existential")
def _prop_approx_existential(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        sig = random_signature(rng, cfg.max_labels)
        p = random_lts(rng, sig, cfg.max_states)
        s = random_state(rng, p)
        phi = random_bl_formula(rng, sig.actions, cfg.max_formula_depth, existential=True)
        if not is_existential(phi):
            failures.append(f"generator produced a non-existential formula {formula_text(phi)}")
        elif _approx_converse_violation(p, s, phi):
            failures.append(
                f"approximation of existential {formula_text(phi)} is incomplete at {s} on\n{print_system(p)}"
            )
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("translate.approximation-complete-no-covariant")
def _prop_approx_no_covariant(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        sig = random_signature(rng, cfg.max_labels, classes=(CONTRAVARIANT, BIVARIANT))
        p = random_lts(rng, sig, cfg.max_states)
        s = random_state(rng, p)
        phi = random_bl_formula(rng, sig.actions, cfg.max_formula_depth)
        if _approx_converse_violation(p, s, phi):
            failures.append(
                f"approximation of {formula_text(phi)} is incomplete without covariant labels "
                f"at {s} on\n{print_system(p)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("translate.approximation-complete-unguarded", expect_fail=True)
def _prop_approx_unguarded(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    a = Action("a")
    pinned = PointedLTS(frozenset({"s0"}), signature(cov=[a]), frozenset(), "s0")
    pinned_phi: Formula = Box(a, Bottom())
    if _approx_converse_violation(pinned, "s0", pinned_phi):
        failures.append(
            "known hole: [a]ff approximates to tt over a covariant-only signature, "
            "but the embedded state can always step to the sink"
        )
    for _ in range(cfg.cases):
        sig = random_signature(rng, cfg.max_labels)
        p = random_lts(rng, sig, cfg.max_states)
        s = random_state(rng, p)
        phi = random_bl_formula(rng, sig.actions, cfg.max_formula_depth)
        if _approx_converse_violation(p, s, phi):
            failures.append(
                f"converse fails for {formula_text(phi)} at {s} on\n{print_system(p)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases + 1, failures


@prop("translate.composition-bound-mts")
def _prop_composition_mts(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    a = Action("a")
    pin = PointedMTS(frozenset({"m"}), frozenset({a}), frozenset(), frozenset(), "m")
    pin_back = strip_decorations(mts_of_lts(lts_of_mts(pin)))
    if ("m", "m") not in greatest_refinement(pin_back, pin):
        failures.append("the round trip is not below the one-state pinned system")
    if ("m", "m") in greatest_refinement(pin, pin_back):
        failures.append("the inequality is not strict on the one-state pinned system")
    for _ in range(cfg.cases):
        m = random_mts(rng, random_alphabet(rng, cfg.max_labels), cfg.max_states)
        back = strip_decorations(mts_of_lts(lts_of_mts(m)))
        rel = greatest_refinement(back, m)
        for s in sorted(m.states):
            if (s, s) not in rel:
                failures.append(
                    f"round trip is not below the original at state {s} on\n{print_system(m)}"
                )
                break
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases + 1, failures


@prop("translate.composition-bound-lts")
def _prop_composition_lts(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    pin = PointedLTS(frozenset({"p"}), signature(cov=["a"]), frozenset(), "p")
    pin_img = strip_decorations(lts_of_mts(mts_of_lts(pin)), target=pin.signature)
    if ("p", "p") not in greatest_ccsim(pin, pin_img):
        failures.append("the one-state pinned system is not below its round trip")
    if ("p", "p") in greatest_ccsim(pin_img, pin):
        failures.append("the inequality is not strict on the one-state pinned system")
    for _ in range(cfg.cases):
        sig = random_signature(rng, cfg.max_labels)
        p = random_lts(rng, sig, cfg.max_states)
        image = strip_decorations(lts_of_mts(mts_of_lts(p)), target=sig)
        rel = greatest_ccsim(p, image)
        for s in sorted(p.states):
            if (s, s) not in rel:
                failures.append(
                    f"original is not below its round trip at state {s} on\n{print_system(p)}"
                )
                break
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases + 1, failures


@prop("translate.decorated-bridge")
def _prop_decorated_bridge(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    a = Action("a")
    pin_p = PointedLTS(frozenset({"p"}), signature(cov=[a]), frozenset(), "p")
    pin_q = PointedMTS(
        frozenset({"q"}), frozenset({a}), frozenset({("q", a, "q")}), frozenset(), "q"
    )
    if ("p", "q") not in greatest_refinement(mts_of_lts(pin_p), pin_q):
        failures.append("pinned pair lost the embedded refinement")
    if ("p", "q") in greatest_ccsim(decorate_by_class(pin_p), lts_of_mts(pin_q)):
        failures.append("pinned pair unexpectedly satisfies the decorated simulation")
    for _ in range(cfg.cases):
        sig = random_signature(rng, cfg.max_labels, classes=(COVARIANT, CONTRAVARIANT))
        p = random_lts(rng, sig, cfg.max_states, prefix="p")
        q = random_mts(rng, sig.actions, cfg.max_states, prefix="q")
        bridge = greatest_ccsim(decorate_by_class(p), lts_of_mts(q))
        target = greatest_refinement(mts_of_lts(p), q)
        for pair in sorted(bridge.pairs):
            if pair[0] in p.states and pair not in target:
                failures.append(
                    f"decorated simulation at {pair} did not transfer to refinement on\n{_show_pair(p, q)}"
                )
                break
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases + 1, failures


@prop("translate.eliminate-bivariant-preserves")
def _prop_eliminate_bivariant(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        p, q = random_lts_pair(rng, cfg.max_states)
        before = greatest_ccsim(p, q).pairs
        after = greatest_ccsim(eliminate_bivariant(p), eliminate_bivariant(q)).pairs
        for pp in sorted(p.states):
            for qq in sorted(q.states):
                if ((pp, qq) in before) != ((pp, qq) in after):
                    failures.append(
                        f"bivariant elimination changed pair ({pp}, {qq}) on\n{_show_pair(p, q)}"
                    )
                    break
            else:
                continue
            break
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


# --------------------------------------------------------------------------
# characteristic formulae


def _mts_term_universe(
    acts: frozenset[Action], height: int
) -> tuple[list[Term], PointedMTS]:
    terms = enumerate_mts_terms(acts, height)
    states: set[str] = set()
    may: set[Transition] = set()
    must: set[Transition] = set()
    for t in terms:
        expansion = expand_mts_term(t, acts)
        states |= expansion.states
        may |= expansion.may
        must |= expansion.must
    universe = PointedMTS(frozenset(states), acts, frozenset(may), frozenset(must), "0")
    return terms, universe


def _larsen_mismatches(
    terms: list[Term],
    universe: PointedMTS,
    acts: frozenset[Action],
    literal: bool,
) -> list[str]:
    big = greatest_refinement(universe, universe)
    mismatches: list[str] = []
    for t in terms:
        result = characteristic_formula(t, acts, literal_prefix_clause=literal)
        sat = satisfying_states_mts(universe, result.formula)
        row = frozenset(s for s in universe.states if (term_text(t), s) in big.pairs)
        if sat != row:
            extra = sorted(sat - row)
            missing = sorted(row - sat)
            mismatches.append(
                f"term {term_text(t)}: formula satisfied beyond the preorder at {extra}, "
                f"missing {missing}"
            )
    return mismatches


@prop("charform.larsen-characteristic")
def _prop_larsen(cfg: SelfCheckConfig, rng: random.Random):
    acts = frozenset(pool_labels(cfg.max_labels))
    terms, universe = _mts_term_universe(acts, cfg.term_height)
    mismatches = _larsen_mismatches(terms, universe, acts, literal=False)
    return len(terms), mismatches[:_FAILURE_CAP]


@prop("charform.simplified-equivalent")
def _prop_simplified_equivalent(cfg: SelfCheckConfig, rng: random.Random):
    acts = frozenset(pool_labels(cfg.max_labels))
    terms, universe = _mts_term_universe(acts, cfg.term_height)
    failures: list[str] = []
    for t in terms:
        result = characteristic_formula(t, acts)
        full = satisfying_states_mts(universe, result.formula)
        lean = satisfying_states_mts(universe, result.simplified)
        if full != lean:
            failures.append(
                f"term {term_text(t)}: simplified form disagrees "
                f"({formula_text(result.simplified)} vs {formula_text(result.formula)})"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return len(terms), failures


@prop("charform.literal-prefix-clause-fails", expect_fail=True)
def _prop_literal_clause(cfg: SelfCheckConfig, rng: random.Random):
    acts = frozenset(pool_labels(1))
    terms, universe = _mts_term_universe(acts, max(cfg.term_height, 2))
    mismatches = _larsen_mismatches(terms, universe, acts, literal=True)
    return len(terms), mismatches[:_FAILURE_CAP]


@prop("charform.cc-transport")
def _prop_cc_transport(cfg: SelfCheckConfig, rng: random.Random):
    acts = frozenset(pool_labels(cfg.max_labels))
    height = cfg.term_height
    terms = enumerate_mts_terms(acts, height)
    encoded_sig = lts_of_mts(
        PointedMTS(frozenset({"s"}), acts, frozenset(), frozenset(), "s")
    ).signature

    left_states: set[str] = set()
    left_trans: set[Transition] = set()
    inits: dict[str, str] = {}
    for t in terms:
        expansion = expand_lts_term(encode_term(t), encoded_sig)
        left_states |= expansion.states
        left_trans |= expansion.transitions
        inits[term_text(t)] = expansion.init
    left = PointedLTS(
        frozenset(left_states), encoded_sig, frozenset(left_trans), sorted(left_states)[0]
    )

    right_states: set[str] = set()
    right_trans: set[Transition] = set()
    for s_term in enumerate_lts_terms(encoded_sig, height):
        expansion = expand_lts_term(s_term, encoded_sig)
        right_states |= expansion.states
        right_trans |= expansion.transitions
    right = PointedLTS(
        frozenset(right_states), encoded_sig, frozenset(right_trans), sorted(right_states)[0]
    )

    big = greatest_ccsim(left, right)
    failures: list[str] = []
    for t in terms:
        phi = encode_formula(characteristic_formula(t, acts).formula)
        sat = satisfying_states_cc(right, phi)
        row = frozenset(s for s in right.states if (inits[term_text(t)], s) in big.pairs)
        if sat != row:
            extra = sorted(sat - row)
            missing = sorted(row - sat)
            failures.append(
                f"term {term_text(t)}: encoded formula satisfied beyond the preorder at {extra}, "
                f"missing {missing}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return len(terms), failures


@prop("charform.omega-satisfied-everywhere")
def _prop_omega_formula(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        acts = random_alphabet(rng, cfg.max_labels)
        m = random_mts(rng, acts, cfg.max_states)
        result = characteristic_formula(Omega(), acts)
        if result.simplified != Top():
            failures.append(
                f"loosest-process formula simplified to {formula_text(result.simplified)}"
            )
        elif satisfying_states_mts(m, result.formula) != m.states:
            failures.append(
                f"loosest-process formula rejected a state of\n{print_system(m)}"
            )
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


# --------------------------------------------------------------------------
# institutions


def _random_mts_morphism(rng: random.Random, cfg: SelfCheckConfig) -> MtsSignatureMorphism:
    target = random_alphabet(rng, cfg.max_labels)
    choices = sorted_actions(target)
    source = [Action(f"x{i}") for i in range(rng.randint(1, 3))]
    mapping = {a: choices[rng.randrange(len(choices))] for a in source}
    return mts_morphism(source, target, mapping)


def _random_cc_morphism(rng: random.Random, cfg: SelfCheckConfig) -> CCSignatureMorphism:
    target = random_signature(rng, max_per_class=cfg.max_labels)
    buckets: dict[str, list[Action]] = {COVARIANT: [], CONTRAVARIANT: [], BIVARIANT: []}
    mapping: dict[Action, Action] = {}
    fresh = 0
    for cls, labels in (
        (COVARIANT, target.covariant),
        (CONTRAVARIANT, target.contravariant),
        (BIVARIANT, target.bivariant),
    ):
        choices = sorted_actions(labels)
        if not choices:
            continue
        for _ in range(rng.randint(0, 2)):
            a = Action(f"x{fresh}")
            fresh += 1
            buckets[cls].append(a)
            mapping[a] = choices[rng.randrange(len(choices))]
    source = signature(
        cov=buckets[COVARIANT], con=buckets[CONTRAVARIANT], bi=buckets[BIVARIANT]
    )
    return cc_morphism(source, target, mapping)


@prop("institutions.satisfaction-condition.mts")
def _prop_satisfaction_mts(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        f = _random_mts_morphism(rng, cfg)
        m = random_mts(rng, f.target, cfg.max_states)
        s = random_state(rng, m)
        phi = random_bl_formula(rng, f.source, cfg.max_formula_depth)
        if not check_satisfaction_condition(f, m, s, phi):
            failures.append(
                f"satisfaction condition broke for {formula_text(phi)} at {s} on\n{print_system(m)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("institutions.satisfaction-condition.cc")
def _prop_satisfaction_cc(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        f = _random_cc_morphism(rng, cfg)
        p = random_lts(rng, f.target, cfg.max_states)
        s = random_state(rng, p)
        phi = random_cc_formula(rng, f.source, cfg.max_formula_depth)
        if not check_satisfaction_condition(f, p, s, phi):
            failures.append(
                f"satisfaction condition broke for {formula_text(phi)} at {s} on\n{print_system(p)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("institutions.morphism-composition")
def _prop_morphism_composition(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        f = _random_mts_morphism(rng, cfg)
        mid_choices = sorted_actions(f.source)
        inner = [Action(f"y{i}") for i in range(rng.randint(1, 3))]
        g = mts_morphism(
            inner,
            f.source,
            {a: mid_choices[rng.randrange(len(mid_choices))] for a in inner},
        )
        composed = compose_morphisms(f, g)
        phi = random_bl_formula(rng, g.source, cfg.max_formula_depth)
        if sen_map(composed, phi) != sen_map(f, sen_map(g, phi)):
            failures.append(f"sentence maps disagreed under composition for {formula_text(phi)}")
        m = random_mts(rng, f.target, cfg.max_states)
        if reduct(m, composed) != reduct(reduct(m, f), g):
            failures.append(f"reducts disagreed under composition on\n{print_system(m)}")
        if compose_morphisms(f, identity_morphism(f.source)) != f:
            failures.append("composing with the source identity changed the morphism")
        if compose_morphisms(identity_morphism(f.target), f) != f:
            failures.append("composing with the target identity changed the morphism")
        if len(failures) >= _FAILURE_CAP:
            break
    return cfg.cases, failures


@prop("institutions.morphism-condition")
def _prop_morphism_condition(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        m = random_mts(rng, random_alphabet(rng, cfg.max_labels), cfg.max_states)
        s = random_state(rng, m)
        encoded_sig = lts_of_mts(m).signature
        phi = random_cc_formula(rng, encoded_sig, cfg.max_formula_depth)
        if not check_morphism_condition(m, s, phi):
            failures.append(
                f"institution morphism condition broke for {formula_text(phi)} at {s} on\n{print_system(m)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("institutions.weakly-final-cc")
def _prop_weakly_final(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        sig = random_signature(rng, cfg.max_labels, classes=(COVARIANT, CONTRAVARIANT))
        w = weakly_final_implementation(sig)
        p = random_lts(rng, sig, cfg.max_states)
        rel = greatest_ccsim(p, w)
        if any((s, w.init) not in rel for s in p.states):
            failures.append(f"some state does not simulate into the candidate on\n{print_system(p)}")
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("institutions.universal-spec-cc")
def _prop_universal_spec(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        sig = random_signature(rng, cfg.max_labels, classes=(COVARIANT, CONTRAVARIANT))
        w = universal_specification(sig)
        p = random_lts(rng, sig, cfg.max_states)
        rel = greatest_ccsim(w, p)
        if any((w.init, s) not in rel for s in p.states):
            failures.append(f"the candidate does not simulate into some state of\n{print_system(p)}")
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


@prop("institutions.weakly-initial-mts")
def _prop_weakly_initial_mts(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    for _ in range(cfg.cases):
        acts = random_alphabet(rng, cfg.max_labels)
        u = universal_mts(acts)
        m = random_mts(rng, acts, cfg.max_states)
        rel = greatest_refinement(u, m)
        if any((u.init, s) not in rel for s in m.states):
            failures.append(f"the may-everything system is not below every state of\n{print_system(m)}")
            if len(failures) >= _FAILURE_CAP:
                break
    return cfg.cases, failures


def _small_mts_candidates(acts: frozenset[Action]) -> Iterator[PointedMTS]:
    labels = sorted_actions(acts)
    for n in (1, 2):
        states = [f"w{i}" for i in range(n)]
        triples = [(s, a, d) for s in states for a in labels for d in states]
        for may_bits in range(1 << len(triples)):
            may = frozenset(t for i, t in enumerate(triples) if may_bits >> i & 1)
            may_list = sorted(may, key=_triple_key)
            for must_bits in range(1 << len(may_list)):
                must = frozenset(
                    t for i, t in enumerate(may_list) if must_bits >> i & 1
                )
                for init in states:
                    yield PointedMTS(frozenset(states), acts, may, must, init)


def _small_lts_candidates(sig: CCSignature) -> Iterator[PointedLTS]:
    labels = sorted_actions(sig.actions)
    for n in (1, 2):
        states = [f"w{i}" for i in range(n)]
        triples = [(s, a, d) for s in states for a in labels for d in states]
        for bits in range(1 << len(triples)):
            trans = frozenset(t for i, t in enumerate(triples) if bits >> i & 1)
            for init in states:
                yield PointedLTS(frozenset(states), sig, trans, init)


@prop("institutions.no-weakly-final-mts")
def _prop_no_weakly_final(cfg: SelfCheckConfig, rng: random.Random):
    demanding, silent = final_obstruction_pair()
    failures: list[str] = []
    if (demanding.init, demanding.init) not in greatest_refinement(demanding, demanding):
        failures.append("the demanding obstruction system does not even reach itself")
    if (silent.init, silent.init) not in greatest_refinement(silent, silent):
        failures.append("the silent obstruction system does not even reach itself")
    count = 0
    for candidate in _small_mts_candidates(demanding.actions):
        count += 1
        from_demanding = (demanding.init, candidate.init) in greatest_refinement(
            demanding, candidate
        )
        from_silent = (silent.init, candidate.init) in greatest_refinement(
            silent, candidate
        )
        if from_demanding and from_silent:
            failures.append(
                f"candidate admits arrows from both obstruction systems:\n{print_system(candidate)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return count + 2, failures


@prop("institutions.no-weakly-initial-cc-bivariant")
def _prop_no_weakly_initial(cfg: SelfCheckConfig, rng: random.Random):
    looping, silent = initial_obstruction_pair()
    failures: list[str] = []
    if (looping.init, looping.init) not in greatest_ccsim(looping, looping):
        failures.append("the looping obstruction system does not even reach itself")
    if (silent.init, silent.init) not in greatest_ccsim(silent, silent):
        failures.append("the silent obstruction system does not even reach itself")
    count = 0
    for candidate in _small_lts_candidates(looping.signature):
        count += 1
        into_looping = (candidate.init, looping.init) in greatest_ccsim(
            candidate, looping
        )
        into_silent = (candidate.init, silent.init) in greatest_ccsim(candidate, silent)
        if into_looping and into_silent:
            failures.append(
                f"candidate admits arrows into either obstruction system:\n{print_system(candidate)}"
            )
            if len(failures) >= _FAILURE_CAP:
                break
    return count + 2, failures


# --------------------------------------------------------------------------
# sampling determinism


@prop("sampling.deterministic")
def _prop_sampling_deterministic(cfg: SelfCheckConfig, rng: random.Random):
    failures: list[str] = []
    one = random.Random("determinism:probe")
    two = random.Random("determinism:probe")
    for _ in range(cfg.cases):
        pair_one = random_mts_pair(one, cfg.max_states, cfg.max_labels)
        pair_two = random_mts_pair(two, cfg.max_states, cfg.max_labels)
        if pair_one != pair_two:
            failures.append("system generation diverged under one seed")
        sig_one = random_signature(one, cfg.max_labels)
        sig_two = random_signature(two, cfg.max_labels)
        if sig_one != sig_two:
            failures.append("signature generation diverged under one seed")
        phi_one = random_cc_formula(one, sig_one, cfg.max_formula_depth)
        phi_two = random_cc_formula(two, sig_two, cfg.max_formula_depth)
        if phi_one != phi_two:
            failures.append("formula generation diverged under one seed")
        term_one = random_term(one, mts_term_forms(pair_one[0].actions), cfg.term_height)
        term_two = random_term(two, mts_term_forms(pair_two[0].actions), cfg.term_height)
        if term_one != term_two:
            failures.append("term generation diverged under one seed")
        if failures:
            break
    return cfg.cases, failures
