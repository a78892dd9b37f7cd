"""Modal transition systems, covariant-contravariant simulation, and the
translations that connect them.

The package covers two behavioural worlds and the bridges between them:

- :mod:`modalsim.systems`: pointed modal transition systems (may/must) and
  labelled transition systems whose alphabet is classified into covariant,
  contravariant and bivariant labels.
- :mod:`modalsim.preorders`: greatest modal refinement,
  covariant-contravariant simulation, partial bisimulation and plain
  simulation, each with a brute-force oracle and distinguishing formulae.
- :mod:`modalsim.formulas`: the boolean modal logics of both worlds with
  model checking over states.
- :mod:`modalsim.translate`: embeddings and encodings between the two views,
  together with formula maps and a one-sided approximation.
- :mod:`modalsim.terms` and :mod:`modalsim.charform`: finite process terms,
  their expansions, and characteristic formulae.
- :mod:`modalsim.institutions`: signature morphisms, reducts and the
  satisfaction conditions that make both views institutions.
- :mod:`modalsim.textio`: a small text format for systems, formulae and
  terms; :mod:`modalsim.cli` exposes everything as the ``modalsim`` command.
- :mod:`modalsim.selfcheck`: a deterministic, seedable property suite.
"""

from .charform import (
    CharFormResult,
    characteristic_formula,
    characteristic_formula_cc,
    encode_term,
    is_omega_equivalent,
)
from .formulas import (
    And,
    BLLogic,
    Bottom,
    Box,
    CCLogic,
    Diamond,
    Formula,
    LogicKind,
    Or,
    Top,
    check_wf,
    conj,
    disj,
    formula_text,
    is_existential,
    mc_cc,
    mc_mts,
    modal_depth,
    satisfying_states_cc,
    satisfying_states_mts,
    simplify,
)
from .institutions import (
    CCSignatureMorphism,
    MtsSignatureMorphism,
    SignatureMorphism,
    WITNESS_KINDS,
    canonical_witness,
    cc_morphism,
    check_morphism_condition,
    check_satisfaction_condition,
    compose_morphisms,
    final_obstruction_pair,
    identity_morphism,
    initial_obstruction_pair,
    morphism_formula_map,
    morphism_model_map,
    morphism_signature_map,
    mts_morphism,
    reduct,
    sen_map,
    universal_specification,
    weakly_final_implementation,
    weakly_initial_mts,
)
from .preorders import (
    CCSim,
    PartialBisim,
    PreorderKind,
    Refinement,
    Relation,
    Simulation,
    compose_relations,
    distinguishing_formula,
    fixpoint_rounds,
    greatest_ccsim,
    greatest_pbsim,
    greatest_refinement,
    greatest_simulation,
    oracle_greatest,
)
from .selfcheck import (
    PropertyReport,
    SelfCheckConfig,
    SelfCheckReport,
    property_ids,
    run_property,
    run_selfcheck,
)
from .systems import (
    Action,
    CCSignature,
    PointedLTS,
    PointedMTS,
    action,
    actions,
    cv,
    ct,
    lts,
    mts,
    plain_signature,
    rename_actions,
    signature,
    sorted_actions,
    universal_mts,
    validate_cc_lts,
    validate_mts,
)
from .terms import (
    MustPrefix,
    Omega,
    Prefix,
    Sum,
    Term,
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
from .textio import (
    ParseError,
    ParsedSystem,
    parse_formula,
    parse_label,
    parse_system,
    parse_system_details,
    parse_term,
    print_system,
)
from .translate import (
    NotInEncodingRange,
    TranslationReport,
    approximate_formula,
    decode_formula,
    decorate_by_class,
    eliminate_bivariant,
    embed_formula,
    embedding_report,
    encode_formula,
    encoding_report,
    lts_of_mts,
    mts_of_encoded_lts,
    mts_of_lts,
    mts_of_plain_lts,
    strip_decorations,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "And",
    "BLLogic",
    "Bottom",
    "Box",
    "CCLogic",
    "CCSignature",
    "CCSignatureMorphism",
    "CCSim",
    "CharFormResult",
    "Diamond",
    "Formula",
    "LogicKind",
    "MtsSignatureMorphism",
    "MustPrefix",
    "NotInEncodingRange",
    "Omega",
    "Or",
    "ParseError",
    "ParsedSystem",
    "PartialBisim",
    "PointedLTS",
    "PointedMTS",
    "Prefix",
    "PreorderKind",
    "PropertyReport",
    "Refinement",
    "Relation",
    "SelfCheckConfig",
    "SelfCheckReport",
    "SignatureMorphism",
    "Simulation",
    "Sum",
    "Term",
    "Top",
    "TranslationReport",
    "WITNESS_KINDS",
    "Zero",
    "action",
    "actions",
    "approximate_formula",
    "canonical_term",
    "canonical_witness",
    "cc_morphism",
    "characteristic_formula",
    "characteristic_formula_cc",
    "check_morphism_condition",
    "check_satisfaction_condition",
    "check_wf",
    "compose_morphisms",
    "compose_relations",
    "conj",
    "ct",
    "cv",
    "decode_formula",
    "decorate_by_class",
    "disj",
    "distinguishing_formula",
    "eliminate_bivariant",
    "embed_formula",
    "embedding_report",
    "encode_formula",
    "encode_term",
    "encoding_report",
    "enumerate_lts_terms",
    "enumerate_mts_terms",
    "expand_lts_term",
    "expand_mts_term",
    "final_obstruction_pair",
    "fixpoint_rounds",
    "formula_text",
    "greatest_ccsim",
    "greatest_pbsim",
    "greatest_refinement",
    "greatest_simulation",
    "identity_morphism",
    "initial_obstruction_pair",
    "is_existential",
    "is_omega_equivalent",
    "lts",
    "lts_of_mts",
    "mc_cc",
    "mc_mts",
    "modal_depth",
    "morphism_formula_map",
    "morphism_model_map",
    "morphism_signature_map",
    "mts",
    "mts_morphism",
    "mts_of_encoded_lts",
    "mts_of_lts",
    "mts_of_plain_lts",
    "must_prefix",
    "oracle_greatest",
    "parse_formula",
    "parse_label",
    "parse_system",
    "parse_system_details",
    "parse_term",
    "plain_signature",
    "prefix",
    "print_system",
    "property_ids",
    "reduct",
    "rename_actions",
    "run_property",
    "run_selfcheck",
    "satisfying_states_cc",
    "satisfying_states_mts",
    "sen_map",
    "signature",
    "simplify",
    "sorted_actions",
    "strip_decorations",
    "term_labels",
    "term_text",
    "universal_mts",
    "universal_specification",
    "validate_cc_lts",
    "validate_mts",
    "weakly_final_implementation",
    "weakly_initial_mts",
]
