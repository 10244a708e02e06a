"""Set-rationalizable choice and self-stable social choice functions."""

from .axioms import (
    AXIOMS,
    AxiomId,
    StableSetReport,
    Verdict,
    Witness,
    alpha_hat_definitional,
    check_axiom,
    check_rationalizable,
    check_scf_condition,
    check_self_stable,
    s_hat,
    set_rationalize,
    stable_sets,
    witness_is_violation,
)
from .choice import (
    AltRelation,
    ChoiceTable,
    SetRelation,
    base_relation_alts,
    base_relation_sets,
    export_dot,
    induce_table,
    maximal_sets,
    parse_table,
    revealed_relation_alts,
    revealed_relation_sets,
    serialize_table,
)
from .errors import (
    InternalError,
    NotATournament,
    NotSetRationalizable,
    NotWellDefined,
    ParseError,
    PreconditionError,
    SetratError,
)
from .lp import LinearProgram, essential_support, maximal_lottery, simplex_solve
from .prefs import (
    MarginMatrix,
    Profile,
    Universe,
    WeakOrder,
    format_profile,
    margins,
    may_pairwise,
    parse_profile,
    restrict_order,
    weak_condorcet_winners,
)
from .search import GeneratorSpec, iter_profiles, search_counterexample

__version__ = "0.1.0"
