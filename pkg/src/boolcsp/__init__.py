"""Decision procedures for Boolean constraint satisfaction over fixed
finite constraint sets: property classification, satisfiability,
equivalence, isomorphism, and executable reductions between them."""

__version__ = "0.1.0"

from .core import (
    Assignment,
    ClassificationReport,
    Const,
    Constraint,
    ConstraintApplication,
    ConstraintFlags,
    Instance,
    Var,
    apply,
    application_table,
    assignment_from_index,
    assignment_index,
    classify_constraint,
    classify_set,
    constraint_flags,
    decode_index,
    definability_oracle,
    encode_tuple,
    eval_application,
    eval_instance,
    satisfying_bitmap,
    substitute,
)
from .equiv import ImplicationTester, equivalent, equivalent_bruteforce, implies
from .errors import (
    BoolcspError,
    ConstructionUnavailableError,
    OracleMismatchError,
    PreconditionError,
    ResourceCapError,
    StructureError,
    UnsupportedArityError,
)
from .graph import ColoredGraph, refine_colors, vcgi, vcgi_bruteforce, verify_bijection
from .iso import (
    IsoResult,
    NormalForm,
    Permutation,
    apply_permutation,
    encode_graph,
    isomorphic,
    isomorphic_bruteforce,
    normal_form,
)
from .reductions import (
    OR2,
    XOR3,
    GraphInput,
    express,
    gi_to_or2,
    gi_to_xor3,
    implication_application,
    noncomplementive_witness,
    satne0_to_equiv,
    satne1_to_equiv,
    satne01_to_equiv,
    unsat_to_equiv,
    xor3_maximality_check,
)
from .sat import (
    ClauseForm,
    SatResult,
    count_models,
    counters,
    eval_clause_form,
    sat_not_all_one,
    sat_not_all_zero,
    sat_nontrivial,
    solve,
    solve_bruteforce,
    solve_using,
    to_clause_form,
)

__all__ = [name for name in dir() if not name.startswith("_")]
