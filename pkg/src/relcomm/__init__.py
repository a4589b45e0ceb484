"""Relation commutators on finite algebras."""

from .algebra import FiniteAlgebra, Operation, QuadSet, eval_op, subuniverse_closure
from .algfile import format_algebra, load_algebra, parse_algebra
from .commutator import comm, comm1, comm_weak, k_op, m_set
from .expr import eval_expr, parse_expr, pretty
from .properties import (
    PropertyReport,
    Witness,
    check_condition,
    check_equivalence_claims,
    check_implication_chain,
    check_lemma_x1a,
    check_lemma_x1b,
    check_theorem_condition,
    check_theorem_x4,
    evaluate_problem_profile,
    recheck_witness,
)
from .relations import (
    CONGRUENCE,
    REFLEXIVE_ADMISSIBLE,
    TOLERANCE,
    BinRel,
    RelFamily,
    adm_close,
    cg,
    compose,
    cong_join,
    converse,
    enumerate_relations,
    intersect,
    is_admissible,
    is_congruence,
    is_reflexive,
    is_symmetric,
    is_tolerance,
    is_transitive,
    star,
    tol_close,
    union_,
)
from .search import SearchTask, Signature, catalog, random_algebra, run_search

__all__ = [
    "FiniteAlgebra",
    "Operation",
    "QuadSet",
    "eval_op",
    "subuniverse_closure",
    "BinRel",
    "RelFamily",
    "REFLEXIVE_ADMISSIBLE",
    "TOLERANCE",
    "CONGRUENCE",
    "converse",
    "compose",
    "intersect",
    "union_",
    "star",
    "adm_close",
    "tol_close",
    "cg",
    "cong_join",
    "is_reflexive",
    "is_symmetric",
    "is_transitive",
    "is_admissible",
    "is_tolerance",
    "is_congruence",
    "enumerate_relations",
    "m_set",
    "k_op",
    "comm1",
    "comm",
    "comm_weak",
    "parse_expr",
    "pretty",
    "eval_expr",
    "PropertyReport",
    "Witness",
    "check_condition",
    "check_theorem_condition",
    "check_lemma_x1a",
    "check_lemma_x1b",
    "check_equivalence_claims",
    "check_implication_chain",
    "check_theorem_x4",
    "evaluate_problem_profile",
    "recheck_witness",
    "SearchTask",
    "Signature",
    "catalog",
    "random_algebra",
    "run_search",
    "load_algebra",
    "parse_algebra",
    "format_algebra",
]
