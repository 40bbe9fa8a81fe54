"""Decision procedures and a proof checker for the six-valued logics of evidence and truth."""

from .boolean_algebra import B2, FiniteBooleanAlgebra
from .bival import ClauseSet, check_clauses, from_valuation, parse_rho, to_valuation
from .cpl_reduction import cpl_entails, cpl_taut, reduce_sequent, term_to_text
from .errors import (
    BudgetExceeded,
    ClauseViolation,
    FragmentError,
    LetlabError,
    ParseError,
    ProofError,
    UnboundVariableError,
)
from .formula import Fragment, Sequent, parse, parse_sequent, to_text
from .isa import degree_entails
from .logics import Logic
from .matrix6 import entails6, eval6
from .nd_proof import check_proof, load_proof
from .nmatrix import nmatrix_entails
from .snapshots import Snapshot, Value6
from .twist import order_leq, twist_entails, verify_lattice
from .verdict import Verdict

__all__ = [
    "B2", "FiniteBooleanAlgebra", "ClauseSet", "check_clauses", "from_valuation", "parse_rho",
    "to_valuation", "cpl_entails", "cpl_taut", "reduce_sequent", "term_to_text", "BudgetExceeded",
    "ClauseViolation", "FragmentError", "LetlabError", "ParseError", "ProofError",
    "UnboundVariableError", "Fragment", "Sequent", "parse", "parse_sequent", "to_text",
    "degree_entails", "Logic", "entails6", "eval6", "check_proof", "load_proof", "nmatrix_entails",
    "Snapshot", "Value6", "order_leq", "twist_entails", "verify_lattice", "Verdict",
]
