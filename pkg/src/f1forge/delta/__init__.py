"""Term calculus for tensor powers of the integers."""

from .rules import BudgetExhausted, RuleSet, canonicalize, normalize_trace, rewrites, term_normalize
from .search import DurovResult, EqualityResult, durov_check, term_equal, trace_to_json
from .term import (Term, TermError, generator, identity_term, random_term, term_add_i,
                   term_direct_sum, term_dumps, term_eval_collapse, term_from_integer,
                   term_from_json, term_loads, term_multiply, term_relabel, term_to_json,
                   term_transpose, zero_term)

__all__ = [
    "BudgetExhausted", "DurovResult", "EqualityResult", "RuleSet", "Term", "TermError",
    "canonicalize", "durov_check", "generator", "identity_term", "normalize_trace",
    "random_term", "rewrites", "term_add_i", "term_direct_sum", "term_dumps",
    "term_equal", "term_eval_collapse", "term_from_integer", "term_from_json",
    "term_loads", "term_multiply", "term_normalize", "term_relabel", "term_to_json",
    "term_transpose", "trace_to_json", "zero_term",
]
