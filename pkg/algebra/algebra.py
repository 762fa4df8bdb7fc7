"""Public surface of finite forest algebras."""
from algebra.src.constructions import (
    GeneratedSubalgebra, Isomorphism, direct_product, faithful_quotient, faithful_quotient_map, find_isomorphism,
    generated_subalgebra, permute_algebra, transformation_algebra,
)
from algebra.src.fileio import (
    format_accept, format_algebra, format_letter_map, parse_accept, parse_algebra, parse_letter_map, read_accept,
    read_algebra, read_letter_map,
)
from algebra.src.morphism import Morphism, eval_context, eval_forest, realize_values
from algebra.src.rules import (
    Rule, enumerate_rules, in_rule_language, in_rule_sum, is_trace, make_rule, rule_of_tree, trace_of_trail,
)
from algebra.src.tables import FiniteForestAlgebra, LetterMap
from algebra.src.validation import (
    AXIOMS, DistributivityVerdict, HorizontalVerdict, ValidationReport, check_horizontal, is_distributive,
    validate_algebra,
)

__all__ = [
    "AXIOMS", "DistributivityVerdict", "FiniteForestAlgebra", "GeneratedSubalgebra", "HorizontalVerdict",
    "Isomorphism", "LetterMap", "Morphism", "Rule", "ValidationReport", "check_horizontal", "direct_product",
    "enumerate_rules", "eval_context", "eval_forest", "faithful_quotient", "faithful_quotient_map",
    "find_isomorphism", "format_accept", "format_algebra", "format_letter_map", "generated_subalgebra",
    "in_rule_language", "in_rule_sum", "is_distributive", "is_trace", "make_rule", "parse_accept",
    "parse_algebra", "parse_letter_map", "permute_algebra", "read_accept", "read_algebra", "read_letter_map",
    "realize_values", "rule_of_tree", "trace_of_trail", "transformation_algebra", "validate_algebra",
]
