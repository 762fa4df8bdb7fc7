"""Public surface of derived forest categories."""
from derived.src.category import (
    Arrow, DerivedCategory, HalfArrow, LocalDistVerdict, PairImage, act_arrow_on_half, add_arrow_half,
    add_half_arrows, build_derived_category, build_pair_image, compose_arrows, is_locally_distributive,
)
from derived.src.diagrams import (
    arrow_label, decode_label, diagram_merge, diagram_val, half_label, parse_diagram, random_diagram,
)
from derived.src.division import (
    CLAUSES, Assignment, Constraint, DivisionSearch, DivisionVerdict, constraints, identity_assignment,
    search_division, verify_division,
)

__all__ = [
    "Arrow", "Assignment", "CLAUSES", "Constraint", "DerivedCategory", "DivisionSearch", "DivisionVerdict",
    "HalfArrow", "LocalDistVerdict", "PairImage", "act_arrow_on_half", "add_arrow_half", "add_half_arrows",
    "arrow_label", "build_derived_category", "build_pair_image", "compose_arrows", "constraints",
    "decode_label", "diagram_merge", "diagram_val", "half_label", "identity_assignment",
    "is_locally_distributive", "parse_diagram", "random_diagram", "search_division", "verify_division",
]
