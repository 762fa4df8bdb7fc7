"""Public surface of the free forest algebra."""
from forest.src.enumeration import enumerate_forests, random_context, random_forest
from forest.src.grammar import is_label, parse_context, parse_forest, render, render_context, render_tree
from forest.src.paths import (
    EPSILON, PathSet, has_equal_label_siblings, height, is_psi_normal, label_quotient, paths, psi,
    render_word, trail_word, trails,
)
from forest.src.trees import (
    EMPTY, HOLE, Context, Forest, Tree, add_forest_to_context, apply_context, compose_contexts, leaf,
    node_context, sum_forests,
)

__all__ = [
    "EMPTY", "EPSILON", "HOLE", "Context", "Forest", "PathSet", "Tree", "add_forest_to_context",
    "apply_context", "compose_contexts", "enumerate_forests", "has_equal_label_siblings", "height",
    "is_label", "is_psi_normal", "label_quotient", "leaf", "node_context", "parse_context", "parse_forest", "paths",
    "psi", "random_context", "random_forest", "render", "render_context", "render_tree", "render_word",
    "sum_forests", "trail_word", "trails",
]
