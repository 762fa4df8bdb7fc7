"""Public surface of the path-language machinery."""
from pathlang.src.dfa import WordDFA, bounded_pi_oracle, parse_dfa, pi_automaton, render_words, word_witness
from pathlang.src.intersect import (
    FactoredReachability, bounded_common_pathsets, intersection_evidence, intersection_forest,
    languages_paths_intersect, paths_intersect,
)
from pathlang.src.psi_engine import (
    BOTTOM, PsiEngine, PsiValue, ReachableValues, psi_accepts, psi_apply_letter, psi_reachable, psi_value_sum,
)

__all__ = [
    "BOTTOM", "FactoredReachability", "PsiEngine", "PsiValue", "ReachableValues", "WordDFA",
    "bounded_common_pathsets", "bounded_pi_oracle", "intersection_evidence", "intersection_forest",
    "languages_paths_intersect", "parse_dfa", "paths_intersect", "pi_automaton", "psi_accepts",
    "psi_apply_letter", "psi_reachable", "psi_value_sum", "render_words", "word_witness",
]
