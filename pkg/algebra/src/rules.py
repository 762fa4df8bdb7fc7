"""Rules (h₀, α, K), traces along trails and rule languages."""
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from algebra.src.morphism import Morphism
from algebra.src.tables import FiniteForestAlgebra, LetterMap
from forest.src.trees import Forest, Tree


@dataclass(frozen=True)
class Rule:
    result: int
    label: str
    children: frozenset[int]

    def render(self) -> str:
        kids = ",".join(str(k) for k in sorted(self.children))
        return f"({self.result},{self.label},{{{kids}}})"


def make_rule(A: FiniteForestAlgebra, letters: LetterMap, label: str, children: Iterable[int]) -> Rule:
    kids = frozenset(int(k) for k in children)
    return Rule(int(A.act[letters[label], A.h_sum(sorted(kids))]), label, kids)


def enumerate_rules(A: FiniteForestAlgebra, letters: LetterMap) -> frozenset[Rule]:
    """All |Σ|·2^|H| rules; K = ∅ gives the leaf rules."""
    rules = set()
    hs = range(A.h_size)
    for label in letters.letters:
        for size in range(A.h_size + 1):
            for kids in combinations(hs, size):
                rules.add(make_rule(A, letters, label, kids))
    return frozenset(rules)


def is_trace(A: FiniteForestAlgebra, letters: LetterMap, seq: Sequence[Rule]) -> bool:
    return all(seq[i + 1].result in seq[i].children for i in range(len(seq) - 1))


def rule_of_tree(morphism: Morphism, t: Tree) -> Rule:
    """The rule applied at the root of ``t``."""
    return Rule(morphism.tree(t), t.label, morphism.tree_values(t.children))


def trace_of_trail(morphism: Morphism, trail: Sequence[Tree]) -> list[Rule]:
    return [rule_of_tree(morphism, t) for t in trail]


def in_rule_language(morphism: Morphism, rule: Rule, f: Forest) -> bool:
    """f ∈ L(ρ): nonempty, every member tree is an α-tree whose children have value set K."""
    return bool(f) and all(rule_of_tree(morphism, t) == rule for t in f)


def in_rule_sum(morphism: Morphism, rules: Iterable[Rule], f: Forest) -> bool:
    """f ∈ L(r₁) + … + L(rₙ) for the given nonempty rule set."""
    rules = frozenset(rules)
    return bool(rules) and bool(f) and all(rule_of_tree(morphism, t) in rules for t in f)
