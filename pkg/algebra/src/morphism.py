"""Evaluation of forests and contexts under the morphism induced by a letter map."""

from algebra.src.tables import FiniteForestAlgebra, LetterMap
from forest.src.trees import EMPTY, Context, Forest, Tree, check_alphabet


class Morphism:
    """φ: Σ^Δ → (H, V) extending ``letters``; caches tree values."""

    def __init__(self, algebra: FiniteForestAlgebra, letters: LetterMap):
        letters.check_against(algebra)
        self.algebra = algebra
        self.letters = letters
        self._letter_value = letters.as_dict()
        self._cache: dict[Tree, int] = {}

    def check(self, labels: set[str]):
        check_alphabet(labels, self.letters.alphabet)

    def tree(self, t: Tree) -> int:
        value = self._cache.get(t)
        if value is None:
            value = int(self.algebra.act[self._letter_value[t.label], self._forest(t.children)])
            self._cache[t] = value
        return value

    def _forest(self, f: Forest) -> int:
        A = self.algebra
        total = A.zero_h
        for t in f:
            total = int(A.add[total, self.tree(t)])
        return total

    def forest(self, f: Forest) -> int:
        self.check(f.labels())
        return self._forest(f)

    def tree_values(self, f: Forest) -> frozenset[int]:
        """The set of values of the member trees of ``f``."""
        self.check(f.labels())
        return frozenset(self.tree(t) for t in f)

    def context(self, c: Context) -> int:
        self.check(c.labels())
        return self._context(c)

    def _context(self, c: Context) -> int:
        A = self.algebra
        insertion = int(A.ins[self._forest(c.siblings)])
        if c.is_hole:
            return insertion
        inner = self._context(c.inner)
        return int(A.mul[insertion, A.mul[self._letter_value[c.label], inner]])


def eval_forest(A: FiniteForestAlgebra, letters: LetterMap, f: Forest) -> int:
    return Morphism(A, letters).forest(f)


def eval_context(A: FiniteForestAlgebra, letters: LetterMap, c: Context) -> int:
    return Morphism(A, letters).context(c)


def realize_values(A: FiniteForestAlgebra, letters: LetterMap) -> dict[int, Forest]:
    """A smallest-found witness forest for every H value in the image of the morphism."""
    witnesses: dict[int, Forest] = {A.zero_h: EMPTY}
    frontier = [A.zero_h]
    while frontier:
        found = []
        known = sorted(witnesses)
        for h in frontier:
            for letter, v in zip(letters.letters, letters.values):
                value = int(A.act[v, h])
                if value not in witnesses:
                    witnesses[value] = Forest.of(Tree(letter, witnesses[h]))
                    found.append(value)
            for k in known:
                value = int(A.add[h, k])
                if value not in witnesses:
                    witnesses[value] = witnesses[h] + witnesses[k]
                    found.append(value)
        frontier = found
    return witnesses
