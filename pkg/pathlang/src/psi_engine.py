"""Values of forests in the Ψ-image algebra.

For a Ψ-normal forest f and a letter α, the α-component of its value is the
family of sets Q ⊆ H such that Q is the set of values of the α-rooted
trees of some forest g with Ψ(g) = f. A non-normal forest evaluates to ⊥.

Sets of H elements are bit-masks over H; a family of sets is a bit-mask over
those masks, so bit ``Q`` of a family is set when the set with mask ``Q``
belongs to it.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from algebra.src.morphism import Morphism
from algebra.src.tables import FiniteForestAlgebra, LetterMap
from forest.src.paths import is_psi_normal
from forest.src.trees import EMPTY, Forest, Tree, check_alphabet
from src.errors import ResourceLimitError
from src.logging_utils import Logger, quiet_logger
from src.utils import iter_bits

EMPTY_SET_FAMILY = 1   # the family {∅}


@dataclass(frozen=True)
class PsiValue:
    """⊥ (``families is None``) or one subset family per letter."""
    families: Optional[tuple[int, ...]]

    @property
    def is_bottom(self) -> bool:
        return self.families is None

    @property
    def support(self) -> tuple[int, ...]:
        if self.families is None:
            return ()
        return tuple(i for i, fam in enumerate(self.families) if fam)

    def component(self, index: int) -> int:
        return 0 if self.families is None else self.families[index]


BOTTOM = PsiValue(None)


def family_sets(family: int) -> list[int]:
    return list(iter_bits(family))


class PsiEngine:
    """Evaluates forests into the Ψ-image algebra of ``(algebra, letters)``."""

    def __init__(self, algebra: FiniteForestAlgebra, letters: LetterMap, max_h: int = 10,
                 family_cap: int = 50_000, logger: Optional[Logger] = None):
        if algebra.h_size > max_h:
            raise ResourceLimitError("psi engine |H| cap", max_h, algebra.h_size)
        self.algebra = algebra
        self.letters = letters
        self.morphism = Morphism(algebra, letters)
        self.family_cap = family_cap
        self.logger = logger or quiet_logger()
        m = algebra.h_size
        self._subset_sum = np.zeros(1 << m, dtype=np.int64)
        self._subset_sum[0] = algebra.zero_h
        for mask in range(1, 1 << m):
            low = (mask & -mask).bit_length() - 1
            self._subset_sum[mask] = algebra.add[self._subset_sum[mask & (mask - 1)], low]
        self._letter_index = {a: i for i, a in enumerate(letters.letters)}
        self._achievable: dict[tuple[int, int], int] = {}
        self._join: dict[tuple[int, int], int] = {}
        self._sums: dict[int, int] = {}
        self._minkowski: dict[tuple[int, int], int] = {}
        self._values: dict[Forest, PsiValue] = {}
        self.identity = PsiValue((0,) * len(letters.letters))
        self.factored = None   # FactoredReachability, built on first intersection query

    # ---------- family arithmetic ----------

    def subset_sum(self, mask: int) -> int:
        return int(self._subset_sum[mask])

    def achievable(self, v: int, union: int) -> int:
        """Family of value sets {v·ΣQ : Q ∈ 𝒬} over all covers 𝒬 of ``union``."""
        key = (v, union)
        cached = self._achievable.get(key)
        if cached is not None:
            return cached
        act = self.algebra.act[v]
        all_values = 0
        per_member = {u: 0 for u in iter_bits(union)}
        sub = union
        while True:
            w = 1 << int(act[self._subset_sum[sub]])
            all_values |= w
            for u in iter_bits(sub):
                per_member[u] |= w
            if sub == 0:
                break
            sub = (sub - 1) & union
        family = 0
        s = all_values
        while s:
            if all(s & need for need in per_member.values()):
                family |= 1 << s
            s = (s - 1) & all_values
        self._achievable[key] = family
        return family

    def join(self, left: int, right: int) -> int:
        """{P ∪ P' : P ∈ left, P' ∈ right}."""
        key = (left, right) if left <= right else (right, left)
        cached = self._join.get(key)
        if cached is None:
            cached = 0
            right_sets = family_sets(right)
            for p in iter_bits(left):
                for q in right_sets:
                    cached |= 1 << (p | q)
            self._join[key] = cached
        return cached

    def sums(self, family: int) -> int:
        """Mask of the values ΣS for S in the family."""
        cached = self._sums.get(family)
        if cached is None:
            cached = 0
            for s in iter_bits(family):
                cached |= 1 << int(self._subset_sum[s])
            self._sums[family] = cached
        return cached

    def minkowski(self, left: int, right: int) -> int:
        """Mask of {a + b : a ∈ left, b ∈ right}."""
        key = (left, right) if left <= right else (right, left)
        cached = self._minkowski.get(key)
        if cached is None:
            cached = 0
            add = self.algebra.add
            right_values = list(iter_bits(right))
            for a in iter_bits(left):
                for b in right_values:
                    cached |= 1 << int(add[a, b])
            self._minkowski[key] = cached
        return cached

    def union_family(self, x: PsiValue) -> int:
        """Family of the possible value sets of the top-level trees of preimages."""
        family = EMPTY_SET_FAMILY
        for i in x.support:
            family = self.join(family, x.families[i])
        return family

    def letter_family(self, index: int, union_family: int) -> int:
        v = self.letters.values[index]
        family = 0
        for union in iter_bits(union_family):
            family |= self.achievable(v, union)
        return family

    # ---------- the algebra ----------

    def letter_index(self, letter: str) -> int:
        return self._letter_index[letter]

    def apply_letter(self, letter: str, x: PsiValue) -> PsiValue:
        if x.is_bottom:
            return BOTTOM
        index = self.letter_index(letter)
        families = [0] * len(self.letters.letters)
        families[index] = self.letter_family(index, self.union_family(x))
        return PsiValue(tuple(families))

    @staticmethod
    def value_sum(x: PsiValue, y: PsiValue) -> PsiValue:
        if x.is_bottom or y.is_bottom:
            return BOTTOM
        if any(a and b for a, b in zip(x.families, y.families)):
            return BOTTOM
        return PsiValue(tuple(a | b for a, b in zip(x.families, y.families)))

    def accepted_values(self, x: PsiValue) -> int:
        """Mask of the h for which :meth:`accepts` holds."""
        if x.is_bottom or not x.support:
            return 0
        mask = 1 << self.algebra.zero_h
        for i in x.support:
            mask = self.minkowski(mask, self.sums(x.families[i]))
        return mask

    def accepts(self, x: PsiValue, h: int) -> bool:
        """Some component is nonempty and a choice of one set per nonempty
        component has total value ``h``."""
        return bool(self.accepted_values(x) >> h & 1)

    def evaluate(self, f: Forest) -> PsiValue:
        check_alphabet(f.labels(), self.letters.letters)
        return self._evaluate(f)

    def _evaluate(self, f: Forest) -> PsiValue:
        cached = self._values.get(f)
        if cached is None:
            cached = self.identity
            for t in f:
                cached = self.value_sum(cached, self.apply_letter(t.label, self._evaluate(t.children)))
            self._values[f] = cached
        return cached

    # ---------- witnesses ----------

    def witness(self, f: Forest, h: int) -> Optional[Forest]:
        """A forest g with Ψ(g) = f and value h, or None when there is none."""
        if not f or not is_psi_normal(f):
            return None
        x = self.evaluate(f)
        if not self.accepts(x, h):
            return None
        trees = list(f)
        choices = [self._evaluate(Forest.of(t)).component(self.letter_index(t.label)) for t in trees]
        add = self.algebra.add

        def choose(i: int, total: int) -> Optional[list[int]]:
            if i == len(trees):
                return [] if total == h else None
            for s in iter_bits(choices[i]):
                rest = choose(i + 1, int(add[total, self.subset_sum(s)]))
                if rest is not None:
                    return [s] + rest
            return None

        picked = choose(0, self.algebra.zero_h)
        out: list[Tree] = []
        for t, s in zip(trees, picked):
            out.extend(self._trees_for(t, s))
        return Forest(out)

    def _trees_for(self, t: Tree, value_set: int) -> list[Tree]:
        """α-trees whose Ψ-merge is ``t`` and whose set of values is ``value_set``."""
        v = self.letters.values[self.letter_index(t.label)]
        children = list(t.children)
        child_families = [self._evaluate(Forest.of(c)).component(self.letter_index(c.label)) for c in children]
        union_family = self.union_family(self._evaluate(t.children))
        for union in iter_bits(union_family):
            if not self.achievable(v, union) >> value_set & 1:
                continue
            parts = self._cover_children(child_families, union)
            if parts is None:
                continue
            below: list[Tree] = []
            for c, part in zip(children, parts):
                below.extend(self._trees_for(c, part))
            values = {b: self.morphism.tree(b) for b in below}
            act = self.algebra.act[v]
            result = []
            sub = union
            while True:
                if value_set >> int(act[self._subset_sum[sub]]) & 1:
                    result.append(Tree(t.label, Forest(b for b in below if sub >> values[b] & 1)))
                if sub == 0:
                    break
                sub = (sub - 1) & union
            return result
        raise AssertionError("value set not achievable for this tree")

    @staticmethod
    def _cover_children(families: list[int], union: int) -> Optional[list[int]]:
        def pick(i: int, acc: int) -> Optional[list[int]]:
            if i == len(families):
                return [] if acc == union else None
            for p in iter_bits(families[i]):
                if p & ~union:
                    continue
                rest = pick(i + 1, acc | p)
                if rest is not None:
                    return [p] + rest
            return None

        return pick(0, 0)

    # ---------- rendering ----------

    def render_value(self, x: PsiValue) -> str:
        if x.is_bottom:
            return "⊥"
        names = self.algebra.h_names
        parts = []
        for i in x.support:
            sets = ["{" + ",".join(names[h] for h in iter_bits(s)) + "}" for s in family_sets(x.families[i])]
            parts.append(f"{self.letters.letters[i]}↦{{{','.join(sets)}}}")
        return "{" + "; ".join(parts) + "}"


@dataclass
class ReachableValues:
    values: tuple[PsiValue, ...]
    links: dict[PsiValue, tuple]

    def __contains__(self, x: PsiValue) -> bool:
        return x in self.links

    def __len__(self):
        return len(self.values)

    def forest_for(self, x: PsiValue) -> Forest:
        """A forest evaluating to ``x``, rebuilt from the closure's predecessor links."""
        link = self.links[x]
        if link[0] == "identity":
            return EMPTY
        if link[0] == "letter":
            return Forest.of(Tree(link[1], self.forest_for(link[2])))
        return self.forest_for(link[1]) + self.forest_for(link[2])


def psi_reachable(engine: PsiEngine, cap: int = 20_000) -> ReachableValues:
    """Least set of values containing the identity, closed under letters and sums."""
    values = [engine.identity]
    links: dict[PsiValue, tuple] = {engine.identity: ("identity",)}
    queue = 0

    def add(value: PsiValue, link: tuple):
        if value not in links:
            links[value] = link
            values.append(value)
            if len(values) > cap:
                raise ResourceLimitError("psi reachable cap", cap, len(values))

    while queue < len(values):
        x = values[queue]
        queue += 1
        for letter in engine.letters.letters:
            add(engine.apply_letter(letter, x), ("letter", letter, x))
        for y in values[:queue]:
            add(engine.value_sum(x, y), ("sum", x, y))
    engine.logger(f"[PsiEngine] explicit closure: {len(values)} values", level="debug")
    return ReachableValues(tuple(values), links)


def psi_apply_letter(engine: PsiEngine, letter: str, x: PsiValue) -> PsiValue:
    return engine.apply_letter(letter, x)


def psi_value_sum(x: PsiValue, y: PsiValue) -> PsiValue:
    return PsiEngine.value_sum(x, y)


def psi_accepts(engine: PsiEngine, x: PsiValue, h: int) -> bool:
    return engine.accepts(x, h)
