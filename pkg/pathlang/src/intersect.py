"""Path-image intersection through the Ψ-image algebra.

Two recognized languages have a common path set exactly when some Ψ-normal
forest is the Ψ-image of a member of each. The reachable values are explored
in factored form: a reachable value is a sum of single-letter tree values
over distinct letters, so it is enough to saturate the per-letter families
and combine them letter by letter.
"""
from typing import Optional, Sequence

from algebra.src.morphism import Morphism
from algebra.src.rules import Rule, in_rule_sum
from algebra.src.tables import FiniteForestAlgebra, LetterMap
from forest.src.enumeration import enumerate_forests
from forest.src.paths import PathSet, paths, psi
from forest.src.trees import EMPTY, Forest, Tree
from pathlang.src.psi_engine import EMPTY_SET_FAMILY, PsiEngine
from src.errors import AlphabetMismatchError, ResourceLimitError
from src.logging_utils import Logger, quiet_logger


class FactoredReachability:
    """Saturated per-letter families of several engines sharing one alphabet.

    ``letter_families[i]`` maps a tuple of families (one per engine) to a
    Ψ-normal tree with root letter ``i`` realizing it. ``accepting`` maps a
    tuple of accepted-value masks to a nonempty Ψ-normal forest realizing it.
    """

    def __init__(self, engines: Sequence[PsiEngine], family_cap: int = 50_000,
                 logger: Optional[Logger] = None):
        self.engines = list(engines)
        self.logger = logger or quiet_logger()
        self.family_cap = family_cap
        alphabet = self.engines[0].letters.letters
        for engine in self.engines[1:]:
            if set(engine.letters.letters) != set(alphabet):
                raise AlphabetMismatchError("joint path intersection needs one alphabet")
        self.alphabet = alphabet
        self._indices = [[engine.letter_index(a) for a in alphabet] for engine in self.engines]
        self.letter_families: list[dict[tuple[int, ...], Tree]] = [{} for _ in alphabet]
        self.accepting: dict[tuple[int, ...], Forest] = {}
        self._saturate()
        self._combine()

    def _join(self, left: tuple[int, ...], right: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(e.join(a, b) for e, a, b in zip(self.engines, left, right))

    def _union_families(self) -> dict[tuple[int, ...], Forest]:
        states = {(EMPTY_SET_FAMILY,) * len(self.engines): EMPTY}
        for families in self.letter_families:
            for state, rep in list(states.items()):
                for family, tree in families.items():
                    joined = self._join(state, family)
                    if joined not in states:
                        states[joined] = rep + Forest.of(tree)
                        if len(states) > self.family_cap:
                            raise ResourceLimitError("psi family cap", self.family_cap, len(states))
        return states

    def _saturate(self):
        rounds = 0
        while True:
            rounds += 1
            unions = self._union_families()
            changed = False
            for i, letter in enumerate(self.alphabet):
                for union, rep in unions.items():
                    family = tuple(e.letter_family(idx[i], u)
                                   for e, idx, u in zip(self.engines, self._indices, union))
                    if family not in self.letter_families[i]:
                        self.letter_families[i][family] = Tree(letter, rep)
                        changed = True
            total = sum(len(f) for f in self.letter_families)
            self.logger(f"[FactoredReachability] round {rounds}: {total} families, "
                        f"{len(unions)} unions", level="debug")
            if total > self.family_cap:
                raise ResourceLimitError("psi family cap", self.family_cap, total)
            if not changed:
                return

    def _combine(self):
        start = tuple(1 << e.algebra.zero_h for e in self.engines)
        states: dict[tuple[tuple[int, ...], bool], Forest] = {(start, False): EMPTY}
        for i, families in enumerate(self.letter_families):
            for (masks, _), rep in list(states.items()):
                for family, tree in families.items():
                    summed = tuple(e.minkowski(m, e.sums(fam))
                                   for e, m, fam in zip(self.engines, masks, family))
                    key = (summed, True)
                    if key not in states:
                        states[key] = rep + Forest.of(tree)
                        if len(states) > self.family_cap:
                            raise ResourceLimitError("psi family cap", self.family_cap, len(states))
        self.accepting = {masks: rep for (masks, nonempty), rep in states.items() if nonempty}


def reachability(engine: PsiEngine) -> FactoredReachability:
    """The saturated families of ``engine``, built once and kept on the engine."""
    if engine.factored is None:
        engine.factored = FactoredReachability([engine], engine.family_cap, engine.logger)
    return engine.factored


def paths_intersect(engine: PsiEngine, h1: int, h2: int) -> bool:
    """True iff the path images of the two value classes intersect."""
    zero = engine.algebra.zero_h
    if h1 == zero and h2 == zero:
        return True
    return intersection_forest(engine, h1, h2) is not None


def intersection_forest(engine: PsiEngine, h1: int, h2: int) -> Optional[Forest]:
    """A Ψ-normal forest in the Ψ-image of both value classes."""
    reach = reachability(engine)
    zero = engine.algebra.zero_h
    if h1 == zero and h2 == zero:
        return EMPTY
    for (mask,), rep in reach.accepting.items():
        if mask >> h1 & 1 and mask >> h2 & 1:
            return rep
    return None


def intersection_evidence(engine: PsiEngine, h1: int, h2: int) -> Optional[tuple[Forest, Forest, Forest]]:
    """``(f, g1, g2)`` with Ψ(g1) = Ψ(g2) = f and values h1, h2."""
    f = intersection_forest(engine, h1, h2)
    if f is None:
        return None
    if not f:
        return EMPTY, EMPTY, EMPTY
    return f, engine.witness(f, h1), engine.witness(f, h2)


def languages_paths_intersect(components: Sequence[tuple[FiniteForestAlgebra, LetterMap, Sequence[int]]],
                              max_h: int = 10, family_cap: int = 50_000,
                              logger: Optional[Logger] = None) -> Optional[tuple[Forest, ...]]:
    """Common path set of several recognized languages.

    Each component is ``(algebra, letters, accept)``. Returns ``None`` when the
    path images have no common element, otherwise one member forest of each
    language, all with the same path set.
    """
    engines = [PsiEngine(A, letters, max_h, family_cap, logger) for A, letters, _ in components]
    if all(A.zero_h in accept for A, _, accept in components):
        return tuple(EMPTY for _ in components)
    reach = FactoredReachability(engines, family_cap, logger)
    for masks, rep in reach.accepting.items():
        hits = [next((h for h in accept if m >> h & 1), None) for m, (_, _, accept) in zip(masks, components)]
        if all(h is not None for h in hits):
            return tuple(e.witness(rep, h) for e, h in zip(engines, hits))
    return None


def bounded_common_pathsets(A: FiniteForestAlgebra, letters: LetterMap, R: frozenset[Rule],
                            S: frozenset[Rule], max_height: int, max_nodes: int,
                            cap: int = 200_000) -> set[PathSet]:
    """Path sets shared by a member of the R-sum and a member of the S-sum, within bounds."""
    morphism = Morphism(A, letters)
    left: set[Forest] = set()
    right: set[Forest] = set()
    for f in enumerate_forests(letters.letters, max_height, max_nodes, cap):
        in_left = in_rule_sum(morphism, R, f)
        in_right = in_rule_sum(morphism, S, f)
        if not (in_left or in_right):
            continue
        key = psi(f)
        if in_left:
            left.add(key)
        if in_right:
            right.add(key)
    return {paths(key) for key in left & right}
