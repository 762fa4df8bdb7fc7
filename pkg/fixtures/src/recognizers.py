"""Hand-built finite recognizers for L_basic, L1 and L2."""
from dataclasses import dataclass

from algebra.src.constructions import transformation_algebra
from algebra.src.morphism import Morphism
from algebra.src.tables import FiniteForestAlgebra, LetterMap
from forest.src.trees import Forest


@dataclass
class Recognizer:
    algebra: FiniteForestAlgebra
    letters: LetterMap
    accept: frozenset[int]

    def accepts(self, f: Forest) -> bool:
        return Morphism(self.algebra, self.letters).forest(f) in self.accept


def _letters(A: FiniteForestAlgebra, names=("a", "b", "c")) -> LetterMap:
    return LetterMap(tuple(names), tuple(A.v_index(a) for a in names))


# L1 flags: N (nonempty, well formed), B / C (b / c present at this level), BAD on top
_PAIR_NAMES = ["0", "N", "BN", "CN", "BCN", "BAD"]
_PAIR_FLAGS = [0b000, 0b001, 0b011, 0b101, 0b111, None]


def _pair_tables():
    index = {flags: i for i, flags in enumerate(_PAIR_FLAGS)}
    add = [[5 if x is None or y is None else index[x | y] for y in _PAIR_FLAGS] for x in _PAIR_FLAGS]
    b = [2, 5, 5, 5, 5, 5]
    c = [3, 5, 5, 5, 5, 5]
    a = [5, 1, 5, 5, 1, 5]
    return transformation_algebra(add, {"a": a, "b": b, "c": c}, h_names=_PAIR_NAMES)


def l1_recognizer() -> Recognizer:
    A = _pair_tables()
    return Recognizer(A, _letters(A), frozenset({1, 4}))


def l_basic_recognizer() -> Recognizer:
    A = _pair_tables()
    return Recognizer(A, _letters(A), frozenset({0, 1, 4}))


# L2: index 0 is empty, 1 + mask for a nonempty forest with flags mask, 9 is BAD
_B, _AC, _CR = 1, 2, 4
_BAD = 9


def _l2_name(i: int) -> str:
    if i == 0:
        return "0"
    if i == _BAD:
        return "BAD"
    mask = i - 1
    return "N" + "".join(tag for bit, tag in ((_B, "B"), (_AC, "Ac"), (_CR, "Cr")) if mask & bit)


def l2_recognizer() -> Recognizer:
    size = 10

    def add(x: int, y: int) -> int:
        if _BAD in (x, y):
            return _BAD
        if x == 0 or y == 0:
            return x or y
        return 1 + ((x - 1) | (y - 1))

    def above_a(g: int) -> int:
        if g in (0, _BAD):
            return _BAD
        mask = g - 1
        if bool(mask & _B) != bool(mask & _AC):
            return _BAD
        return 1 + (_AC if mask & _CR else 0)

    table = [[add(x, y) for y in range(size)] for x in range(size)]
    b = [1 + _B] + [_BAD] * (size - 1)
    c = [1 + _CR] + [_BAD] * (size - 1)
    a = [above_a(g) for g in range(size)]
    A = transformation_algebra(table, {"a": a, "b": b, "c": c}, h_names=[_l2_name(i) for i in range(size)])
    accept = frozenset(i for i in range(1, _BAD) if bool((i - 1) & _B) == bool((i - 1) & _AC) and not (i - 1) & _CR)
    return Recognizer(A, _letters(A), accept)
