"""Small hand-checked algebras used throughout the test suites."""
import random
from typing import Optional

from algebra.src.constructions import direct_product, transformation_algebra
from algebra.src.tables import FiniteForestAlgebra, LetterMap
from wreath.wreath import WreathAlgebra, wreath_generated

OR = [[0, 1], [1, 1]]


def bool_or() -> FiniteForestAlgebra:
    """H = {0, 1} under max; V = {id, c0, c1}."""
    return transformation_algebra(OR, {"c0": [0, 0], "c1": [1, 1]})


def trivial() -> FiniteForestAlgebra:
    return FiniteForestAlgebra([[0]], [[0]], [[0]], [0], h_names=["0"], v_names=["id"])


def sibling_pair_detector() -> FiniteForestAlgebra:
    """H = {0, a, b, t} with a + b = t; ``vstar`` sends t to t and everything else to 0.

    vstar(a + b) = t while vstar·a + vstar·b = 0, so it is not distributive.
    """
    join = [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]]
    return transformation_algebra(join, {"vstar": [0, 0, 0, 3]}, h_names=["0", "a", "b", "t"])


def bool_or_neg() -> FiniteForestAlgebra:
    """H = {0, 1} under max with all four maps on H. Horizontal but not 2-distributive:
    neg[c1] + neg[c0] and neg[c1 + c0] share their paths and differ in value."""
    return transformation_algebra(OR, {"c0": [0, 0], "c1": [1, 1], "neg": [1, 0]})


def bool_or_neg_x_bool_or() -> FiniteForestAlgebra:
    return direct_product(bool_or_neg(), bool_or())


def z2() -> FiniteForestAlgebra:
    """H = Z/2, which is not horizontally idempotent."""
    return transformation_algebra([[0, 1], [1, 0]], {})


def bool_or_wreath() -> tuple[WreathAlgebra, LetterMap]:
    """BOOL-OR ≀ BOOL-OR generated by three letters.

    The right factor remembers whether some c occurs; the left factor sees
    that bit and records whether some a sits above a c.
    """
    A = bool_or()
    c0, c1 = A.v_index("c0"), A.v_index("c1")
    letters = LetterMap(("a", "b", "c"), (0, 0, c1))
    gtable = {"a": {0: 0, 1: c1}, "b": {0: 0, 1: 0}, "c": {0: c0, 1: c0}}
    return wreath_generated(A, A, letters, gtable)


def canonical_wreath_pair() -> tuple[WreathAlgebra, LetterMap, FiniteForestAlgebra, LetterMap]:
    """The generated BOOL-OR wreath over its own canonical alphabet, and the
    right factor with the projection of each letter."""
    wreath, _ = bool_or_wreath()
    W = wreath.algebra
    names = tuple(f"v{j}" for j in range(W.v_size))
    left_letters = LetterMap(names, tuple(range(W.v_size)))
    right_letters = LetterMap(names, tuple(v for _, v in wreath.v_pairs))
    return wreath, left_letters, wreath.right, right_letters


def random_generated_wreath(rng: random.Random, A1: FiniteForestAlgebra, A2: FiniteForestAlgebra,
                            alphabet: tuple[str, ...] = ("a", "b"), cap: int = 20_000,
                            max_size: Optional[int] = 200) -> Optional[tuple[WreathAlgebra, LetterMap]]:
    """A generated wreath with random letter images; None when it grows past ``max_size``."""
    letters2 = LetterMap(alphabet, tuple(rng.randrange(A2.v_size) for _ in alphabet))
    gtable = {a: {h: rng.randrange(A1.v_size) for h in range(A2.h_size)} for a in alphabet}
    wreath, letters = wreath_generated(A1, A2, letters2, gtable, cap)
    if max_size is not None and max(wreath.algebra.h_size, wreath.algebra.v_size) > max_size:
        return None
    return wreath, letters
