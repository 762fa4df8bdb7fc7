"""Membership predicates of the example languages, decided by structural recursion.

``L_basic`` and ``L1``: every maximal path is a*b or a*c, and at every
sibling level a b occurs exactly when a c does (``L1`` is also nonempty).
``L2``: nonempty, maximal paths a*b or a⁺c, and at every sibling level a b
occurs exactly when some a-node with a c-child does. ``L3a``/``L3b`` nest d-trees
over ``L1``/``L2`` alternately, and ``L`` is their sum.
"""
from typing import Optional

from forest.src.paths import paths
from forest.src.trees import Forest


def _a_star(f: Forest, top: bool, allow_top_c: bool) -> bool:
    """Maximal paths are a*b / a*c; c at the top level only if ``allow_top_c``."""
    for t in f:
        if t.label in ("b", "c"):
            if t.children:
                return False
            if t.label == "c" and top and not allow_top_c:
                return False
        elif t.label == "a":
            if not t.children or not _a_star(t.children, False, allow_top_c):
                return False
        else:
            return False
    return True


def _levels(f: Forest):
    yield f
    for t in f:
        yield from _levels(t.children)


def _l1_levels(f: Forest) -> bool:
    return all((level_has(g, "b")) == (level_has(g, "c")) for g in _levels(f))


def level_has(f: Forest, label: str) -> bool:
    return any(t.label == label for t in f)


def in_l_basic(f: Forest) -> bool:
    return _a_star(f, True, True) and _l1_levels(f)


def in_l1(f: Forest) -> bool:
    return bool(f) and in_l_basic(f)


def _has_a_with_c_child(f: Forest) -> bool:
    return any(t.label == "a" and level_has(t.children, "c") for t in f)


def in_l2(f: Forest) -> bool:
    if not f or not _a_star(f, True, False):
        return False
    return all(level_has(g, "b") == _has_a_with_c_child(g) for g in _levels(f))


def _nested(f: Forest, inner: str) -> bool:
    """Every tree is d[f₁ + f₂] with f₁ in the other nested language and f₂ in L1 or L2."""
    other = "L2" if inner == "L1" else "L1"
    inner_test = in_l1 if inner == "L1" else in_l2
    for t in f:
        if t.label != "d":
            return False
        d_part = Forest(c for c in t.children if c.label == "d")
        rest = Forest(c for c in t.children if c.label != "d")
        if not _nested(d_part, other) or not inner_test(rest):
            return False
    return True


def in_l3a(f: Forest) -> bool:
    return _nested(f, "L1")


def in_l3b(f: Forest) -> bool:
    return _nested(f, "L2")


def in_l(f: Forest) -> bool:
    return all(in_l3a(Forest.of(t)) or in_l3b(Forest.of(t)) for t in f)


def _longest(f: Forest, last: str) -> Optional[int]:
    """Largest n with aⁿ·last a path of f."""
    best = None
    for word in paths(f).words:
        if word and word[-1] == last and all(x == "a" for x in word[:-1]):
            best = len(word) - 1 if best is None else max(best, len(word) - 1)
    return best


def compatible_l1(f: Forest) -> bool:
    return _longest(f, "b") == _longest(f, "c")


def compatible_l2(f: Forest) -> bool:
    b, c = _longest(f, "b"), _longest(f, "c")
    return b is not None and c is not None and b + 1 == c


SAMPLE_L1 = "a[a[b,c],a[a[b,c],a[a[b,c]]]]"
SAMPLE_L2 = "a[b,a[c],a[b,a[c]]]"
SAMPLE_L_BASIC = "a[a[b,c],a[a[b,c]]]"
