"""Path sets, the Ψ normal form, heights, label quotients and trails."""
from functools import lru_cache
from typing import Iterable, Iterator

from forest.src.trees import EMPTY, Forest, Tree

Word = tuple[str, ...]
EPSILON = "ε"


class PathSet:
    """Prefix-closed set of root-starting label words; always contains ε."""
    __slots__ = ("words", "_hash")

    def __init__(self, words: Iterable[Word]):
        self.words = frozenset(words) | {()}
        self._hash = hash(self.words)

    def __eq__(self, other):
        return isinstance(other, PathSet) and self.words == other.words

    def __hash__(self):
        return self._hash

    def __contains__(self, word) -> bool:
        return tuple(word) in self.words

    def __len__(self):
        return len(self.words)

    def __or__(self, other: "PathSet") -> "PathSet":
        return PathSet(self.words | other.words)

    def __repr__(self):
        return f"PathSet({{{', '.join(render_word(w) for w in self.sorted())}}})"

    def sorted(self) -> list[Word]:
        return sorted(self.words, key=lambda w: (len(w), w))

    def is_prefix_closed(self) -> bool:
        return all(w[:-1] in self.words for w in self.words if w)

    def max_length(self) -> int:
        return max(len(w) for w in self.words)

    def render(self) -> str:
        """One word per line, shortest first."""
        return "\n".join(render_word(w) for w in self.sorted())


def render_word(word: Word) -> str:
    return ".".join(word) if word else EPSILON


@lru_cache(maxsize=65536)
def _tree_words(t: Tree) -> frozenset:
    out = {(t.label,)}
    for child in t.children:
        out |= {(t.label,) + w for w in _tree_words(child)}
    return frozenset(out)


def paths(f: Forest) -> PathSet:
    words = set()
    for t in f:
        words |= _tree_words(t)
    return PathSet(words)


def group_by_label(f: Forest) -> dict[str, list[Forest]]:
    groups: dict[str, list[Forest]] = {}
    for t in f:
        groups.setdefault(t.label, []).append(t.children)
    return groups


@lru_cache(maxsize=65536)
def psi(f: Forest) -> Forest:
    """Merge sibling trees sharing a root label, recursively."""
    merged = []
    for label, child_forests in group_by_label(f).items():
        union = Forest(t for g in child_forests for t in g)
        merged.append(Tree(label, psi(union)))
    return Forest(merged)


def is_psi_normal(f: Forest) -> bool:
    return not has_equal_label_siblings(f)


def has_equal_label_siblings(f: Forest) -> bool:
    labels = [t.label for t in f]
    if len(labels) != len(set(labels)):
        return True
    return any(has_equal_label_siblings(t.children) for t in f)


def height(f: Forest) -> int:
    return f.height


def label_quotient(label: str, f: Forest) -> Forest:
    """α⁻¹f: the union of the children of all α-rooted member trees."""
    return Forest(c for t in f if t.label == label for c in t.children)


def trails(f: Forest) -> Iterator[tuple[Tree, ...]]:
    """Every node sequence from a root down to some node, in depth-first order."""
    def walk(prefix: tuple[Tree, ...], forest: Forest):
        for t in forest:
            trail = prefix + (t,)
            yield trail
            yield from walk(trail, t.children)

    yield from walk((), f)


def trail_word(trail: tuple[Tree, ...]) -> Word:
    return tuple(t.label for t in trail)


__all__ = [
    "EMPTY", "EPSILON", "PathSet", "Word", "group_by_label", "has_equal_label_siblings", "height",
    "is_psi_normal", "label_quotient", "paths", "psi", "render_word", "trail_word", "trails",
]
