"""Canonical unordered forests and contexts.

Forests are sets of trees: constructing a Forest sorts its members by the
structural order ``(label, children)`` and drops duplicates, so equality and
hashing are structural and ``+`` is commutative and idempotent by
construction.
"""
from typing import Iterable, Iterator, Optional

from src.errors import AlphabetMismatchError


class Tree:
    __slots__ = ("label", "children", "key", "size", "_hash")

    def __init__(self, label: str, children: Optional["Forest"] = None):
        if children is None:
            children = EMPTY
        self.label = label
        self.children = children
        self.key = (label, children.key)
        self.size = 1 + children.size
        self._hash = hash(self.key)

    def __eq__(self, other):
        return isinstance(other, Tree) and self.key == other.key

    def __lt__(self, other: "Tree"):
        return self.key < other.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from forest.src.grammar import render_tree
        return f"Tree({render_tree(self)})"

    @property
    def height(self) -> int:
        return 1 + self.children.height


class Forest:
    __slots__ = ("trees", "key", "size", "_hash", "_height")

    def __init__(self, trees: Iterable[Tree] = ()):
        unique = {t.key: t for t in trees}
        self.trees = tuple(unique[k] for k in sorted(unique))
        self.key = tuple(t.key for t in self.trees)
        self.size = sum(t.size for t in self.trees)
        self._hash = hash(self.key)
        self._height = None

    @classmethod
    def of(cls, *trees: Tree) -> "Forest":
        return cls(trees)

    def __eq__(self, other):
        return isinstance(other, Forest) and self.key == other.key

    def __lt__(self, other: "Forest"):
        return self.key < other.key

    def __hash__(self):
        return self._hash

    def __iter__(self) -> Iterator[Tree]:
        return iter(self.trees)

    def __len__(self):
        return len(self.trees)

    def __bool__(self):
        return bool(self.trees)

    def __add__(self, other: "Forest") -> "Forest":
        return sum_forests(self, other)

    def __repr__(self):
        from forest.src.grammar import render
        return f"Forest({render(self)})"

    @property
    def height(self) -> int:
        if self._height is None:
            self._height = max((t.height for t in self.trees), default=0)
        return self._height

    def labels(self) -> set[str]:
        """All labels occurring anywhere in the forest."""
        out = set()
        stack = list(self.trees)
        while stack:
            t = stack.pop()
            out.add(t.label)
            stack.extend(t.children.trees)
        return out


EMPTY = Forest()


def leaf(label: str) -> Tree:
    return Tree(label, EMPTY)


def sum_forests(f: Forest, g: Forest) -> Forest:
    if not g:
        return f
    if not f:
        return g
    return Forest(f.trees + g.trees)


class Context:
    """A forest with exactly one hole.

    ``label is None`` means the hole sits among ``siblings`` at this level
    (the context ``siblings + _``); otherwise the context is
    ``siblings + label[inner]``.
    """
    __slots__ = ("siblings", "label", "inner", "key", "_hash")

    def __init__(self, siblings: Forest = EMPTY, label: Optional[str] = None, inner: Optional["Context"] = None):
        if label is None and inner is not None:
            raise ValueError("a hole context has no inner context")
        if label is not None and inner is None:
            inner = HOLE
        self.siblings = siblings
        self.label = label
        self.inner = inner
        self.key = (siblings.key, label, inner.key if inner is not None else None)
        self._hash = hash(self.key)

    def __eq__(self, other):
        return isinstance(other, Context) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from forest.src.grammar import render_context
        return f"Context({render_context(self)})"

    @property
    def is_hole(self) -> bool:
        return self.label is None

    def labels(self) -> set[str]:
        out = set(self.siblings.labels())
        if self.label is not None:
            out.add(self.label)
            out |= self.inner.labels()
        return out


HOLE = Context()


def node_context(label: str) -> Context:
    """The one-node context ``label[_]``."""
    return Context(EMPTY, label, HOLE)


def apply_context(c: Context, f: Forest) -> Forest:
    if c.is_hole:
        return sum_forests(c.siblings, f)
    return sum_forests(c.siblings, Forest.of(Tree(c.label, apply_context(c.inner, f))))


def compose_contexts(c: Context, d: Context) -> Context:
    """The context whose application is ``c`` applied after ``d``."""
    if c.is_hole:
        return add_forest_to_context(c.siblings, d)
    return Context(c.siblings, c.label, compose_contexts(c.inner, d))


def add_forest_to_context(s: Forest, c: Context) -> Context:
    """The context ``s + c``."""
    return Context(sum_forests(s, c.siblings), c.label, c.inner)


def check_alphabet(labels: set[str], alphabet: Iterable[str]):
    extra = labels - set(alphabet)
    if extra:
        raise AlphabetMismatchError(f"labels outside the alphabet: {', '.join(sorted(extra))}")
