"""Text form of forests and contexts.

    forest      := "{}" | "{" body "}" | body
    body        := tree ("," tree)*
    tree        := label ("[" forest-body "]")?
    forest-body := ε | body

Whitespace is insignificant. A context is a forest text with exactly one
``_`` leaf; a bare ``_`` is reserved for the hole and is never a label.
Canonical rendering sorts siblings structurally, omits ``[]`` on leaves,
separates siblings with ``,`` and writes the empty forest as ``{}``.
"""
import re
from typing import Iterable, Optional

from forest.src.trees import EMPTY, Context, Forest, Tree
from src.errors import ForestSyntaxError, UnknownLabelError

LABEL_PATTERN = r"[A-Za-z0-9_]+"
# Diagram labels: H:a@h and A:h>h'#rowid
DIAGRAM_LABEL_PATTERN = r"[A-Za-z0-9_:@>#']+"
HOLE_TOKEN = "_"


def is_label(name: str) -> bool:
    return name != HOLE_TOKEN and re.fullmatch(LABEL_PATTERN, name) is not None


class _Parser:
    def __init__(self, text: str, alphabet: Optional[Iterable[str]], label_pattern: str, allow_hole: bool):
        self.text = text
        self.pos = 0
        self.alphabet = set(alphabet) if alphabet is not None else None
        self.label_re = re.compile(label_pattern)
        self.allow_hole = allow_hole
        self.holes = 0

    def error(self, message: str):
        raise ForestSyntaxError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.error(f"expected '{ch}', found '{found}'")
        self.pos += 1

    def parse_top(self) -> list:
        if self.peek() == "{":
            self.pos += 1
            items = [] if self.peek() == "}" else self.parse_body()
            self.expect("}")
        else:
            if self.peek() == "":
                self.error("empty input; write {} for the empty forest")
            items = self.parse_body()
        if self.peek() != "":
            self.error(f"unexpected '{self.peek()}'")
        return items

    def parse_body(self) -> list:
        items = [self.parse_tree()]
        while self.peek() == ",":
            self.pos += 1
            items.append(self.parse_tree())
        return items

    def parse_tree(self):
        self.skip()
        start = self.pos
        match = self.label_re.match(self.text, self.pos)
        if not match:
            self.error("expected a label")
        label = match.group(0)
        self.pos = match.end()
        if label == HOLE_TOKEN:
            if not self.allow_hole:
                self.error("hole '_' outside a context")
            self.holes += 1
            if self.peek() == "[":
                self.error("the hole must be a leaf")
            return None
        if self.alphabet is not None and label not in self.alphabet:
            raise UnknownLabelError(label, start)
        children = []
        if self.peek() == "[":
            self.pos += 1
            if self.peek() != "]":
                children = self.parse_body()
            self.expect("]")
        return (label, children)


def _build_forest(items: list) -> Forest:
    return Forest(Tree(label, _build_forest(children)) for label, children in items)


def _contains_hole(item) -> bool:
    if item is None:
        return True
    return any(_contains_hole(c) for c in item[1])


def _build_context(items: list) -> Context:
    holder = [it for it in items if _contains_hole(it)]
    siblings = _build_forest([it for it in items if not _contains_hole(it)])
    item = holder[0]
    if item is None:
        return Context(siblings)
    label, children = item
    return Context(siblings, label, _build_context(children))


def parse_forest(text: str, alphabet: Optional[Iterable[str]] = None, label_pattern: str = LABEL_PATTERN) -> Forest:
    parser = _Parser(text, alphabet, label_pattern, allow_hole=False)
    return _build_forest(parser.parse_top())


def parse_context(text: str, alphabet: Optional[Iterable[str]] = None, label_pattern: str = LABEL_PATTERN) -> Context:
    parser = _Parser(text, alphabet, label_pattern, allow_hole=True)
    items = parser.parse_top()
    if parser.holes != 1:
        raise ForestSyntaxError(f"a context needs exactly one '_', found {parser.holes}", text, len(text))
    return _build_context(items)


def render_tree(t: Tree) -> str:
    if not t.children:
        return t.label
    return f"{t.label}[{','.join(render_tree(c) for c in t.children)}]"


def render(f: Forest) -> str:
    if not f:
        return "{}"
    return ",".join(render_tree(t) for t in f)


def _context_as_forest(c: Context) -> Forest:
    if c.is_hole:
        return Forest(c.siblings.trees + (Tree(HOLE_TOKEN, EMPTY),))
    return Forest(c.siblings.trees + (Tree(c.label, _context_as_forest(c.inner)),))


def render_context(c: Context) -> str:
    return render(_context_as_forest(c))
