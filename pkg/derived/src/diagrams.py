"""Forest diagrams: forests whose leaves carry half-arrows and whose inner
nodes carry arrows of a derived category.

Labels are ``H:a@h`` for the half-arrow (a, h) and ``A:h>h'#i`` for the i-th
arrow from h to h' in the category's arrow order.
"""
import random
import re
from typing import Union

from derived.src.category import Arrow, DerivedCategory, HalfArrow
from forest.src.grammar import DIAGRAM_LABEL_PATTERN, parse_forest
from forest.src.paths import psi
from forest.src.trees import Forest, Tree
from src.errors import InconsistentDiagramError

HALF_LABEL = re.compile(r"H:(\d+)@(\d+)")
ARROW_LABEL = re.compile(r"A:(\d+)>(\d+)#(\d+)")


def half_label(x: HalfArrow) -> str:
    return f"H:{x.value}@{x.endpoint}"


def arrow_label(C: DerivedCategory, arrow: Arrow) -> str:
    return f"A:{arrow.source}>{arrow.target}#{C.arrow_id(arrow)}"


def decode_label(C: DerivedCategory, label: str) -> Union[HalfArrow, Arrow]:
    match = HALF_LABEL.fullmatch(label)
    if match:
        x = HalfArrow(int(match.group(1)), int(match.group(2)))
        if not C.is_half(x):
            raise InconsistentDiagramError(f"{label} is not a half-arrow of the category")
        return x
    match = ARROW_LABEL.fullmatch(label)
    if match:
        source, target, rowid = (int(g) for g in match.groups())
        try:
            return C.arrow_by_id(source, target, rowid)
        except IndexError:
            raise InconsistentDiagramError(f"{label} is not an arrow of the category") from None
    raise InconsistentDiagramError(f"'{label}' is neither a half-arrow nor an arrow label")


def parse_diagram(C: DerivedCategory, text: str) -> Forest:
    d = parse_forest(text, label_pattern=DIAGRAM_LABEL_PATTERN)
    diagram_val(C, d)
    return d


def _tree_val(C: DerivedCategory, t: Tree) -> HalfArrow:
    item = decode_label(C, t.label)
    if isinstance(item, HalfArrow):
        if t.children:
            raise InconsistentDiagramError(f"half-arrow {t.label} must be a leaf")
        return item
    if not t.children:
        raise InconsistentDiagramError(f"arrow {t.label} must have children")
    below = _forest_val(C, t.children)
    if below.endpoint != item.source:
        raise InconsistentDiagramError(
            f"children of {t.label} end in {below.endpoint}, the arrow starts at {item.source}")
    return C.act(item, below)


def _forest_val(C: DerivedCategory, f: Forest) -> HalfArrow:
    trees = list(f)
    total = _tree_val(C, trees[0])
    for t in trees[1:]:
        total = C.add_halves(total, _tree_val(C, t))
    return total


def diagram_val(C: DerivedCategory, d: Forest) -> HalfArrow:
    """The half-arrow a consistent diagram evaluates to."""
    if not d:
        raise InconsistentDiagramError("the empty diagram has no value")
    return _forest_val(C, d)


def diagram_merge(C: DerivedCategory, d: Forest) -> Forest:
    """Merge sibling nodes with equal arrows until none remain."""
    diagram_val(C, d)
    return psi(d)


def random_diagram(C: DerivedCategory, rng: random.Random, max_depth: int = 3, max_width: int = 3) -> Forest:
    """A consistent diagram built bottom-up; every arrow starts at the sum of its children's endpoints."""
    trees = []
    for _ in range(rng.randint(1, max_width)):
        if max_depth == 0 or rng.random() < 0.35:
            trees.append(Tree(half_label(rng.choice(C.halves))))
            continue
        children = random_diagram(C, rng, max_depth - 1, max_width)
        source = _forest_val(C, children).endpoint
        arrow = rng.choice(C.arrows_from(source))
        trees.append(Tree(arrow_label(C, arrow), children))
    return Forest(trees)
