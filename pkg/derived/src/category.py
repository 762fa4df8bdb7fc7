"""Derived forest categories of a pair of morphisms over one alphabet.

Forests are paired through both morphisms; the realized pairs are the
half-arrows. Contexts are paired the same way, and an arrow h → h' is the
row a ↦ w₁·a over the half-arrows ending in h, for a context pair (w₁, w₂)
with w₂·h = h'. Two context pairs giving the same row are the same arrow.
"""
from dataclasses import dataclass, field
from typing import Optional

import pydot
from prettytable import PrettyTable

from algebra.src.tables import FiniteForestAlgebra, LetterMap
from src.errors import AlphabetMismatchError, EndpointMismatchError, ResourceLimitError
from src.logging_utils import Logger, quiet_logger


@dataclass(frozen=True, order=True)
class HalfArrow:
    value: int
    endpoint: int


@dataclass(frozen=True, order=True)
class Arrow:
    source: int
    target: int
    row: tuple[int, ...]
    representative: tuple[int, int] = field(compare=False, default=(0, 0))


@dataclass
class PairImage:
    R: frozenset[tuple[int, int]]
    W: frozenset[tuple[int, int]]

    def verify(self, left: FiniteForestAlgebra, right: FiniteForestAlgebra) -> bool:
        """R is closed under sums and W·R ⊆ R."""
        for a, b in self.R:
            for c, d in self.R:
                if (int(left.add[a, c]), int(right.add[b, d])) not in self.R:
                    return False
            for w1, w2 in self.W:
                if (int(left.act[w1, a]), int(right.act[w2, b])) not in self.R:
                    return False
        return True


def build_pair_image(A1: FiniteForestAlgebra, l1: LetterMap, A2: FiniteForestAlgebra, l2: LetterMap,
                     cap: int = 20_000, logger: Optional[Logger] = None) -> PairImage:
    logger = logger or quiet_logger()
    if set(l1.letters) != set(l2.letters):
        raise AlphabetMismatchError("derived category needs two letter maps over one alphabet")
    letter_pairs = [(l1[a], l2[a]) for a in l1.letters]

    start = (A1.zero_h, A2.zero_h)
    R = [start]
    seen = {start}
    queue = 0
    while queue < len(R):
        a, b = R[queue]
        queue += 1
        found = [(int(A1.act[v1, a]), int(A2.act[v2, b])) for v1, v2 in letter_pairs]
        found += [(int(A1.add[a, c]), int(A2.add[b, d])) for c, d in R[:queue]]
        for pair in found:
            if pair not in seen:
                seen.add(pair)
                R.append(pair)
        if len(R) > cap:
            raise ResourceLimitError("pair image cap", cap, len(R))

    generators = letter_pairs + [(int(A1.ins[a]), int(A2.ins[b])) for a, b in R]
    identity = (A1.one_v, A2.one_v)
    W = [identity]
    w_seen = {identity}
    queue = 0
    while queue < len(W):
        w1, w2 = W[queue]
        queue += 1
        for g1, g2 in generators:
            pair = (int(A1.mul[w1, g1]), int(A2.mul[w2, g2]))
            if pair not in w_seen:
                w_seen.add(pair)
                W.append(pair)
        if len(W) > cap:
            raise ResourceLimitError("pair image cap", cap, len(W))
    logger(f"[PairImage] |R|={len(R)} |W|={len(W)}", level="debug")
    return PairImage(frozenset(R), frozenset(W))


class DerivedCategory:
    """Objects, half-arrows and arrows of the derived category of (α, β).

    ``left`` is the algebra of α, whose values label half-arrows, and
    ``right`` the algebra of β, whose values are the objects.
    """

    def __init__(self, left: FiniteForestAlgebra, right: FiniteForestAlgebra, image: PairImage):
        self.left = left
        self.right = right
        self.image = image
        self.objects: tuple[int, ...] = tuple(sorted({b for _, b in image.R}))
        self.halves: tuple[HalfArrow, ...] = tuple(sorted(HalfArrow(a, b) for a, b in image.R))
        self.half_values: dict[int, tuple[int, ...]] = {
            h: tuple(x.value for x in self.halves if x.endpoint == h) for h in self.objects}
        self._position = {h: {a: i for i, a in enumerate(values)} for h, values in self.half_values.items()}
        arrows: dict[tuple, Arrow] = {}
        for w1, w2 in sorted(image.W):
            for h in self.objects:
                target = int(right.act[w2, h])
                row = tuple(int(left.act[w1, a]) for a in self.half_values[h])
                key = (h, target, row)
                if key not in arrows:
                    arrows[key] = Arrow(h, target, row, (w1, w2))
        self._arrows = arrows
        self.arrows: tuple[Arrow, ...] = tuple(sorted(arrows.values()))
        self._arrow_ids = {}
        for arrow in self.arrows:
            same = [x for x in self.arrows if (x.source, x.target) == (arrow.source, arrow.target)]
            self._arrow_ids[arrow] = same.index(arrow)

    def __repr__(self):
        return (f"DerivedCategory(objects={len(self.objects)}, halves={len(self.halves)}, "
                f"arrows={len(self.arrows)})")

    # ---------- lookup ----------

    def arrow(self, source: int, target: int, row: tuple[int, ...]) -> Arrow:
        return self._arrows[(source, target, tuple(row))]

    def arrow_id(self, arrow: Arrow) -> int:
        """Position of ``arrow`` among the arrows with the same endpoints."""
        return self._arrow_ids[arrow]

    def arrow_by_id(self, source: int, target: int, rowid: int) -> Arrow:
        same = [x for x in self.arrows if (x.source, x.target) == (source, target)]
        return same[rowid]

    def identity(self, h: int) -> Arrow:
        return self._arrows[(h, h, self.half_values[h])]

    def arrows_from(self, h: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == h]

    def halves_at(self, h: int) -> list[HalfArrow]:
        return [x for x in self.halves if x.endpoint == h]

    def is_half(self, x: HalfArrow) -> bool:
        return x.endpoint in self._position and x.value in self._position[x.endpoint]

    def row_at(self, arrow: Arrow, a: int) -> int:
        return arrow.row[self._position[arrow.source][a]]

    # ---------- operations ----------

    def compose(self, second: Arrow, first: Arrow) -> Arrow:
        """``second ∘ first``: first runs h₁ → h₂, second h₂ → h₃."""
        if first.target != second.source:
            raise EndpointMismatchError(f"cannot compose {first.source}→{first.target} with "
                                        f"{second.source}→{second.target}")
        row = tuple(self.row_at(second, b) for b in first.row)
        return self._arrows[(first.source, second.target, row)]

    def act(self, arrow: Arrow, x: HalfArrow) -> HalfArrow:
        if x.endpoint != arrow.source:
            raise EndpointMismatchError(f"arrow from {arrow.source} cannot act on a half-arrow at {x.endpoint}")
        return HalfArrow(self.row_at(arrow, x.value), arrow.target)

    def add_halves(self, x: HalfArrow, y: HalfArrow) -> HalfArrow:
        return HalfArrow(int(self.left.add[x.value, y.value]), int(self.right.add[x.endpoint, y.endpoint]))

    def add_arrow_half(self, arrow: Arrow, y: HalfArrow) -> Arrow:
        """The arrow of the context pair p + s, where s realizes ``y``."""
        target = int(self.right.add[arrow.target, y.endpoint])
        row = tuple(int(self.left.add[r, y.value]) for r in arrow.row)
        return self._arrows[(arrow.source, target, row)]

    # ---------- reporting ----------

    def summary_table(self) -> PrettyTable:
        table = PrettyTable(["object", "half-arrows", "arrows out", "arrows in"])
        for h in self.objects:
            table.add_row([self.right.h_names[h], len(self.halves_at(h)), len(self.arrows_from(h)),
                           sum(1 for a in self.arrows if a.target == h)])
        return table

    def render(self) -> str:
        lines = [f"objects: {' '.join(self.right.h_names[h] for h in self.objects)}",
                 f"half-arrows: {len(self.halves)}", f"arrows: {len(self.arrows)}"]
        for x in self.halves:
            lines.append(f"H:{x.value}@{x.endpoint}")
        for a in self.arrows:
            lines.append(f"A:{a.source}>{a.target}#{self.arrow_id(a)} row {' '.join(map(str, a.row))}")
        return "\n".join(lines)

    def to_dot(self) -> str:
        graph = pydot.Dot("derived_category", graph_type="digraph")
        for h in self.objects:
            graph.add_node(pydot.Node(f"o{h}", label=f'"{self.right.h_names[h]}"'))
        for a in self.arrows:
            if a == self.identity(a.source):
                continue
            graph.add_edge(pydot.Edge(f"o{a.source}", f"o{a.target}", label=f'"#{self.arrow_id(a)}"'))
        return graph.to_string()


def build_derived_category(A1: FiniteForestAlgebra, l1: LetterMap, A2: FiniteForestAlgebra, l2: LetterMap,
                           cap: int = 20_000, logger: Optional[Logger] = None) -> DerivedCategory:
    logger = logger or quiet_logger()
    category = DerivedCategory(A1, A2, build_pair_image(A1, l1, A2, l2, cap, logger))
    logger(f"[DerivedCategory] {category!r}", level="info")
    return category


def compose_arrows(C: DerivedCategory, second: Arrow, first: Arrow) -> Arrow:
    return C.compose(second, first)


def act_arrow_on_half(C: DerivedCategory, arrow: Arrow, x: HalfArrow) -> HalfArrow:
    return C.act(arrow, x)


def add_half_arrows(C: DerivedCategory, x: HalfArrow, y: HalfArrow) -> HalfArrow:
    return C.add_halves(x, y)


def add_arrow_half(C: DerivedCategory, arrow: Arrow, y: HalfArrow) -> Arrow:
    return C.add_arrow_half(arrow, y)


@dataclass
class LocalDistVerdict:
    holds: bool
    witness: Optional[tuple[Arrow, HalfArrow, HalfArrow]] = None

    def render(self, C: DerivedCategory) -> str:
        if self.holds:
            return "locally distributive: yes"
        arrow, x, y = self.witness
        return (f"locally distributive: no arrow A:{arrow.source}>{arrow.target}#{C.arrow_id(arrow)} "
                f"x H:{x.value}@{x.endpoint} y H:{y.value}@{y.endpoint}")


def is_locally_distributive(C: DerivedCategory) -> LocalDistVerdict:
    """a·(x+y) = a·x + a·y for every arrow a and half-arrows x, y at its source."""
    add = C.left.add
    for arrow in C.arrows:
        h = arrow.source
        if int(C.right.add[h, h]) != h:
            continue
        values = C.half_values[h]
        for a in values:
            for b in values:
                merged = C.row_at(arrow, int(add[a, b]))
                split = int(add[C.row_at(arrow, a), C.row_at(arrow, b)])
                if merged != split:
                    return LocalDistVerdict(False, (arrow, HalfArrow(a, h), HalfArrow(b, h)))
    return LocalDistVerdict(True)
