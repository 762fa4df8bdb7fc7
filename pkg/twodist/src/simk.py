"""Bounded semi-decision for the congruences ∼₁ and ∼₂ on forests.

``f ∼₁ f'`` iff the path sets agree. ``∼₂`` is generated by
``v[g + g'] ∼₂ vg + vg'`` for ``g ∼₁ g'``; the oracle searches breadth first
through single rewrites at any depth, in both directions.
"""
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from forest.src.paths import paths
from forest.src.trees import Forest, Tree

PROVEN = "proven-equivalent"
NOT_PROVEN = "not-proven"


@dataclass
class SimkOutcome:
    result: str
    explored: int

    @property
    def proven(self) -> bool:
        return self.result == PROVEN


def _subforests(trees: list[Tree]) -> list[Forest]:
    return [Forest(t for i, t in enumerate(trees) if mask >> i & 1) for mask in range(1 << len(trees))]


def _unfold(t: Tree) -> Iterator[Forest]:
    """α[s + g + g'] → α[s + g] + α[s + g'] with π(g) = π(g')."""
    children = list(t.children)
    subs = [g for g in _subforests(children) if g]
    for i, g in enumerate(subs):
        pg = paths(g)
        for g2 in subs[i + 1:]:
            if paths(g2) != pg:
                continue
            used = set(g) | set(g2)
            s = Forest(c for c in children if c not in used)
            yield Forest.of(Tree(t.label, s + g), Tree(t.label, s + g2))


def _fold(y: Tree, z: Tree) -> Iterator[Tree]:
    """α[s + g] + α[s + g'] → α[s + g + g'] with π(g) = π(g')."""
    z_children = set(z.children)
    common = [c for c in y.children if c in z_children]
    only_y = Forest(c for c in y.children if c not in z_children)
    only_z = Forest(c for c in z.children if c not in set(common))
    extras = _subforests(common)
    for ey in extras:
        g = only_y + ey
        pg = paths(g)
        for ez in extras:
            if paths(only_z + ez) == pg:
                yield Tree(y.label, y.children + z.children)
                return


def rewrites(f: Forest) -> Iterator[Forest]:
    """Every forest one ∼₂ rewrite away from ``f``."""
    trees = list(f)
    for t in trees:
        rest = Forest(u for u in trees if u != t)
        for unfolded in _unfold(t):
            yield rest + unfolded
    for i, y in enumerate(trees):
        for z in trees[i + 1:]:
            if y.label != z.label:
                continue
            rest = Forest(u for u in trees if u != y and u != z)
            for folded in _fold(y, z):
                yield rest + Forest.of(folded)
    for t in trees:
        rest = Forest(u for u in trees if u != t)
        for inner in rewrites(t.children):
            yield rest + Forest.of(Tree(t.label, inner))


def simk_oracle(f: Forest, g: Forest, k: int, budget: int = 10_000) -> SimkOutcome:
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    if f == g:
        return SimkOutcome(PROVEN, 1)
    if paths(f) != paths(g):
        return SimkOutcome(NOT_PROVEN, 1)
    if k == 1:
        return SimkOutcome(PROVEN, 1)
    seen = {f}
    queue = deque([f])
    while queue:
        current = queue.popleft()
        for nxt in rewrites(current):
            if nxt == g:
                return SimkOutcome(PROVEN, len(seen) + 1)
            if nxt in seen:
                continue
            if len(seen) >= budget:
                return SimkOutcome(NOT_PROVEN, len(seen))
            seen.add(nxt)
            queue.append(nxt)
    return SimkOutcome(NOT_PROVEN, len(seen))
