"""Bounded enumeration and seeded random generation of forests and contexts."""
import random
from functools import lru_cache
from typing import Sequence

from forest.src.grammar import render
from forest.src.trees import EMPTY, Context, Forest, Tree
from src.errors import ResourceLimitError

DEFAULT_ENUM_CAP = 200_000


@lru_cache(maxsize=256)
def _trees(alphabet: tuple[str, ...], max_height: int, max_nodes: int) -> tuple[Tree, ...]:
    """All trees of height ≤ max_height with at most max_nodes nodes."""
    if max_height <= 0 or max_nodes <= 0:
        return ()
    bodies = _forests(alphabet, max_height - 1, max_nodes - 1)
    return tuple(Tree(label, body) for body in bodies for label in alphabet)


@lru_cache(maxsize=256)
def _forests(alphabet: tuple[str, ...], max_height: int, max_nodes: int) -> tuple[Forest, ...]:
    candidates = sorted(_trees(alphabet, max_height, max_nodes), key=lambda t: (t.size, t.key))
    out: list[Forest] = []

    def extend(start: int, chosen: list[Tree], budget: int):
        out.append(Forest(chosen))
        for i in range(start, len(candidates)):
            t = candidates[i]
            if t.size > budget:
                break
            chosen.append(t)
            extend(i + 1, chosen, budget - t.size)
            chosen.pop()

    extend(0, [], max_nodes)
    return tuple(out)


def enumerate_forests(alphabet: Sequence[str], max_height: int, max_nodes: int, cap: int = DEFAULT_ENUM_CAP) -> list[Forest]:
    """Every canonical forest within the bounds exactly once, ordered by node count then rendering."""
    if max_height < 0 or max_nodes < 0:
        raise ValueError("bounds must be non-negative")
    alphabet = tuple(sorted(set(alphabet)))
    count = _count_forests(alphabet, max_height, max_nodes, cap)
    if count > cap:
        raise ResourceLimitError("enumeration cap", cap, count)
    forests = _forests(alphabet, max_height, max_nodes)
    return sorted(forests, key=lambda f: (f.size, render(f)))


def _count_forests(alphabet: tuple[str, ...], max_height: int, max_nodes: int, cap: int) -> int:
    """Number of forests within the bounds, stopping early once it passes ``cap``."""
    # counts[h][n]: forests of height ≤ h with exactly n nodes
    sigma = len(alphabet)
    forest_counts = [1] + [0] * max_nodes
    for _ in range(max_height):
        tree_counts = [0] + [sigma * forest_counts[n - 1] for n in range(1, max_nodes + 1)]
        nxt = [1] + [0] * max_nodes
        # choose a set of distinct trees: multiply in each size class
        for size in range(1, max_nodes + 1):
            k = tree_counts[size]
            if k == 0:
                continue
            updated = nxt[:]
            for total in range(max_nodes + 1):
                if nxt[total] == 0:
                    continue
                binom = 1
                for j in range(1, min(k, (max_nodes - total) // size) + 1):
                    binom = binom * (k - j + 1) // j
                    updated[total + j * size] += nxt[total] * binom
            nxt = [min(c, cap + 1) for c in updated]
        forest_counts = nxt
    return min(sum(forest_counts), cap + 1)


def random_forest(rng: random.Random, alphabet: Sequence[str], max_height: int, max_nodes: int) -> Forest:
    budget = [rng.randint(0, max_nodes)]

    def grow(depth: int) -> Forest:
        trees = []
        while budget[0] > 0 and rng.random() < 0.6:
            budget[0] -= 1
            label = rng.choice(list(alphabet))
            children = grow(depth - 1) if depth > 1 else EMPTY
            trees.append(Tree(label, children))
        return Forest(trees)

    return grow(max_height) if max_height > 0 else EMPTY


def random_context(rng: random.Random, alphabet: Sequence[str], max_depth: int, max_nodes: int) -> Context:
    depth = rng.randint(0, max_depth)
    siblings = [random_forest(rng, alphabet, max(1, max_depth - d), max(0, max_nodes // (depth + 1))) for d in range(depth + 1)]
    context: Context = Context(siblings[depth])
    for d in range(depth - 1, -1, -1):
        context = Context(siblings[d], rng.choice(list(alphabet)), context)
    return context
