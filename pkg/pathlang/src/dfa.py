"""The path-language automaton of a recognized forest language.

A state is the set of V values of the contexts ``α₁[s₁ + … αₖ[sₖ + _]]``
whose hole sits at the end of the word read so far. Only reachable subset
states are built.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

import pydot

from algebra.src.morphism import Morphism, realize_values
from algebra.src.tables import FiniteForestAlgebra, LetterMap
from forest.src.enumeration import enumerate_forests
from forest.src.paths import Word, paths, render_word
from forest.src.trees import Forest, Tree
from src.errors import FormatError
from src.logging_utils import Logger, quiet_logger


@dataclass
class WordDFA:
    states: list[frozenset[int]]
    alphabet: tuple[str, ...]
    start: int
    accepting: frozenset[int]
    transitions: dict[tuple[int, str], int] = field(default_factory=dict)

    def step(self, state: int, letter: str) -> int:
        return self.transitions[(state, letter)]

    def run(self, word: Iterable[str]) -> int:
        state = self.start
        for letter in word:
            state = self.step(state, letter)
        return state

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.accepting

    def is_empty(self) -> bool:
        return not self.accepting

    def accepted_words(self, max_length: int) -> list[Word]:
        """Every accepted word of length ≤ ``max_length``, shortest first."""
        out: list[Word] = []
        layer: list[tuple[Word, int]] = [((), self.start)]
        for length in range(max_length + 1):
            out.extend(word for word, state in layer if state in self.accepting)
            if length == max_length:
                break
            layer = [(word + (a,), self.step(state, a)) for word, state in layer for a in self.alphabet]
        return out

    def to_text(self) -> str:
        lines = ["DFA", f"STATES {len(self.states)}", f"START {self.start}",
                 "ACCEPT" + "".join(f" {q}" for q in sorted(self.accepting))]
        for q in range(len(self.states)):
            for a in self.alphabet:
                lines.append(f"TRANS {q} {a} {self.transitions[(q, a)]}")
        return "\n".join(lines) + "\n"

    def to_dot(self, v_names: Optional[Sequence[str]] = None) -> str:
        graph = pydot.Dot("pi_automaton", graph_type="digraph", rankdir="LR")
        for q, subset in enumerate(self.states):
            names = [v_names[v] if v_names else str(v) for v in sorted(subset)]
            shape = "doublecircle" if q in self.accepting else "circle"
            graph.add_node(pydot.Node(f"q{q}", label=f'"q{q}\\n{{{",".join(names)}}}"', shape=shape))
        graph.add_node(pydot.Node("init", shape="point"))
        graph.add_edge(pydot.Edge("init", f"q{self.start}"))
        edges: dict[tuple[int, int], list[str]] = {}
        for (q, a), r in sorted(self.transitions.items()):
            edges.setdefault((q, r), []).append(a)
        for (q, r), labels in edges.items():
            graph.add_edge(pydot.Edge(f"q{q}", f"q{r}", label=f'"{",".join(labels)}"'))
        return graph.to_string()


def parse_dfa(text: str, alphabet: Sequence[str], path: str = "<string>") -> WordDFA:
    """Read the text form written by :meth:`WordDFA.to_text`; state subsets are not stored."""
    count = start = None
    accepting: frozenset[int] = frozenset()
    transitions: dict[tuple[int, str], int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "DFA":
            continue
        try:
            if tokens[0] == "STATES":
                count = int(tokens[1])
            elif tokens[0] == "START":
                start = int(tokens[1])
            elif tokens[0] == "ACCEPT":
                accepting = frozenset(int(t) for t in tokens[1:])
            elif tokens[0] == "TRANS":
                transitions[(int(tokens[1]), tokens[2])] = int(tokens[3])
            else:
                raise FormatError(f"unknown keyword {tokens[0]!r}", path, number)
        except (IndexError, ValueError):
            raise FormatError(f"malformed line {raw!r}", path, number) from None
    if count is None or start is None:
        raise FormatError("missing STATES or START", path)
    return WordDFA([frozenset() for _ in range(count)], tuple(alphabet), start, accepting, transitions)


def pi_automaton(A: FiniteForestAlgebra, letters: LetterMap, accept: Iterable[int],
                 logger: Optional[Logger] = None) -> WordDFA:
    """DFA for the set of words that are paths of some forest with value in ``accept``."""
    logger = logger or quiet_logger()
    accept = frozenset(accept)
    realizable = sorted(realize_values(A, letters))
    insertions = sorted({int(A.ins[h]) for h in realizable})
    accepting_v = frozenset(
        v for v in range(A.v_size)
        if any(int(A.add[h, A.act[v, A.zero_h]]) in accept for h in realizable))

    start = frozenset({A.one_v})
    states = [start]
    index = {start: 0}
    transitions: dict[tuple[int, str], int] = {}
    queue = 0
    while queue < len(states):
        subset = states[queue]
        for letter, value in zip(letters.letters, letters.values):
            target = frozenset(int(A.mul[A.mul[v, value], i]) for v in subset for i in insertions)
            if target not in index:
                index[target] = len(states)
                states.append(target)
            transitions[(queue, letter)] = index[target]
        queue += 1
    accepting = frozenset(q for q, subset in enumerate(states) if subset & accepting_v)
    logger(f"[pi_automaton] {len(states)} states, {len(accepting)} accepting", level="debug")
    return WordDFA(states, letters.letters, 0, accepting, transitions)


def bounded_pi_oracle(A: FiniteForestAlgebra, letters: LetterMap, accept: Iterable[int],
                      max_height: int, max_nodes: int, cap: int = 200_000) -> set[Word]:
    """Union of the path sets of the enumerated forests whose value is in ``accept``."""
    accept = frozenset(accept)
    morphism = Morphism(A, letters)
    words: set[Word] = set()
    for f in enumerate_forests(letters.letters, max_height, max_nodes, cap):
        if morphism.forest(f) in accept:
            words |= paths(f).words
    return words


def word_witness(A: FiniteForestAlgebra, letters: LetterMap, accept: Iterable[int],
                 word: Sequence[str]) -> Optional[Forest]:
    """A forest with value in ``accept`` having ``word`` as a path, or None.

    Such a forest has the shape ``s₀ + α₁[s₁ + … αₖ[sₖ]]``, so it is enough to
    track the values reachable from the inside out with each ``sᵢ`` drawn
    from the realizable values.
    """
    accept = frozenset(accept)
    witnesses = realize_values(A, letters)
    realizable = sorted(witnesses)
    letter_value = letters.as_dict()
    # innermost first: value -> forest of the form αᵢ[sᵢ + …]
    reached: dict[int, Forest] = {}
    for position in reversed(range(len(word))):
        label = word[position]
        v = letter_value[label]
        inner = reached if position < len(word) - 1 else None
        layer: dict[int, Forest] = {}
        candidates = inner.items() if inner is not None else [(A.zero_h, Forest())]
        for (below, below_forest), h in product(candidates, realizable):
            value = int(A.act[v, A.add[h, below]])
            if value not in layer:
                layer[value] = Forest.of(Tree(label, witnesses[h] + below_forest))
        reached = layer
    if not word:
        reached = {A.zero_h: Forest()}
    for below, below_forest in sorted(reached.items()):
        for h in realizable:
            if int(A.add[h, below]) in accept:
                return witnesses[h] + below_forest
    return None


def render_words(words: Iterable[Word]) -> str:
    return "\n".join(render_word(w) for w in sorted(words, key=lambda w: (len(w), w)))
