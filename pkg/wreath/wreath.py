"""Wreath products (H₁ × H₂, V₁^{H₂} × V₂) of finite forest algebras.

Elements of the left V component are functions H₂ → V₁ stored as rows
indexed by H₂. The action is (f, v)(h₁, h₂) = (f(h₂)h₁, vh₂) and the
product is (f, v)(f', v') = (f'', vv') with f''(h) = f(v'h)·f'(h).
"""
import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from algebra.src.constructions import faithful_quotient_map
from algebra.src.fileio import parse_int, tokenized_lines
from algebra.src.tables import FiniteForestAlgebra, LetterMap
from src.errors import FormatError, MalformedTableError, ResourceLimitError
from src.logging_utils import Logger, quiet_logger

HPair = tuple[int, int]
VPair = tuple[tuple[int, ...], int]


@dataclass
class WreathAlgebra:
    algebra: FiniteForestAlgebra
    left: FiniteForestAlgebra
    right: FiniteForestAlgebra
    h_pairs: tuple[HPair, ...]
    v_pairs: tuple[VPair, ...]

    def h_index(self, pair: HPair) -> int:
        return self.h_pairs.index(pair)


def _pair_names(left: FiniteForestAlgebra, right: FiniteForestAlgebra, h_pairs, v_pairs):
    h_names = [f"({left.h_names[a]},{right.h_names[b]})" for a, b in h_pairs]
    v_names = [f"([{','.join(left.v_names[x] for x in f)}],{right.v_names[v]})" for f, v in v_pairs]
    return h_names, v_names


def wreath_product(A1: FiniteForestAlgebra, A2: FiniteForestAlgebra, cap: int = 4096,
                   logger: Optional[Logger] = None) -> WreathAlgebra:
    """The full wreath product A1 ≀ A2 with every function H₂ → V₁."""
    logger = logger or quiet_logger()
    m1, n1, m2, n2 = A1.h_size, A1.v_size, A2.h_size, A2.v_size
    size = n1 ** m2 * n2
    if size > cap:
        raise ResourceLimitError("wreath size cap", cap, size)
    logger(f"[WreathProduct] building |H|={m1 * m2} |V|={size}", level="debug")

    funcs = np.array(list(itertools.product(range(n1), repeat=m2)), dtype=np.int64).reshape(-1, m2)
    nf = funcs.shape[0]
    weights = n1 ** np.arange(m2 - 1, -1, -1, dtype=np.int64)

    add = (A1.add[:, None, :, None] * m2 + A2.add[None, :, None, :]).reshape(m1 * m2, m1 * m2)

    left_act = A1.act[funcs[:, None, :], np.arange(m1)[None, :, None]]           # [f, h1, h2] = f(h2)·h1
    act = (left_act[:, None, :, :] * m2 + A2.act[None, :, None, :]).reshape(nf * n2, m1 * m2)

    shifted = funcs[:, A2.act]                                                     # [f, v', h] = f(v'h)
    composed = A1.mul[shifted[:, :, None, :], funcs[None, None, :, :]]             # [f, v', f', h]
    f_index = (composed * weights).sum(axis=-1)                                    # [f, v', f']
    mul = (f_index.transpose(0, 2, 1)[:, None, :, :] * n2 + A2.mul[None, :, None, :]).reshape(nf * n2, nf * n2)

    const_weight = int(weights.sum())
    ins = (A1.ins[:, None].astype(np.int64) * const_weight * n2 + A2.ins[None, :]).reshape(-1)
    zero = A1.zero_h * m2 + A2.zero_h
    one = A1.one_v * const_weight * n2 + A2.one_v

    h_pairs = tuple((a, b) for a in range(m1) for b in range(m2))
    v_pairs = tuple((tuple(int(x) for x in funcs[i]), v) for i in range(nf) for v in range(n2))
    h_names, v_names = _pair_names(A1, A2, h_pairs, v_pairs)
    algebra = FiniteForestAlgebra(add, mul, act, ins, zero, one, h_names, v_names)
    if len(set(algebra.act[v].tobytes() for v in range(algebra.v_size))) != algebra.v_size:
        raise MalformedTableError("wreath product of faithful algebras must be faithful")
    return WreathAlgebra(algebra, A1, A2, h_pairs, v_pairs)


def iterated_wreath(algebras: Sequence[FiniteForestAlgebra], cap: int = 4096,
                    logger: Optional[Logger] = None) -> FiniteForestAlgebra:
    """((A₁ ≀ A₂) ≀ A₃) ≀ …, associated to the left."""
    result = algebras[0]
    for nxt in algebras[1:]:
        result = wreath_product(result, nxt, cap, logger).algebra
    return result


class _GeneratedClosure:
    def __init__(self, A1: FiniteForestAlgebra, A2: FiniteForestAlgebra, cap: int):
        self.A1, self.A2, self.cap = A1, A2, cap
        self.h_list: list[HPair] = []
        self.h_index: dict[HPair, int] = {}
        self.v_list: list[VPair] = []
        self.v_index: dict[VPair, int] = {}
        self.pending_h: list[HPair] = []
        self.pending_v: list[VPair] = []

    def add_h(self, h: HPair):
        if h not in self.h_index:
            self.h_index[h] = len(self.h_list)
            self.h_list.append(h)
            self.pending_h.append(h)
            self._check()

    def add_v(self, v: VPair):
        if v not in self.v_index:
            self.v_index[v] = len(self.v_list)
            self.v_list.append(v)
            self.pending_v.append(v)
            self._check()

    def _check(self):
        total = len(self.h_list) + len(self.v_list)
        if total > self.cap:
            raise ResourceLimitError("wreath closure cap", self.cap, total)

    def h_sum(self, x: HPair, y: HPair) -> HPair:
        return int(self.A1.add[x[0], y[0]]), int(self.A2.add[x[1], y[1]])

    def act(self, v: VPair, h: HPair) -> HPair:
        f, w = v
        return int(self.A1.act[f[h[1]], h[0]]), int(self.A2.act[w, h[1]])

    def mul(self, v: VPair, u: VPair) -> VPair:
        f, w = v
        g, x = u
        act2, mul1 = self.A2.act, self.A1.mul
        return tuple(int(mul1[f[act2[x, h]], g[h]]) for h in range(self.A2.h_size)), int(self.A2.mul[w, x])

    def insertion(self, h: HPair) -> VPair:
        return (int(self.A1.ins[h[0]]),) * self.A2.h_size, int(self.A2.ins[h[1]])

    def run(self):
        while self.pending_h or self.pending_v:
            if self.pending_v:
                v = self.pending_v.pop(0)
                for u in list(self.v_list):
                    self.add_v(self.mul(v, u))
                    self.add_v(self.mul(u, v))
                for h in list(self.h_list):
                    self.add_h(self.act(v, h))
            else:
                h = self.pending_h.pop(0)
                self.add_v(self.insertion(h))
                for k in list(self.h_list):
                    self.add_h(self.h_sum(h, k))
                for v in list(self.v_list):
                    self.add_h(self.act(v, h))


def wreath_generated(A1: FiniteForestAlgebra, A2: FiniteForestAlgebra, letters2: LetterMap,
                     gtable: Mapping[str, Mapping[int, int]], cap: int = 20_000,
                     logger: Optional[Logger] = None) -> tuple[WreathAlgebra, LetterMap]:
    """Subalgebra of A1 ≀ A2 generated by the letters α ↦ (g_α, ℓ₂(α))."""
    logger = logger or quiet_logger()
    letters2.check_against(A2)
    m2 = A2.h_size
    letter_pairs: dict[str, VPair] = {}
    for letter, v2 in zip(letters2.letters, letters2.values):
        if letter not in gtable:
            raise MalformedTableError(f"no function table for letter '{letter}'")
        row = gtable[letter]
        missing = [h for h in range(m2) if h not in row]
        if missing:
            raise MalformedTableError(f"function table of '{letter}' misses h2={missing[0]}")
        f = tuple(int(row[h]) for h in range(m2))
        if any(not 0 <= x < A1.v_size for x in f):
            raise MalformedTableError(f"function table of '{letter}' leaves V1")
        letter_pairs[letter] = (f, v2)

    closure = _GeneratedClosure(A1, A2, cap)
    closure.add_h((A1.zero_h, A2.zero_h))
    closure.add_v(((A1.one_v,) * m2, A2.one_v))
    for letter in letters2.letters:
        closure.add_v(letter_pairs[letter])
    closure.run()
    logger(f"[WreathGenerated] closure |H|={len(closure.h_list)} |V|={len(closure.v_list)}", level="debug")

    hs, vs = closure.h_list, closure.v_list
    hi, vi = closure.h_index, closure.v_index
    add = [[hi[closure.h_sum(x, y)] for y in hs] for x in hs]
    mul = [[vi[closure.mul(v, u)] for u in vs] for v in vs]
    act = [[hi[closure.act(v, h)] for h in hs] for v in vs]
    ins = [vi[closure.insertion(h)] for h in hs]
    h_names, v_names = _pair_names(A1, A2, hs, vs)
    raw = FiniteForestAlgebra(add, mul, act, ins, 0, 0, h_names, v_names)
    quotient = faithful_quotient_map(raw)
    reps: dict[int, VPair] = {}
    for old, cls in enumerate(quotient.v_class):
        reps.setdefault(cls, vs[old])
    letters = LetterMap(letters2.letters, tuple(quotient.v_class[vi[letter_pairs[a]]] for a in letters2.letters))
    wreath = WreathAlgebra(quotient.algebra, A1, A2, tuple(hs), tuple(reps[c] for c in range(quotient.algebra.v_size)))
    return wreath, letters


@dataclass
class ProjectionCheck:
    ok: bool
    failure: str = ""


@dataclass
class RightProjection:
    """(h₁, h₂) ↦ h₂ and (f, v) ↦ v, onto the right factor."""
    wreath: WreathAlgebra
    h_map: tuple[int, ...]
    v_map: tuple[int, ...]

    def verify(self) -> ProjectionCheck:
        W = self.wreath.algebra
        R = self.wreath.right
        hm = np.array(self.h_map)
        vm = np.array(self.v_map)
        image = np.array(sorted(set(self.h_map)))

        def same_v(x: np.ndarray, y: np.ndarray) -> np.ndarray:
            # V elements are compared by their action on the projected H image
            return np.all(R.act[x][..., image] == R.act[y][..., image], axis=-1)

        checks = [
            ("zero", hm[W.zero_h] == R.zero_h),
            ("one", bool(same_v(vm[W.one_v], np.array(R.one_v)))),
            ("add", np.array_equal(hm[W.add], R.add[np.ix_(hm, hm)])),
            ("act", np.array_equal(hm[W.act], R.act[np.ix_(vm, hm)])),
            ("mul", bool(np.all(same_v(vm[W.mul], R.mul[np.ix_(vm, vm)])))),
            ("ins", bool(np.all(same_v(vm[W.ins], R.ins[hm])))),
        ]
        for name, passed in checks:
            if not passed:
                return ProjectionCheck(False, name)
        return ProjectionCheck(True)


def project_right(wreath: WreathAlgebra) -> RightProjection:
    return RightProjection(
        wreath,
        tuple(b for _, b in wreath.h_pairs),
        tuple(v for _, v in wreath.v_pairs),
    )


def parse_gtable(text: str, path: str = "<string>") -> dict[str, dict[int, int]]:
    table: dict[str, dict[int, int]] = {}
    for number, tokens in tokenized_lines(text):
        if tokens[0] != "G" or len(tokens) != 4:
            raise FormatError("expected 'G α h2 v1'", path, number)
        table.setdefault(tokens[1], {})[parse_int(tokens[2], path, number)] = parse_int(tokens[3], path, number)
    return table


def format_gtable(table: Mapping[str, Mapping[int, int]]) -> str:
    return "".join(f"G {a} {h} {table[a][h]}\n" for a in sorted(table) for h in sorted(table[a]))
