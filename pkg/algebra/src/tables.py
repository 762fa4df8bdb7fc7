"""Finite forest algebras as dense numpy tables, and letter maps into them."""
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from src.errors import MalformedTableError, UnknownLabelError


def _frozen(table, name: str, shape: tuple[int, ...], bound: int) -> np.ndarray:
    try:
        arr = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise MalformedTableError(f"{name}: {e}")
    if arr.shape != shape:
        raise MalformedTableError(f"{name} has shape {arr.shape}, expected {shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= bound):
        bad = tuple(int(i) for i in np.argwhere((arr < 0) | (arr >= bound))[0])
        raise MalformedTableError(f"{name}{list(bad)} = {int(arr[bad])} is out of range 0..{bound - 1}")
    arr = arr.astype(np.int32)
    arr.setflags(write=False)
    return arr


class FiniteForestAlgebra:
    """Tables for (H,+), (V,·), the action V×H→H and the insertion map I.

    Construction only checks that the tables are well formed; the forest
    algebra axioms are checked by :func:`algebra.src.validation.validate_algebra`.
    """

    def __init__(self, add, mul, act, ins, zero_h: int = 0, one_v: int = 0,
                 h_names: Optional[Sequence[str]] = None, v_names: Optional[Sequence[str]] = None):
        m = len(add)
        n = len(mul)
        if m == 0 or n == 0:
            raise MalformedTableError("H and V must be nonempty")
        self.add = _frozen(add, "ADD", (m, m), m)
        self.mul = _frozen(mul, "MUL", (n, n), n)
        self.act = _frozen(act, "ACT", (n, m), m)
        self.ins = _frozen(ins, "INS", (m,), n)
        if not 0 <= zero_h < m:
            raise MalformedTableError(f"ZERO {zero_h} is out of range 0..{m - 1}")
        if not 0 <= one_v < n:
            raise MalformedTableError(f"ONE {one_v} is out of range 0..{n - 1}")
        self.zero_h = int(zero_h)
        self.one_v = int(one_v)
        self.h_names = tuple(h_names) if h_names else tuple(str(i) for i in range(m))
        self.v_names = tuple(v_names) if v_names else tuple(f"v{j}" for j in range(n))
        if len(self.h_names) != m or len(self.v_names) != n:
            raise MalformedTableError("name lists must match the table sizes")

    @property
    def h_size(self) -> int:
        return int(self.add.shape[0])

    @property
    def v_size(self) -> int:
        return int(self.mul.shape[0])

    def __repr__(self):
        return f"FiniteForestAlgebra(|H|={self.h_size}, |V|={self.v_size})"

    def same_tables(self, other: "FiniteForestAlgebra") -> bool:
        return (self.zero_h == other.zero_h and self.one_v == other.one_v
                and np.array_equal(self.add, other.add) and np.array_equal(self.mul, other.mul)
                and np.array_equal(self.act, other.act) and np.array_equal(self.ins, other.ins))

    def h_sum(self, elements: Iterable[int]) -> int:
        total = self.zero_h
        for h in elements:
            total = int(self.add[total, h])
        return total

    def h_index(self, name: str) -> int:
        return self.h_names.index(name)

    def v_index(self, name: str) -> int:
        return self.v_names.index(name)


@dataclass(frozen=True)
class LetterMap:
    """ℓ: Σ → V, the images of the one-node contexts."""
    letters: tuple[str, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.letters) != len(self.values):
            raise MalformedTableError("letter map: letters and values differ in length")
        if len(set(self.letters)) != len(self.letters):
            raise MalformedTableError("letter map: duplicate letter")

    @classmethod
    def from_dict(cls, mapping: Mapping[str, int]) -> "LetterMap":
        letters = tuple(sorted(mapping))
        return cls(letters, tuple(int(mapping[a]) for a in letters))

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.letters

    def __getitem__(self, letter: str) -> int:
        try:
            return self.values[self.letters.index(letter)]
        except ValueError:
            raise UnknownLabelError(letter)

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.letters, self.values))

    def check_against(self, algebra: FiniteForestAlgebra):
        for letter, v in zip(self.letters, self.values):
            if not 0 <= v < algebra.v_size:
                raise MalformedTableError(f"LETTER {letter} {v}: V index out of range 0..{algebra.v_size - 1}")
