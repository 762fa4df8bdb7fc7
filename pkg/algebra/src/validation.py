"""Exhaustive axiom, horizontality and distributivity checks."""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from algebra.src.tables import FiniteForestAlgebra
from src.errors import AlgebraPreconditionError

AXIOMS = (
    "h-monoid",
    "v-monoid",
    "action-unit",
    "action-law",
    "faithfulness",
    "insertion",
    "condition-7",
)


def _first(mask: np.ndarray) -> Optional[tuple[int, ...]]:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])


@dataclass
class AxiomResult:
    name: str
    passed: bool
    counterexample: Optional[tuple[int, ...]] = None
    detail: str = ""

    def render(self) -> str:
        if self.passed:
            return f"{self.name}: pass"
        return f"{self.name}: FAIL {self.detail} {list(self.counterexample)}"


@dataclass
class ValidationReport:
    results: list[AxiomResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def render(self) -> str:
        lines = [r.render() for r in self.results]
        lines.append("valid" if self.ok else "invalid")
        return "\n".join(lines)


def _check_monoid(table: np.ndarray, unit: int, name: str) -> AxiomResult:
    k = table.shape[0]
    idx = np.arange(k)
    left = table[table, :]                                   # (x·y)·z
    right = table[idx[:, None, None], table[None, :, :]]     # x·(y·z)
    witness = _first(left != right)
    if witness is not None:
        return AxiomResult(name, False, witness, "associativity (x, y, z)")
    witness = _first((table[unit, :] != idx) | (table[:, unit] != idx))
    if witness is not None:
        return AxiomResult(name, False, witness, "identity (x)")
    return AxiomResult(name, True)


def validate_algebra(A: FiniteForestAlgebra) -> ValidationReport:
    m, n = A.h_size, A.v_size
    hs = np.arange(m)
    report = ValidationReport()
    report.results.append(_check_monoid(A.add, A.zero_h, "h-monoid"))
    report.results.append(_check_monoid(A.mul, A.one_v, "v-monoid"))

    witness = _first(A.act[A.one_v] != hs)
    report.results.append(AxiomResult("action-unit", witness is None, witness, "1_V·h ≠ h (h)"))

    left = A.act[np.arange(n)[:, None, None], A.act[None, :, :]]   # v·(v'·h)
    right = A.act[A.mul[:, :, None], hs[None, None, :]]            # (vv')·h
    witness = _first(left != right)
    report.results.append(AxiomResult("action-law", witness is None, witness, "(v, v', h)"))

    groups: dict[bytes, list[int]] = {}
    for v in range(n):
        groups.setdefault(A.act[v].tobytes(), []).append(v)
    duplicates = sorted(g[:2] for g in groups.values() if len(g) > 1)
    witness = tuple(duplicates[0]) if duplicates else None
    report.results.append(AxiomResult("faithfulness", witness is None, witness, "equal action rows (v, v')"))

    witness = _first(A.act[A.ins, :] != A.add)
    report.results.append(AxiomResult("insertion", witness is None, witness, "I_h·h' ≠ h+h' (h, h')"))

    reached = set(int(h) for h in A.act[:, A.zero_h])
    missing = [h for h in range(m) if h not in reached]
    witness = (missing[0],) if missing else None
    report.results.append(AxiomResult("condition-7", witness is None, witness, "no v with v·0_H = h (h)"))
    return report


@dataclass
class HorizontalVerdict:
    idempotent: bool
    commutative: bool
    idempotent_witness: Optional[int] = None
    commutative_witness: Optional[tuple[int, int]] = None

    @property
    def ok(self) -> bool:
        return self.idempotent and self.commutative

    def render(self) -> str:
        lines = [
            "idempotent: yes" if self.idempotent else f"idempotent: no h={self.idempotent_witness}",
            "commutative: yes" if self.commutative else f"commutative: no (h1, h2)={self.commutative_witness}",
        ]
        return "\n".join(lines)


def check_horizontal(A: FiniteForestAlgebra) -> HorizontalVerdict:
    hs = np.arange(A.h_size)
    idem = _first(A.add[hs, hs] != hs)
    comm = _first(A.add != A.add.T)
    return HorizontalVerdict(
        idempotent=idem is None,
        commutative=comm is None,
        idempotent_witness=idem[0] if idem else None,
        commutative_witness=comm,
    )


@dataclass
class DistributivityVerdict:
    holds: bool
    witness: Optional[tuple[int, int, int]] = None

    def render(self, A: Optional[FiniteForestAlgebra] = None) -> str:
        if self.holds:
            return "distributive: yes"
        v, h1, h2 = self.witness
        if A is not None:
            return f"distributive: no v={A.v_names[v]} h1={A.h_names[h1]} h2={A.h_names[h2]}"
        return f"distributive: no v={v} h1={h1} h2={h2}"


def distributivity_violations(A: FiniteForestAlgebra) -> np.ndarray:
    """Boolean (v, h1, h2) array marking v(h1+h2) ≠ vh1 + vh2."""
    left = A.act[:, A.add]                                  # v·(h1+h2)
    right = A.add[A.act[:, :, None], A.act[:, None, :]]     # v·h1 + v·h2
    return left != right


def is_distributive(A: FiniteForestAlgebra) -> DistributivityVerdict:
    horizontal = check_horizontal(A)
    if not horizontal.ok:
        raise AlgebraPreconditionError(f"distributivity needs a horizontally idempotent, commutative algebra:\n{horizontal.render()}")
    witness = _first(distributivity_violations(A))
    return DistributivityVerdict(witness is None, witness)
