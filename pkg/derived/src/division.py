"""Division of a derived category into a finite forest algebra.

An assignment maps each half-arrow to a nonempty set of H elements and each
arrow to a nonempty set of V elements. It is a division when the sets are
preserved by composition, action and the two sums (clauses 1a-1e) and
distinct half-arrows or arrows with the same endpoints get disjoint sets
(clauses 2a and 2b).
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional, Union

from algebra.src.tables import FiniteForestAlgebra
from derived.src.category import Arrow, DerivedCategory, HalfArrow
from src.errors import PartialAssignmentError
from src.logging_utils import Logger, quiet_logger

Item = Union[HalfArrow, Arrow]
CLAUSES = ("1a", "1b", "1c", "1d", "1e", "2a", "2b")


@dataclass
class Assignment:
    halves: dict[HalfArrow, frozenset[int]] = field(default_factory=dict)
    arrows: dict[Arrow, frozenset[int]] = field(default_factory=dict)

    def __getitem__(self, item: Item) -> frozenset[int]:
        if isinstance(item, HalfArrow):
            return self.halves[item]
        return self.arrows[item]

    def get(self, item: Item) -> Optional[frozenset[int]]:
        if isinstance(item, HalfArrow):
            return self.halves.get(item)
        return self.arrows.get(item)

    def set(self, item: Item, value: frozenset[int]):
        if isinstance(item, HalfArrow):
            self.halves[item] = value
        else:
            self.arrows[item] = value

    def unset(self, item: Item):
        if isinstance(item, HalfArrow):
            self.halves.pop(item, None)
        else:
            self.arrows.pop(item, None)

    def copy(self) -> "Assignment":
        return Assignment(dict(self.halves), dict(self.arrows))


@dataclass(frozen=True)
class Constraint:
    """``op(K[first], K[second]) ⊆ K[result]`` or, for clause 2, K[first] ∩ K[second] = ∅."""
    clause: str
    first: Item
    second: Item
    result: Optional[Item] = None


def constraints(C: DerivedCategory) -> Iterator[Constraint]:
    """Every instance of every clause, in clause order."""
    for e in C.arrows:
        for f in C.arrows:
            if e.target == f.source:
                yield Constraint("1a", f, e, C.compose(f, e))
    for e in C.arrows:
        for c in C.halves_at(e.source):
            yield Constraint("1b", e, c, C.act(e, c))
    for c in C.halves:
        for d in C.halves:
            yield Constraint("1c", c, d, C.add_halves(c, d))
    for c in C.halves:
        for f in C.arrows:
            yield Constraint("1d", c, f, C.add_arrow_half(f, c))
    for f in C.arrows:
        for c in C.halves:
            yield Constraint("1e", f, c, C.add_arrow_half(f, c))
    for e, f in combinations(C.arrows, 2):
        if (e.source, e.target) == (f.source, f.target):
            yield Constraint("2a", e, f)
    for c, d in combinations(C.halves, 2):
        if c.endpoint == d.endpoint:
            yield Constraint("2b", c, d)


def _image(A: FiniteForestAlgebra, clause: str, left: frozenset[int], right: frozenset[int]) -> set[int]:
    if clause == "1a":
        return {int(A.mul[u, w]) for u in left for w in right}
    if clause == "1b":
        return {int(A.act[u, h]) for u in left for h in right}
    if clause == "1c":
        return {int(A.add[g, h]) for g in left for h in right}
    if clause == "1d":
        return {int(A.mul[A.ins[h], u]) for h in left for u in right}
    # 1e: v + h, which in a horizontally commutative algebra is again I_h·v
    return {int(A.mul[A.ins[h], u]) for u in left for h in right}


def satisfied(A: FiniteForestAlgebra, constraint: Constraint, assignment: Assignment) -> Optional[bool]:
    """None while one of the involved sets is still unassigned."""
    left = assignment.get(constraint.first)
    right = assignment.get(constraint.second)
    if left is None or right is None:
        return None
    if constraint.result is None:
        return not (left & right)
    target = assignment.get(constraint.result)
    if target is None:
        return None
    return _image(A, constraint.clause, left, right) <= target


@dataclass
class DivisionVerdict:
    ok: bool
    clause: Optional[str] = None
    witness: Optional[Constraint] = None

    def render(self) -> str:
        if self.ok:
            return "division: yes"
        return f"division: no clause {self.clause} ({self.witness.first}, {self.witness.second})"


def _check_total(C: DerivedCategory, A: FiniteForestAlgebra, assignment: Assignment):
    for item in list(C.halves) + list(C.arrows):
        value = assignment.get(item)
        if not value:
            raise PartialAssignmentError(f"no nonempty set assigned to {item}")
        bound = A.h_size if isinstance(item, HalfArrow) else A.v_size
        if any(not 0 <= x < bound for x in value):
            raise PartialAssignmentError(f"set for {item} leaves the algebra")


def verify_division(C: DerivedCategory, A: FiniteForestAlgebra, assignment: Assignment) -> DivisionVerdict:
    _check_total(C, A, assignment)
    for constraint in constraints(C):
        if not satisfied(A, constraint, assignment):
            return DivisionVerdict(False, constraint.clause, constraint)
    return DivisionVerdict(True)


def identity_assignment(C: DerivedCategory) -> Assignment:
    """The division of C into its left algebra: half-arrows keep their value,
    arrows get every V element acting like their row."""
    A = C.left
    assignment = Assignment()
    for x in C.halves:
        assignment.halves[x] = frozenset({x.value})
    for arrow in C.arrows:
        sources = list(C.half_values[arrow.source])
        assignment.arrows[arrow] = frozenset(
            v for v in range(A.v_size) if tuple(int(A.act[v, a]) for a in sources) == arrow.row)
    return assignment


FOUND, NOT_FOUND, EXHAUSTED = "found", "not-found", "budget-exhausted"


@dataclass
class DivisionSearch:
    status: str
    assignment: Optional[Assignment] = None
    explored: int = 0


def _candidates(size: int, max_subset: int) -> list[frozenset[int]]:
    return [frozenset(c) for k in range(1, min(size, max_subset) + 1) for c in combinations(range(size), k)]


def search_division(C: DerivedCategory, A: FiniteForestAlgebra, budget: int = 200_000,
                    max_subset: int = 2, logger: Optional[Logger] = None) -> DivisionSearch:
    """Backtracking over small subsets, smallest first, checking every clause
    as soon as all of its sets are assigned."""
    logger = logger or quiet_logger()
    items: list[Item] = list(C.halves) + list(C.arrows)
    watching: dict[Item, list[Constraint]] = {item: [] for item in items}
    for constraint in constraints(C):
        for item in {constraint.first, constraint.second, constraint.result} - {None}:
            watching[item].append(constraint)
    h_candidates = _candidates(A.h_size, max_subset)
    v_candidates = _candidates(A.v_size, max_subset)
    assignment = Assignment()
    explored = 0

    def extend(i: int) -> Optional[str]:
        nonlocal explored
        if i == len(items):
            return FOUND
        item = items[i]
        for value in h_candidates if isinstance(item, HalfArrow) else v_candidates:
            if explored >= budget:
                return EXHAUSTED
            explored += 1
            assignment.set(item, value)
            if all(satisfied(A, c, assignment) is not False for c in watching[item]):
                status = extend(i + 1)
                if status in (FOUND, EXHAUSTED):
                    return status
            assignment.unset(item)
        return NOT_FOUND

    status = extend(0) if budget > 0 else NOT_FOUND
    logger(f"[DivisionSearch] {status} after {explored} candidate sets", level="info")
    if status == FOUND:
        return DivisionSearch(FOUND, assignment.copy(), explored)
    return DivisionSearch(status, None, explored)
