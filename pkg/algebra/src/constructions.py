"""Products, generated subalgebras, faithful quotients, transformation
algebras and isomorphism search."""
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from algebra.src.tables import FiniteForestAlgebra, LetterMap
from src.errors import AlgebraPreconditionError, MalformedTableError, ResourceLimitError
from src.logging_utils import Logger, quiet_logger


@dataclass
class Quotient:
    algebra: FiniteForestAlgebra
    v_class: tuple[int, ...]   # old V index -> new V index


def faithful_quotient_map(A: FiniteForestAlgebra) -> Quotient:
    """Merge V elements with identical action rows."""
    n = A.v_size
    first: dict[bytes, int] = {}
    reps: list[int] = []
    v_class = [0] * n
    for v in range(n):
        key = A.act[v].tobytes()
        if key not in first:
            first[key] = len(reps)
            reps.append(v)
        v_class[v] = first[key]
    if len(reps) == n:
        return Quotient(A, tuple(range(n)))
    cls = np.array(v_class)
    mul = cls[A.mul]
    for i, r in enumerate(reps):
        members = np.flatnonzero(cls == i)
        for j, s in enumerate(reps):
            others = np.flatnonzero(cls == j)
            if len(set(int(x) for x in mul[np.ix_(members, others)].ravel())) != 1:
                raise MalformedTableError(f"equal action rows do not form a congruence at ({r}, {s})")
    new_mul = mul[np.ix_(reps, reps)]
    new_act = A.act[reps]
    new_ins = cls[A.ins]
    names = [A.v_names[r] for r in reps]
    quotient = FiniteForestAlgebra(A.add, new_mul, new_act, new_ins, A.zero_h,
                                   int(cls[A.one_v]), A.h_names, names)
    return Quotient(quotient, tuple(int(c) for c in cls))


def faithful_quotient(A: FiniteForestAlgebra) -> FiniteForestAlgebra:
    return faithful_quotient_map(A).algebra


def direct_product(A: FiniteForestAlgebra, B: FiniteForestAlgebra) -> FiniteForestAlgebra:
    """Componentwise product; H index a·|H_B| + b, V index v·|V_B| + w."""
    mB, nB = B.h_size, B.v_size
    add = (A.add[:, None, :, None] * mB + B.add[None, :, None, :]).reshape(A.h_size * mB, A.h_size * mB)
    mul = (A.mul[:, None, :, None] * nB + B.mul[None, :, None, :]).reshape(A.v_size * nB, A.v_size * nB)
    act = (A.act[:, None, :, None] * mB + B.act[None, :, None, :]).reshape(A.v_size * nB, A.h_size * mB)
    ins = (A.ins[:, None] * nB + B.ins[None, :]).reshape(-1)
    h_names = [f"({a},{b})" for a in A.h_names for b in B.h_names]
    v_names = [f"({v},{w})" for v in A.v_names for w in B.v_names]
    product = FiniteForestAlgebra(add, mul, act, ins, A.zero_h * mB + B.zero_h, A.one_v * nB + B.one_v,
                                  h_names, v_names)
    return faithful_quotient(product)


@dataclass
class GeneratedSubalgebra:
    algebra: FiniteForestAlgebra
    letters: LetterMap
    h_embed: tuple[int, ...]    # new H index -> original H index
    v_embed: tuple[int, ...]    # new V index -> an original V representative


def _closure(A: FiniteForestAlgebra, letters: LetterMap, cap: int) -> tuple[list[int], list[int]]:
    hs = {A.zero_h}
    vs = {A.one_v} | set(letters.values) | {int(A.ins[A.zero_h])}
    while True:
        h_arr = np.array(sorted(hs))
        v_arr = np.array(sorted(vs))
        new_h = hs | set(np.unique(A.add[np.ix_(h_arr, h_arr)]).tolist()) | set(np.unique(A.act[np.ix_(v_arr, h_arr)]).tolist())
        new_v = vs | set(np.unique(A.mul[np.ix_(v_arr, v_arr)]).tolist()) | set(A.ins[h_arr].tolist())
        if len(new_h) + len(new_v) > cap:
            raise ResourceLimitError("closure cap", cap, len(new_h) + len(new_v))
        if new_h == hs and new_v == vs:
            break
        hs, vs = new_h, new_v
    h_order = [A.zero_h] + sorted(hs - {A.zero_h})
    v_order = [A.one_v] + sorted(vs - {A.one_v})
    return h_order, v_order


def generated_subalgebra(A: FiniteForestAlgebra, letters: LetterMap, cap: int = 20_000) -> GeneratedSubalgebra:
    """Least subalgebra containing the letter images, re-indexed and made faithful."""
    letters.check_against(A)
    h_order, v_order = _closure(A, letters, cap)
    h_new = {h: i for i, h in enumerate(h_order)}
    v_new = {v: i for i, v in enumerate(v_order)}
    h_map = np.vectorize(h_new.__getitem__, otypes=[np.int64])
    v_map = np.vectorize(v_new.__getitem__, otypes=[np.int64])
    sub = FiniteForestAlgebra(
        h_map(A.add[np.ix_(h_order, h_order)]),
        v_map(A.mul[np.ix_(v_order, v_order)]),
        h_map(A.act[np.ix_(v_order, h_order)]),
        v_map(A.ins[h_order]),
        0, 0,
        [A.h_names[h] for h in h_order],
        [A.v_names[v] for v in v_order],
    )
    unreached = set(range(sub.h_size)) - set(int(h) for h in sub.act[:, 0])
    if unreached:
        missing = ", ".join(sub.h_names[h] for h in sorted(unreached))
        raise AlgebraPreconditionError(f"generated H has elements not of the form v·0: {missing}")
    quotient = faithful_quotient_map(sub)
    reps: dict[int, int] = {}
    for old_sub, cls in enumerate(quotient.v_class):
        reps.setdefault(cls, v_order[old_sub])
    new_letters = LetterMap(letters.letters, tuple(quotient.v_class[v_new[v]] for v in letters.values))
    return GeneratedSubalgebra(
        quotient.algebra,
        new_letters,
        tuple(h_order),
        tuple(reps[c] for c in range(quotient.algebra.v_size)),
    )


def transformation_algebra(add, generators: Mapping[str, Sequence[int]], h_names: Optional[Sequence[str]] = None,
                           cap: int = 20_000, logger: Optional[Logger] = None) -> FiniteForestAlgebra:
    """Forest algebra on the semilattice ``add`` whose V is the transformation
    monoid generated by ``generators`` and all insertions h + _.

    H index 0 must be the neutral element of ``add``.
    """
    logger = logger or quiet_logger()
    add = np.array(add, dtype=np.int64)
    m = add.shape[0]
    identity = tuple(range(m))
    named: dict[tuple[int, ...], str] = {identity: "id"}
    gens: list[tuple[int, ...]] = []
    for name, image in generators.items():
        image = tuple(int(x) for x in image)
        if len(image) != m:
            raise MalformedTableError(f"generator {name} must map all {m} elements of H")
        named.setdefault(image, name)
        gens.append(image)
    hn = list(h_names) if h_names else [str(h) for h in range(m)]
    for h in range(m):
        image = tuple(int(x) for x in add[h])
        named.setdefault(image, f"I{hn[h]}")
        gens.append(image)

    elements = [identity]
    index = {identity: 0}
    queue = 0
    while queue < len(elements):
        e = elements[queue]
        queue += 1
        for g in gens:
            composite = tuple(e[g[x]] for x in range(m))   # e after g
            if composite not in index:
                index[composite] = len(elements)
                elements.append(composite)
                if len(elements) > cap:
                    raise ResourceLimitError("closure cap", cap, len(elements))
    logger(f"[TransformationAlgebra] |H|={m} |V|={len(elements)}", level="debug")

    n = len(elements)
    mul = [[index[tuple(elements[i][elements[j][x]] for x in range(m))] for j in range(n)] for i in range(n)]
    act = [list(e) for e in elements]
    ins = [index[tuple(int(x) for x in add[h])] for h in range(m)]
    v_names = [named.get(e, f"v{j}") for j, e in enumerate(elements)]
    seen: set[str] = set()
    for j, name in enumerate(v_names):
        if name in seen:
            v_names[j] = f"v{j}"
        seen.add(v_names[j])
    return FiniteForestAlgebra(add, mul, act, ins, 0, 0, hn, v_names)


def permute_algebra(A: FiniteForestAlgebra, h_perm: Sequence[int], v_perm: Sequence[int]) -> FiniteForestAlgebra:
    """Rename H element h to h_perm[h] and V element v to v_perm[v]."""
    hp = np.array(h_perm)
    vp = np.array(v_perm)
    h_inv = np.argsort(hp)
    v_inv = np.argsort(vp)
    add = hp[A.add[np.ix_(h_inv, h_inv)]]
    mul = vp[A.mul[np.ix_(v_inv, v_inv)]]
    act = hp[A.act[np.ix_(v_inv, h_inv)]]
    ins = vp[A.ins[h_inv]]
    return FiniteForestAlgebra(add, mul, act, ins, int(hp[A.zero_h]), int(vp[A.one_v]),
                               [A.h_names[i] for i in h_inv], [A.v_names[i] for i in v_inv])


@dataclass
class Isomorphism:
    h_map: tuple[int, ...]
    v_map: tuple[int, ...]


def _h_signature(A: FiniteForestAlgebra, h: int) -> tuple:
    return (
        h == A.zero_h,
        int(A.add[h, h]) == h,
        int(np.count_nonzero(A.add[h] == h)),
        int(np.count_nonzero(A.act[:, A.zero_h] == h)),
        int(np.count_nonzero(A.act == h)),
    )


def find_isomorphism(A: FiniteForestAlgebra, B: FiniteForestAlgebra, budget: int = 1_000_000) -> Optional[Isomorphism]:
    """Bounded backtracking search for an isomorphism A → B.

    H is searched element by element under the + table; the V map is then
    forced by faithfulness and checked against · and I.
    """
    m, n = A.h_size, A.v_size
    if m != B.h_size or n != B.v_size:
        return None
    sig_a = [_h_signature(A, h) for h in range(m)]
    sig_b = [_h_signature(B, h) for h in range(m)]
    b_rows = {B.act[v].tobytes(): v for v in range(n)}
    sigma = [-1] * m
    used = [False] * m
    steps = [0]

    def consistent(h: int) -> bool:
        for k in range(h + 1):
            for x, y in ((h, k), (k, h)):
                s = int(A.add[x, y])
                if s <= h and sigma[s] != int(B.add[sigma[x], sigma[y]]):
                    return False
        return True

    def v_map() -> Optional[tuple[int, ...]]:
        sig = np.array(sigma)
        inv = np.argsort(sig)
        tau = []
        for v in range(n):
            row = sig[A.act[v][inv]]
            target = b_rows.get(row.astype(B.act.dtype).tobytes())
            if target is None:
                return None
            tau.append(target)
        tau_arr = np.array(tau)
        if not np.array_equal(sig[A.add], B.add[np.ix_(sig, sig)]):
            return None
        if not np.array_equal(tau_arr[A.mul], B.mul[np.ix_(tau_arr, tau_arr)]):
            return None
        if not np.array_equal(tau_arr[A.ins], B.ins[sig]):
            return None
        return tuple(int(t) for t in tau)

    def search(h: int) -> Optional[Isomorphism]:
        if h == m:
            tau = v_map()
            return Isomorphism(tuple(sigma), tau) if tau is not None else None
        # try the identical index first
        for cand in sorted(range(m), key=lambda c: (c != h, c)):
            if used[cand] or sig_a[h] != sig_b[cand]:
                continue
            steps[0] += 1
            if steps[0] > budget:
                raise ResourceLimitError("isomorphism search budget", budget, steps[0])
            sigma[h], used[cand] = cand, True
            if consistent(h):
                found = search(h + 1)
                if found is not None:
                    return found
            sigma[h], used[cand] = -1, False
        return None

    return search(0)
