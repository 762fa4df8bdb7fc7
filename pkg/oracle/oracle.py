"""Brute-force cross checks of every decision procedure against enumeration.

Each suite returns a :class:`SuiteResult`; a finding is a disagreement
between a procedure and its oracle, never an exception.
"""
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional

from prettytable import PrettyTable

from algebra.src.morphism import Morphism
from algebra.src.tables import FiniteForestAlgebra, LetterMap
from algebra.src.validation import check_horizontal, is_distributive
from derived.src.category import DerivedCategory, build_derived_category, is_locally_distributive
from derived.src.diagrams import diagram_merge, diagram_val, random_diagram
from derived.src.division import Assignment, constraints, identity_assignment, verify_division
from fixtures.fixtures import builtin_algebras, membership, recognizer_for
from fixtures.src.algebras import canonical_wreath_pair, trivial
from forest.src.enumeration import enumerate_forests, random_forest
from forest.src.paths import has_equal_label_siblings, paths, psi
from forest.src.trees import Forest, apply_context, node_context
from pathlang.src.dfa import bounded_pi_oracle, pi_automaton, word_witness
from pathlang.src.intersect import paths_intersect
from pathlang.src.psi_engine import PsiEngine
from src.errors import ResourceLimitError
from src.logging_utils import Logger, quiet_logger
from src.settings import Settings
from twodist.twodist import NO, Certificate, canonical_self_morphism, is_2_distributive, realize_certificate
from twodist.src.simk import rewrites, simk_oracle


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    findings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def find(self, message: str):
        self.findings.append(message)


def psi_properties(rng: random.Random, count: int = 1000, alphabet=("a", "b", "c", "d"),
                   max_height: int = 5, max_nodes: int = 14) -> SuiteResult:
    """Ψ output has no equal-label siblings, keeps paths, and identifies exactly the path-equal forests."""
    result = SuiteResult("psi-properties")
    buckets: dict = {}
    for _ in range(count):
        f = random_forest(rng, alphabet, max_height, max_nodes)
        g = psi(f)
        result.checked += 1
        if has_equal_label_siblings(g):
            result.find(f"psi leaves equal siblings in {f!r}")
        if paths(g) != paths(f):
            result.find(f"psi changes the paths of {f!r}")
        buckets.setdefault(paths(f), []).append(f)
    forests = [f for bucket in buckets.values() for f in bucket[:3]]
    for f, g in list(combinations(forests, 2))[:5000]:
        if (paths(f) == paths(g)) != (psi(f) == psi(g)):
            result.find(f"psi and paths disagree on {f!r} / {g!r}")
    return result


def pi_agreement(A: FiniteForestAlgebra, letters: LetterMap, accept: Iterable[int], name: str = "",
                 oracle_height: int = 4, oracle_nodes: int = 6, word_length: int = 3,
                 cap: int = 200_000) -> SuiteResult:
    """Oracle words are accepted by the DFA; DFA words have a realizing forest."""
    result = SuiteResult(f"pi-automaton {name}".strip())
    accept = frozenset(accept)
    dfa = pi_automaton(A, letters, accept)
    morphism = Morphism(A, letters)
    for word in sorted(bounded_pi_oracle(A, letters, accept, oracle_height, oracle_nodes, cap)):
        result.checked += 1
        if not dfa.accepts(word):
            result.find(f"oracle word {'.'.join(word)} rejected by the DFA")
    for word in dfa.accepted_words(word_length):
        result.checked += 1
        witness = word_witness(A, letters, accept, word)
        if witness is None or word not in paths(witness) or morphism.forest(witness) not in accept:
            result.find(f"DFA word {'.'.join(word) or 'ε'} has no realizing forest")
    return result


def psi_engine_agreement(A: FiniteForestAlgebra, letters: LetterMap, name: str = "", max_height: int = 3,
                         max_nodes: int = 6, preimage_nodes: Optional[int] = None,
                         cap: int = 200_000) -> SuiteResult:
    """Engine acceptance against Ψ-image membership computed by enumeration.

    Every enumerated preimage must be accepted at its value, and every accepted
    pair must come with a witness that plain evaluation confirms.
    """
    result = SuiteResult(f"psi-engine {name}".strip())
    engine = PsiEngine(A, letters)
    morphism = Morphism(A, letters)
    forests = enumerate_forests(letters.letters, max_height, max_nodes, cap)
    preimages = forests if preimage_nodes is None else enumerate_forests(
        letters.letters, max_height, preimage_nodes, cap)
    direct: dict[Forest, set[int]] = {}
    for g in preimages:
        if g:
            direct.setdefault(psi(g), set()).add(morphism.forest(g))
    for f in forests:
        x = engine.evaluate(f)
        for h in range(A.h_size):
            result.checked += 1
            accepted = engine.accepts(x, h)
            if h in direct.get(f, ()) and not accepted:
                result.find(f"engine rejects {f!r} at {h} though a preimage exists")
            if accepted:
                g = engine.witness(f, h)
                if g is None or psi(g) != f or morphism.forest(g) != h:
                    result.find(f"engine accepts {f!r} at {h} without a valid witness")
    return result


def distributive_path_determined(A: FiniteForestAlgebra, letters: LetterMap, name: str = "",
                                 max_height: int = 4, max_nodes: int = 6, cap: int = 200_000) -> SuiteResult:
    """In a distributive algebra path-equal forests evaluate equally."""
    result = SuiteResult(f"path-determined {name}".strip())
    morphism = Morphism(A, letters)
    values: dict[Forest, int] = {}
    for f in enumerate_forests(letters.letters, max_height, max_nodes, cap):
        result.checked += 1
        key, value = psi(f), morphism.forest(f)
        if values.setdefault(key, value) != value:
            result.find(f"{f!r} and its path-class differ in value")
    engine = PsiEngine(A, letters)
    realized = set(values.values())
    for h1 in realized:
        for h2 in realized:
            if h1 != h2 and paths_intersect(engine, h1, h2):
                result.find(f"values {h1} and {h2} share a path set")
    return result


def simk_soundness(A: FiniteForestAlgebra, rng: random.Random, name: str = "", pairs: int = 30,
                   letter_maps: int = 200, budget: int = 10_000, alphabet=("a", "b", "c")) -> SuiteResult:
    """Forests proven ∼₂-equivalent evaluate equally under random letter maps."""
    result = SuiteResult(f"simk-soundness {name}".strip())
    maps = [LetterMap(alphabet, tuple(rng.randrange(A.v_size) for _ in alphabet)) for _ in range(letter_maps)]
    for _ in range(pairs):
        f = random_forest(rng, alphabet, 3, 6)
        for rewritten in _some_rewrites(f, rng):
            outcome = simk_oracle(f, rewritten, 2, budget)
            if not outcome.proven:
                continue
            result.checked += 1
            for letters in maps:
                morphism = Morphism(A, letters)
                if morphism.forest(f) != morphism.forest(rewritten):
                    result.find(f"{f!r} ∼₂ {rewritten!r} but values differ")
                    break
    return result


def _some_rewrites(f: Forest, rng: random.Random, count: int = 3) -> list[Forest]:
    out = []
    for g in rewrites(f):
        out.append(g)
        if len(out) >= 20:
            break
    rng.shuffle(out)
    return out[:count]


def certificate_realization(A: FiniteForestAlgebra, name: str = "", settings: Optional[Settings] = None,
                            search_nodes: int = 8) -> SuiteResult:
    """A "no" certificate is realized by free-algebra forests, first from the
    engine witnesses and otherwise by bounded search."""
    result = SuiteResult(f"certificate {name}".strip())
    verdict = is_2_distributive(A, settings)
    if verdict.verdict != NO or verdict.certificate is None:
        return result
    certificate = verdict.certificate
    result.checked += 1
    if not certificate.replays(A):
        result.find("certificate does not replay against the tables")
    if realize_certificate(A, certificate) is None and not _search_realization(A, certificate, search_nodes):
        result.find(f"no realization of v={certificate.v} h1={certificate.h1} h2={certificate.h2}")
    return result


def _search_realization(A: FiniteForestAlgebra, certificate: Certificate, max_nodes: int) -> bool:
    _, letters = canonical_self_morphism(A)
    morphism = Morphism(A, letters)
    by_paths: dict = {}
    for f in enumerate_forests(letters.letters, A.h_size + 2, max_nodes):
        by_paths.setdefault(psi(f), {}).setdefault(morphism.forest(f), f)
    context = node_context(letters.letters[certificate.v])
    for values in by_paths.values():
        f1, f2 = values.get(certificate.h1), values.get(certificate.h2)
        if f1 is None or f2 is None:
            continue
        merged = morphism.forest(apply_context(context, f1 + f2))
        split = morphism.forest(apply_context(context, f1) + apply_context(context, f2))
        if merged != split:
            return True
    return False


def recognizer_agreement(name: str, rng: random.Random, max_height: int = 4, max_nodes: int = 7,
                         samples: int = 1000) -> SuiteResult:
    result = SuiteResult(f"recognizer {name}")
    recognizer = recognizer_for(name)
    alphabet = recognizer.letters.letters
    forests = list(enumerate_forests(alphabet, max_height, max_nodes))
    forests += [random_forest(rng, alphabet, 5, 12) for _ in range(samples)]
    for f in forests:
        result.checked += 1
        if recognizer.accepts(f) != membership(name, f):
            result.find(f"recognizer and predicate disagree on {f!r}")
    return result


def l1_l2_disjoint(max_height: int = 5, max_nodes: int = 9) -> SuiteResult:
    """No member of L1 shares its path set with a member of L2."""
    result = SuiteResult("l1-l2-disjoint")
    l1, l2 = set(), set()
    for f in enumerate_forests(("a", "b", "c"), max_height, max_nodes):
        result.checked += 1
        if membership("L1", f):
            l1.add(psi(f))
        if membership("L2", f):
            l2.add(psi(f))
    for f in sorted(l1 & l2):
        result.find(f"common path set {f!r}")
    return result


def diagram_invariance(C: DerivedCategory, rng: random.Random, name: str = "", count: int = 500) -> SuiteResult:
    """Merging equal-arrow siblings keeps the value of a diagram."""
    result = SuiteResult(f"diagram-merge {name}".strip())
    for _ in range(count):
        d = random_diagram(C, rng)
        merged = diagram_merge(C, d)
        result.checked += 1
        if diagram_val(C, merged) != diagram_val(C, d):
            result.find(f"merge changes the value of {d!r}")
        if has_equal_label_siblings(merged):
            result.find(f"merge leaves equal siblings in {d!r}")
    return result


def corrupt_assignment(C: DerivedCategory, A: FiniteForestAlgebra, base: Assignment, clause: str,
                       rng: random.Random) -> Optional[Assignment]:
    """A copy of ``base`` with one instance of ``clause`` broken, or None when none can be."""
    instances = [c for c in constraints(C) if c.clause == clause]
    rng.shuffle(instances)
    for constraint in instances:
        broken = base.copy()
        if constraint.result is None:
            shared = next(iter(base[constraint.first]))
            broken.set(constraint.second, base[constraint.second] | {shared})
        else:
            target = base[constraint.result]
            size = A.h_size if clause == "1c" or clause == "1b" else A.v_size
            outside = [x for x in range(size) if x not in target]
            if not outside:
                continue
            broken.set(constraint.result, frozenset({outside[0]}))
        return broken
    return None


def division_sanity(rng: random.Random, settings: Optional[Settings] = None) -> SuiteResult:
    """Identity divisions of one-object categories are accepted; corrupted ones are rejected."""
    result = SuiteResult("division")
    for name, entry in builtin_algebras().items():
        A = entry.algebra
        if A.v_size > 40 or not entry.valid:
            continue
        _, letters = canonical_self_morphism(A)
        T = trivial()
        C = build_derived_category(A, letters, T, LetterMap(letters.letters, (0,) * len(letters.letters)))
        base = identity_assignment(C)
        result.checked += 1
        if not verify_division(C, A, base).ok:
            result.find(f"identity division of {name} rejected")
        for clause in ("1a", "1b", "1c", "1d", "1e", "2a", "2b"):
            broken = corrupt_assignment(C, A, base, clause, rng)
            if broken is None:
                continue
            result.checked += 1
            if verify_division(C, A, broken).ok:
                result.find(f"corrupted clause {clause} of {name} accepted")
    return result


SUITES: dict[str, Callable[[Settings, random.Random], list[SuiteResult]]] = {}


def _suite(name: str):
    def register(fn):
        SUITES[name] = fn
        return fn
    return register


def _small_fixtures() -> list[tuple[str, FiniteForestAlgebra, LetterMap]]:
    out = []
    for name, entry in builtin_algebras().items():
        A = entry.algebra
        if A.h_size <= 3 and A.v_size <= 8 and entry.valid:
            out.append((name, A, entry.letter_map()))
    return out


@_suite("psi")
def _psi(settings: Settings, rng: random.Random) -> list[SuiteResult]:
    return [psi_properties(rng)]


@_suite("pi")
def _pi(settings: Settings, rng: random.Random) -> list[SuiteResult]:
    results = []
    for name, A, letters in _small_fixtures():
        for accept in ({A.zero_h}, set(range(A.h_size)), {A.h_size - 1}):
            results.append(pi_agreement(A, letters, accept, name, settings.max_height + 1, settings.max_nodes,
                                        cap=settings.enum_cap))
    return results


@_suite("engine")
def _engine(settings: Settings, rng: random.Random) -> list[SuiteResult]:
    return [psi_engine_agreement(A, letters, name, settings.max_height, settings.max_nodes, cap=settings.enum_cap)
            for name, A, letters in _small_fixtures() if len(letters.letters) <= 3]


@_suite("twodist")
def _twodist(settings: Settings, rng: random.Random) -> list[SuiteResult]:
    results = []
    for name, entry in builtin_algebras().items():
        A = entry.algebra
        if A.h_size > settings.psi_max_h or not check_horizontal(A).ok:
            continue
        results.append(certificate_realization(A, name, settings))
        if A.v_size <= 8:
            results.append(simk_soundness(A, rng, name, pairs=10, letter_maps=50, budget=settings.simk_budget))
        if is_distributive(A).holds and A.h_size <= 3:
            _, letters = canonical_self_morphism(A)
            results.append(distributive_path_determined(A, letters, name, settings.max_height,
                                                        settings.max_nodes, settings.enum_cap))
    return results


@_suite("fixtures")
def _fixtures(settings: Settings, rng: random.Random) -> list[SuiteResult]:
    results = [recognizer_agreement(name, rng, settings.max_height, settings.max_nodes, samples=200)
               for name in ("L_basic", "L1", "L2")]
    results.append(l1_l2_disjoint(settings.max_height + 1, settings.max_nodes + 1))
    return results


@_suite("derived")
def _derived(settings: Settings, rng: random.Random) -> list[SuiteResult]:
    wreath, l1, right, l2 = canonical_wreath_pair()
    C = build_derived_category(wreath.algebra, l1, right, l2)
    results = []
    if is_locally_distributive(C).holds:
        results.append(diagram_invariance(C, rng, "bool-or-wreath", 100))
    results.append(division_sanity(rng, settings))
    return results


def run_suites(names: Iterable[str], settings: Optional[Settings] = None,
               logger: Optional[Logger] = None) -> list[SuiteResult]:
    settings = settings or Settings()
    logger = logger or quiet_logger()
    rng = random.Random(settings.seed)
    results = []
    for name in names:
        logger(f"[Oracle] running {name}", level="info")
        try:
            results.extend(SUITES[name](settings, rng))
        except ResourceLimitError as e:
            result = SuiteResult(name)
            result.find(f"inconclusive: {e}")
            results.append(result)
    return results


def results_table(results: list[SuiteResult]) -> PrettyTable:
    table = PrettyTable(["suite", "checked", "findings"])
    table.align["suite"] = "l"
    for r in results:
        table.add_row([r.name, r.checked, len(r.findings)])
    return table
