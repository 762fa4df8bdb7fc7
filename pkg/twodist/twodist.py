"""Deciding 2-distributivity of a finite forest algebra.

An algebra is 2-distributive when v(h₁+h₂) = vh₁ + vh₂ holds for every pair
of values whose forest classes share a path set. Under the canonical
morphism (one letter per V element) this is checked pair by pair through
the Ψ-image engine.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from algebra.src.morphism import Morphism
from algebra.src.tables import FiniteForestAlgebra, LetterMap
from algebra.src.validation import HorizontalVerdict, check_horizontal, distributivity_violations
from forest.src.grammar import is_label, render
from forest.src.paths import paths
from forest.src.trees import Context, Forest, apply_context, node_context
from pathlang.src.intersect import intersection_evidence, paths_intersect, reachability
from pathlang.src.psi_engine import PsiEngine
from src.errors import ResourceLimitError
from src.logging_utils import Logger, quiet_logger
from src.settings import Settings
from twodist.src.simk import NOT_PROVEN, PROVEN, SimkOutcome, simk_oracle  # noqa: F401

YES, NO, INCONCLUSIVE = "yes", "no", "inconclusive"
EXIT_CODES = {YES: 0, NO: 1, INCONCLUSIVE: 2}


def canonical_self_morphism(A: FiniteForestAlgebra) -> tuple[tuple[str, ...], LetterMap]:
    """One letter per V element, each mapped to itself."""
    names = list(A.v_names)
    if len(set(names)) != len(names) or not all(is_label(n) for n in names):
        names = [f"v{j}" for j in range(A.v_size)]
    letters = LetterMap(tuple(names), tuple(range(A.v_size)))
    return letters.letters, letters


@dataclass
class Certificate:
    """v(h1+h2) ≠ vh1 + vh2 for a pair whose path images intersect."""
    v: int
    h1: int
    h2: int
    common: Optional[Forest] = None
    left_forest: Optional[Forest] = None
    right_forest: Optional[Forest] = None

    def replays(self, A: FiniteForestAlgebra) -> bool:
        return int(A.act[self.v, A.add[self.h1, self.h2]]) != int(A.add[A.act[self.v, self.h1], A.act[self.v, self.h2]])


@dataclass
class TwoDistVerdict:
    verdict: str
    certificate: Optional[Certificate] = None
    checked_pairs: list[tuple[int, int]] = field(default_factory=list)
    horizontal: Optional[HorizontalVerdict] = None
    reason: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def render(self, A: FiniteForestAlgebra) -> str:
        h, v = A.h_names, A.v_names
        lines = [f"2-distributive: {self.verdict}"]
        if self.verdict == INCONCLUSIVE:
            lines.append(f"reason: {self.reason}")
        elif self.horizontal is not None and not self.horizontal.ok:
            lines.append("not horizontally idempotent and commutative")
            lines.append(self.horizontal.render())
        elif self.certificate is not None:
            c = self.certificate
            lines.append(f"certificate: v={v[c.v]} h1={h[c.h1]} h2={h[c.h2]}")
            lines.append(f"v(h1+h2)={h[A.act[c.v, A.add[c.h1, c.h2]]]} "
                         f"vh1+vh2={h[A.add[A.act[c.v, c.h1], A.act[c.v, c.h2]]]}")
            if c.common is not None:
                lines.append(f"common path forest: {render(c.common)}")
                lines.append(f"forest for h1: {render(c.left_forest)}")
                lines.append(f"forest for h2: {render(c.right_forest)}")
        else:
            pairs = " ".join(f"({h[a]},{h[b]})" for a, b in self.checked_pairs)
            lines.append(f"checked pairs: {pairs}")
        return "\n".join(lines)


class TwoDistChecker:
    """Runs the pair loop for one algebra.

    :param settings: caps for the Ψ-image engine and the number of worker threads.
    """

    def __init__(self, algebra: FiniteForestAlgebra, settings: Optional[Settings] = None,
                 logger: Optional[Logger] = None):
        self.algebra = algebra
        self.settings = settings or Settings()
        self.logger = logger or quiet_logger()
        self.alphabet, self.letters = canonical_self_morphism(algebra)

    def check(self) -> TwoDistVerdict:
        A = self.algebra
        horizontal = check_horizontal(A)
        if not horizontal.ok:
            self.logger("[TwoDistChecker] algebra is not horizontal", level="info")
            return TwoDistVerdict(NO, horizontal=horizontal)
        try:
            engine = PsiEngine(A, self.letters, self.settings.psi_max_h, self.settings.psi_family_cap, self.logger)
            reachability(engine)
        except ResourceLimitError as e:
            self.logger(f"[TwoDistChecker] {e}", level="warning")
            return TwoDistVerdict(INCONCLUSIVE, horizontal=horizontal, reason=str(e))

        pairs = [(h1, h2) for h1 in range(A.h_size) for h2 in range(A.h_size)]
        jobs = max(1, self.settings.jobs)
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                hits = list(pool.map(lambda p: paths_intersect(engine, *p), pairs))
        else:
            hits = [paths_intersect(engine, *p) for p in pairs]
        checked = [p for p, hit in zip(pairs, hits) if hit]
        self.logger(f"[TwoDistChecker] {len(checked)} of {len(pairs)} pairs share a path set", level="info")

        violations = distributivity_violations(A)
        for h1, h2 in checked:
            bad = violations[:, h1, h2].nonzero()[0]
            if len(bad):
                certificate = Certificate(int(bad[0]), h1, h2)
                evidence = intersection_evidence(engine, h1, h2)
                if evidence is not None:
                    certificate.common, certificate.left_forest, certificate.right_forest = evidence
                return TwoDistVerdict(NO, certificate, checked, horizontal)
        return TwoDistVerdict(YES, None, checked, horizontal)


def is_2_distributive(A: FiniteForestAlgebra, settings: Optional[Settings] = None,
                      logger: Optional[Logger] = None) -> TwoDistVerdict:
    return TwoDistChecker(A, settings, logger).check()


@dataclass
class CertificateRealization:
    left: Forest
    right: Forest
    context: Context
    merged_value: int
    split_value: int


def realize_certificate(A: FiniteForestAlgebra, certificate: Certificate) -> Optional[CertificateRealization]:
    """Free-algebra forests f₁, f₂ with equal paths and a one-letter context c
    such that c[f₁+f₂] and cf₁+cf₂ evaluate differently, checked by plain evaluation."""
    if certificate.left_forest is None:
        return None
    _, letters = canonical_self_morphism(A)
    morphism = Morphism(A, letters)
    f1, f2 = certificate.left_forest, certificate.right_forest
    if paths(f1) != paths(f2):
        return None
    if morphism.forest(f1) != certificate.h1 or morphism.forest(f2) != certificate.h2:
        return None
    context = node_context(letters.letters[certificate.v])
    merged = morphism.forest(apply_context(context, f1 + f2))
    split = morphism.forest(apply_context(context, f1) + apply_context(context, f2))
    if merged == split:
        return None
    return CertificateRealization(f1, f2, context, merged, split)
