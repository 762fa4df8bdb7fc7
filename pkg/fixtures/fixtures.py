"""Catalog of example algebras and languages."""
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Optional

from prettytable import PrettyTable

from algebra.src.fileio import format_accept, format_algebra, format_letter_map, write_text
from algebra.src.tables import FiniteForestAlgebra, LetterMap
from algebra.src.validation import check_horizontal, is_distributive, validate_algebra
from fixtures.src import algebras
from fixtures.src.languages import (
    compatible_l1, compatible_l2, in_l, in_l1, in_l2, in_l3a, in_l3b, in_l_basic,
)
from fixtures.src.recognizers import Recognizer, l1_recognizer, l2_recognizer, l_basic_recognizer
from forest.src.trees import Forest, check_alphabet
from src.errors import UnknownLanguageError
from src.settings import Settings
from twodist.twodist import canonical_self_morphism, is_2_distributive


@dataclass
class CatalogEntry:
    name: str
    description: str
    build: Callable[[], FiniteForestAlgebra]
    letters: Optional[Callable[[FiniteForestAlgebra], LetterMap]] = None
    accept: Optional[frozenset[int]] = None
    _flags: dict = field(default_factory=dict, repr=False)

    @property
    def algebra(self) -> FiniteForestAlgebra:
        if "algebra" not in self._flags:
            self._flags["algebra"] = self.build()
        return self._flags["algebra"]

    def letter_map(self) -> LetterMap:
        if self.letters is not None:
            return self.letters(self.algebra)
        return canonical_self_morphism(self.algebra)[1]

    @property
    def valid(self) -> bool:
        if "valid" not in self._flags:
            self._flags["valid"] = validate_algebra(self.algebra).ok
        return self._flags["valid"]

    @property
    def distributive(self) -> bool:
        if "distributive" not in self._flags:
            A = self.algebra
            self._flags["distributive"] = check_horizontal(A).ok and is_distributive(A).holds
        return self._flags["distributive"]

    def two_distributive(self, settings: Optional[Settings] = None) -> str:
        if "two_distributive" not in self._flags:
            self._flags["two_distributive"] = is_2_distributive(self.algebra, settings).verdict
        return self._flags["two_distributive"]


def _recognizer_entry(name: str, description: str, factory: Callable[[], Recognizer]) -> CatalogEntry:
    return CatalogEntry(name, description, lambda: factory().algebra,
                        lambda A: factory().letters, factory().accept)


@lru_cache(maxsize=1)
def builtin_algebras() -> dict[str, CatalogEntry]:
    entries = [
        CatalogEntry("bool-or", "H={0,1} under max, V={id,c0,c1}", algebras.bool_or),
        CatalogEntry("trivial", "one-element algebra", algebras.trivial),
        CatalogEntry("sibling-pair-detector", "vstar(a+b)=t but vstar a + vstar b = 0",
                     algebras.sibling_pair_detector),
        CatalogEntry("bool-or-neg", "H={0,1} under max with all four maps", algebras.bool_or_neg),
        CatalogEntry("bool-or-neg-x-bool-or", "direct product of bool-or-neg and bool-or",
                     algebras.bool_or_neg_x_bool_or),
        CatalogEntry("z2", "H=Z/2, not horizontally idempotent", algebras.z2),
        CatalogEntry("bool-or-wreath", "bool-or wreath bool-or generated by a, b, c",
                     lambda: algebras.bool_or_wreath()[0].algebra,
                     lambda A: algebras.bool_or_wreath()[1]),
        _recognizer_entry("l-basic", "recognizer of L_basic", l_basic_recognizer),
        _recognizer_entry("l1", "recognizer of L1", l1_recognizer),
        _recognizer_entry("l2", "recognizer of L2", l2_recognizer),
    ]
    return {e.name: e for e in entries}


def catalog_entry(name: str) -> CatalogEntry:
    catalog = builtin_algebras()
    if name not in catalog:
        raise UnknownLanguageError(f"unknown fixture '{name}'; known: {', '.join(catalog)}")
    return catalog[name]


def catalog_table(settings: Optional[Settings] = None, with_flags: bool = True) -> PrettyTable:
    columns = ["name", "|H|", "|V|", "valid", "distributive", "2-distributive"] if with_flags else ["name", "|H|", "|V|", "description"]
    table = PrettyTable(columns)
    table.align["name"] = "l"
    for entry in builtin_algebras().values():
        A = entry.algebra
        if with_flags:
            table.add_row([entry.name, A.h_size, A.v_size, entry.valid, entry.distributive,
                           entry.two_distributive(settings)])
        else:
            table.add_row([entry.name, A.h_size, A.v_size, entry.description])
    return table


def emit(name: str, directory: str) -> list[str]:
    """Write ``name.fa``, ``name.lm`` and, for recognizers, ``name.accept``."""
    entry = catalog_entry(name)
    out = Path(directory)
    written = [str(out / f"{name}.fa"), str(out / f"{name}.lm")]
    write_text(written[0], format_algebra(entry.algebra))
    write_text(written[1], format_letter_map(entry.letter_map()))
    if entry.accept is not None:
        written.append(str(out / f"{name}.accept"))
        write_text(written[2], format_accept(entry.accept))
    return written


@dataclass
class NamedLanguage:
    name: str
    alphabet: tuple[str, ...]
    predicate: Callable[[Forest], bool]
    recognizer: Optional[Callable[[], Recognizer]] = None


LANGUAGES = {
    lang.name: lang for lang in (
        NamedLanguage("L_basic", ("a", "b", "c"), in_l_basic, l_basic_recognizer),
        NamedLanguage("L1", ("a", "b", "c"), in_l1, l1_recognizer),
        NamedLanguage("L2", ("a", "b", "c"), in_l2, l2_recognizer),
        NamedLanguage("L3a", ("a", "b", "c", "d"), in_l3a),
        NamedLanguage("L3b", ("a", "b", "c", "d"), in_l3b),
        NamedLanguage("L", ("a", "b", "c", "d"), in_l),
        NamedLanguage("compatible-L1", ("a", "b", "c"), compatible_l1),
        NamedLanguage("compatible-L2", ("a", "b", "c"), compatible_l2),
    )
}


def language(name: str) -> NamedLanguage:
    if name not in LANGUAGES:
        raise UnknownLanguageError(f"unknown language '{name}'; known: {', '.join(LANGUAGES)}")
    return LANGUAGES[name]


def membership(name: str, f: Forest) -> bool:
    lang = language(name)
    check_alphabet(f.labels(), lang.alphabet)
    return lang.predicate(f)


@lru_cache(maxsize=None)
def recognizer_for(name: str) -> Recognizer:
    lang = language(name)
    if lang.recognizer is None:
        raise UnknownLanguageError(f"language '{name}' ships without a recognizer")
    return lang.recognizer()
