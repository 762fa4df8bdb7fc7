import random

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings

from algebra.algebra import (
    AXIOMS, FiniteForestAlgebra, LetterMap, Morphism, check_horizontal, direct_product, enumerate_rules,
    eval_context, eval_forest, faithful_quotient, find_isomorphism, format_accept, format_algebra,
    format_letter_map, generated_subalgebra, in_rule_language, in_rule_sum, is_distributive, is_trace,
    parse_accept, parse_algebra, parse_letter_map, permute_algebra, realize_values, rule_of_tree,
    trace_of_trail, transformation_algebra, validate_algebra,
)
from fixtures.fixtures import builtin_algebras
from fixtures.src import algebras
from forest.forest import EMPTY, apply_context, compose_contexts, enumerate_forests, parse_context, parse_forest, trails
from src.errors import (
    AlgebraPreconditionError, AlphabetMismatchError, FormatError, MalformedTableError, UnknownLabelError,
)
from tests.conftest import contexts, forests

LAWS = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
AB = LetterMap(("a", "b"), (2, 0))   # bool-or: a -> c1, b -> id


class TestTables:
    def test_bool_or_shape(self, bool_or):
        assert (bool_or.h_size, bool_or.v_size) == (2, 3)
        assert bool_or.v_names == ("id", "c0", "c1")

    def test_tables_are_frozen(self, bool_or):
        with pytest.raises(ValueError):
            bool_or.add[0, 0] = 1

    @pytest.mark.parametrize("kwargs", [
        dict(add=[[0, 2], [1, 1]], mul=[[0]], act=[[0, 1]], ins=[0, 0]),
        dict(add=[[0, 1], [1, 1]], mul=[[0]], act=[[0]], ins=[0, 0]),
        dict(add=[[0, 1], [1, 1]], mul=[[0]], act=[[0, 1]], ins=[0, 0], zero_h=5),
        dict(add=[], mul=[[0]], act=[[]], ins=[]),
    ])
    def test_malformed(self, kwargs):
        with pytest.raises(MalformedTableError):
            FiniteForestAlgebra(**kwargs)

    def test_letter_map(self):
        with pytest.raises(MalformedTableError):
            LetterMap(("a", "a"), (0, 1))
        with pytest.raises(UnknownLabelError):
            AB["z"]
        assert LetterMap.from_dict({"b": 0, "a": 2}) == AB


class TestValidation:
    @pytest.mark.parametrize("name", sorted(builtin_algebras()))
    def test_catalog_is_valid(self, name):
        report = validate_algebra(builtin_algebras()[name].algebra)
        assert report.ok, report.render()
        assert [r.name for r in report.results] == list(AXIOMS)

    def test_action_law_violation(self, bool_or):
        act = bool_or.act.copy()
        act[1] = [0, 1]      # c0 now acts like id but still multiplies like c0
        broken = FiniteForestAlgebra(bool_or.add, bool_or.mul, act, bool_or.ins)
        report = validate_algebra(broken)
        assert not report.ok
        assert "action-law" in report.failed()
        assert report["faithfulness"].counterexample == (0, 1)

    def test_insertion_violation(self, bool_or):
        broken = FiniteForestAlgebra(bool_or.add, bool_or.mul, bool_or.act, [0, 0])
        assert validate_algebra(broken).failed() == ["insertion"]

    def test_monoid_identity(self):
        broken = FiniteForestAlgebra([[1, 1], [1, 1]], [[0]], [[0, 1]], [0, 0])
        assert validate_algebra(broken)["h-monoid"].detail == "identity (x)"

    def test_render(self, bool_or):
        text = validate_algebra(bool_or).render()
        assert text.splitlines()[0] == "h-monoid: pass"
        assert text.splitlines()[-1] == "valid"


class TestHorizontalAndDistributive:
    def test_bool_or(self, bool_or):
        assert check_horizontal(bool_or).ok
        assert is_distributive(bool_or).holds

    def test_sibling_pair_detector(self, sibling_pair_detector):
        A = sibling_pair_detector
        verdict = is_distributive(A)
        assert not verdict.holds
        v, h1, h2 = verdict.witness
        assert A.act[v, A.add[h1, h2]] != A.add[A.act[v, h1], A.act[v, h2]]
        assert verdict.render(A).startswith("distributive: no v=vstar")

    def test_z2_is_not_horizontal(self):
        A = algebras.z2()
        verdict = check_horizontal(A)
        assert not verdict.idempotent and verdict.commutative
        assert verdict.idempotent_witness == 1
        with pytest.raises(AlgebraPreconditionError):
            is_distributive(A)

    def test_bool_or_neg(self, bool_or_neg):
        assert check_horizontal(bool_or_neg).ok
        assert not is_distributive(bool_or_neg).holds


class TestMorphism:
    @LAWS
    @given(forests(("a", "b")), forests(("a", "b")))
    def test_sum(self, f, g):
        A = algebras.sibling_pair_detector()
        letters = LetterMap(("a", "b"), (A.v_index("Ia"), A.v_index("vstar")))
        assert eval_forest(A, letters, f + g) == A.add[eval_forest(A, letters, f), eval_forest(A, letters, g)]

    @LAWS
    @given(contexts(("a", "b")), contexts(("a", "b")), forests(("a", "b")))
    def test_action_and_product(self, c, d, f):
        A = algebras.bool_or_neg()
        letters = LetterMap(("a", "b"), (A.v_index("neg"), A.v_index("c1")))
        m = Morphism(A, letters)
        assert m.forest(apply_context(c, f)) == A.act[m.context(c), m.forest(f)]
        assert m.context(compose_contexts(c, d)) == A.mul[m.context(c), m.context(d)]

    def test_alphabet_is_checked(self, bool_or):
        with pytest.raises(AlphabetMismatchError):
            eval_forest(bool_or, AB, parse_forest("a[c]"))
        with pytest.raises(AlphabetMismatchError):
            eval_context(bool_or, AB, parse_context("d[_]"))

    def test_values(self, bool_or):
        assert eval_forest(bool_or, AB, EMPTY) == 0
        assert eval_forest(bool_or, AB, parse_forest("b[b]")) == 0
        assert eval_forest(bool_or, AB, parse_forest("b[a]")) == 1

    def test_realize_values(self, bool_or):
        witnesses = realize_values(bool_or, AB)
        assert set(witnesses) == {0, 1}
        for h, f in witnesses.items():
            assert eval_forest(bool_or, AB, f) == h


class TestFileFormats:
    @pytest.mark.parametrize("name", sorted(builtin_algebras()))
    def test_roundtrip(self, name):
        A = builtin_algebras()[name].algebra
        B = parse_algebra(format_algebra(A))
        assert B.same_tables(A)

    def test_names_survive(self, bool_or):
        assert parse_algebra(format_algebra(bool_or)).v_names == ("id", "c0", "c1")

    def test_missing_header(self):
        with pytest.raises(FormatError) as info:
            parse_algebra("H 1\nV 1\n", "x.fa")
        assert info.value.path == "x.fa" and info.value.line == 1

    def test_bad_integer_reports_line(self, bool_or):
        lines = format_algebra(bool_or).splitlines()
        lines[5] = "ADDROW 0: 0 x"
        with pytest.raises(FormatError) as info:
            parse_algebra("\n".join(lines), "y.fa")
        assert info.value.line == 6

    def test_comments_are_ignored(self, bool_or):
        text = "# bool-or\n" + format_algebra(bool_or).replace("V 3", "V 3  # three maps")
        assert parse_algebra(text).same_tables(bool_or)

    def test_letter_map_and_accept(self):
        assert parse_letter_map(format_letter_map(AB)) == AB
        assert parse_accept(format_accept({3, 1})) == frozenset({1, 3})
        with pytest.raises(FormatError):
            parse_letter_map("LETTER a 0\nLETTER a 1\n")
        with pytest.raises(FormatError):
            parse_letter_map("LETTER _ 0\n")
        with pytest.raises(FormatError):
            parse_accept("ACCEPTS 1\n")


class TestConstructions:
    def test_transformation_algebra(self):
        A = transformation_algebra([[0, 1], [1, 1]], {"c0": [0, 0], "c1": [1, 1], "neg": [1, 0]})
        assert A.v_size == 4
        assert validate_algebra(A).ok

    def test_direct_product(self, bool_or, bool_or_neg):
        P = direct_product(bool_or_neg, bool_or)
        assert P.h_size == 4
        assert validate_algebra(P).ok
        assert P.v_size <= bool_or.v_size * bool_or_neg.v_size

    def test_faithful_quotient_is_identity_on_faithful(self, bool_or):
        assert faithful_quotient(bool_or).same_tables(bool_or)

    def test_generated_subalgebra(self, bool_or):
        sub = generated_subalgebra(bool_or, LetterMap(("b",), (0,)))
        # only the empty forest value is reachable from the identity letter
        assert sub.algebra.h_size == 1
        full = generated_subalgebra(bool_or, AB)
        assert full.algebra.h_size == 2
        assert validate_algebra(full.algebra).ok

    @pytest.mark.parametrize("case", ["bool-or-neg", "bool-or-neg-one-letter", "sibling-pair-detector",
                                      "sibling-pair-detector-one-side", "generated-wreath"])
    def test_generated_h_is_the_set_of_forest_values(self, case):
        if case.startswith("bool-or-neg"):
            A = algebras.bool_or_neg()
            letters = (LetterMap(("a", "b"), (A.v_index("neg"), A.v_index("c1"))) if case == "bool-or-neg"
                       else LetterMap(("a",), (A.v_index("c0"),)))
        elif case.startswith("sibling-pair-detector"):
            A = algebras.sibling_pair_detector()
            names = ("Ia", "Ib", "vstar") if case == "sibling-pair-detector" else ("Ia", "vstar")
            letters = LetterMap(tuple("pqs"[:len(names)]), tuple(A.v_index(n) for n in names))
        else:
            wreath, letters = algebras.random_generated_wreath(random.Random(5), algebras.bool_or(), algebras.bool_or())
            A = wreath.algebra
        # |H| <= 4, so every value has a witness of at most 4 nodes
        values = {Morphism(A, letters).forest(f) for f in enumerate_forests(letters.letters, 3, 4)}
        sub = generated_subalgebra(A, letters)
        assert set(sub.h_embed) == values
        assert sub.algebra.h_size == len(values)
        assert validate_algebra(sub.algebra).ok

    def test_generated_subalgebra_rejects_unreachable_h(self):
        # s sends 1 to 2, but no context sends 0 to 2
        A = FiniteForestAlgebra([[0, 1, 2], [1, 1, 2], [2, 2, 2]], [[0, 1], [1, 1]],
                                [[0, 1, 2], [1, 2, 2]], [0, 0, 0], v_names=["id", "s"])
        with pytest.raises(AlgebraPreconditionError):
            generated_subalgebra(A, LetterMap(("a",), (1,)))

    def test_isomorphism(self, sibling_pair_detector):
        A = sibling_pair_detector
        h_perm = [0, 2, 1, 3]
        v_perm = list(reversed(range(A.v_size)))
        B = permute_algebra(A, h_perm, v_perm)
        iso = find_isomorphism(A, B)
        assert iso is not None
        assert all(B.add[iso.h_map[x], iso.h_map[y]] == iso.h_map[A.add[x, y]]
                   for x in range(A.h_size) for y in range(A.h_size))

    def test_no_isomorphism(self, bool_or, bool_or_neg):
        assert find_isomorphism(bool_or, bool_or_neg) is None


class TestRules:
    def test_enumerate_rules(self, bool_or):
        rules = enumerate_rules(bool_or, AB)
        assert {r.label for r in rules} == {"a", "b"}
        assert all(r.result == 1 for r in rules if r.label == "a")

    def test_traces(self, bool_or):
        m = Morphism(bool_or, AB)
        f = parse_forest("b[a[b],b]")
        for trail in trails(f):
            assert is_trace(bool_or, AB, trace_of_trail(m, trail))

    def test_rule_languages(self, bool_or):
        m = Morphism(bool_or, AB)
        tree = next(iter(parse_forest("b[a,b]")))
        rule = rule_of_tree(m, tree)
        assert rule.children == frozenset({0, 1}) and rule.result == 1
        assert in_rule_language(m, rule, parse_forest("b[a,b],b[a[a],b[b]]"))
        assert not in_rule_language(m, rule, EMPTY)
        assert not in_rule_language(m, rule, parse_forest("b[a]"))
        assert in_rule_sum(m, {rule, rule_of_tree(m, next(iter(parse_forest("b[a]"))))},
                           parse_forest("b[a,b],b[a]"))
        assert rule.render() == "(1,b,{0,1})"


def test_numpy_tables_use_integers(bool_or):
    assert np.issubdtype(bool_or.act.dtype, np.integer)
