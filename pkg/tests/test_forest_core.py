import random

import pytest
from hypothesis import HealthCheck, given, settings

from forest.forest import (
    EMPTY, HOLE, Context, Forest, Tree, add_forest_to_context, apply_context, compose_contexts,
    enumerate_forests, has_equal_label_siblings, is_label, is_psi_normal, label_quotient, leaf, node_context,
    parse_context, parse_forest, paths, psi, random_context, random_forest, render, render_context, trail_word,
    trails,
)
from src.errors import ForestSyntaxError, ResourceLimitError, UnknownLabelError
from tests.conftest import contexts, forests

LAWS = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])


class TestCanonicalForms:
    def test_parse_and_render(self):
        f = parse_forest("b, a[c, b[]], a[b,c]")
        assert render(f) == "a[b,c],b"
        assert len(f) == 2

    def test_empty_forest(self):
        assert parse_forest("{}") == EMPTY
        assert render(EMPTY) == "{}"
        with pytest.raises(ForestSyntaxError):
            parse_forest("")

    def test_braces_are_optional(self):
        assert parse_forest("{a[b], c}") == parse_forest("a[b],c")

    def test_duplicates_collapse(self):
        assert parse_forest("a[b],a[b]") == parse_forest("a[b]")

    @pytest.mark.parametrize("text", ["a[", "a]", "a[b,,c]", "[a]", "a b"])
    def test_syntax_errors(self, text):
        with pytest.raises(ForestSyntaxError):
            parse_forest(text)

    def test_declared_alphabet(self):
        with pytest.raises(UnknownLabelError):
            parse_forest("a[d]", alphabet=("a", "b"))

    def test_context_roundtrip(self):
        c = parse_context("b, a[c, _]")
        assert render_context(c) == "a[_,c],b"
        assert apply_context(c, parse_forest("d")) == parse_forest("a[c,d],b")

    def test_context_needs_one_hole(self):
        with pytest.raises(ForestSyntaxError):
            parse_context("a[b]")
        with pytest.raises(ForestSyntaxError):
            parse_context("a[_], _")

    def test_hole_token_is_not_a_label(self):
        assert is_label("a_1") and is_label("_b")
        assert not is_label("_")
        with pytest.raises(ForestSyntaxError):
            parse_forest("a[_]")
        assert render_context(parse_context("a[_]")) == "a[_]"

    @LAWS
    @given(forests())
    def test_render_parse_identity(self, f):
        assert parse_forest(render(f)) == f


class TestFreeAlgebra:
    @LAWS
    @given(forests(), forests(), forests())
    def test_sum_is_a_commutative_idempotent_monoid(self, f, g, h):
        assert (f + g) + h == f + (g + h)
        assert f + g == g + f
        assert f + f == f
        assert f + EMPTY == f

    @LAWS
    @given(contexts(), contexts(), forests())
    def test_action_law(self, c, d, f):
        assert apply_context(compose_contexts(c, d), f) == apply_context(c, apply_context(d, f))

    @LAWS
    @given(contexts(), forests())
    def test_hole_is_the_unit(self, c, f):
        assert compose_contexts(HOLE, c) == c
        assert compose_contexts(c, HOLE) == c
        assert apply_context(HOLE, f) == f

    @LAWS
    @given(forests(), forests())
    def test_insertion(self, s, f):
        assert apply_context(add_forest_to_context(s, HOLE), f) == s + f

    def test_node_context(self):
        assert apply_context(node_context("a"), EMPTY) == Forest.of(leaf("a"))
        assert apply_context(node_context("a"), parse_forest("b,c")) == parse_forest("a[b,c]")

    def test_context_without_inner_is_rejected(self):
        with pytest.raises(ValueError):
            Context(EMPTY, None, HOLE)


class TestPaths:
    def test_paths_of_a_forest(self):
        words = paths(parse_forest("a[b,c[d]],b"))
        assert words.sorted() == [(), ("a",), ("b",), ("a", "b"), ("a", "c"), ("a", "c", "d")]
        assert words.is_prefix_closed()

    def test_empty_forest_has_only_the_empty_word(self):
        assert paths(EMPTY).render() == "ε"

    def test_psi_merges_equal_siblings(self):
        f = parse_forest("a[b[b,c], c[a[b,c], a[a]], b[c[d]]]")
        assert render(psi(f)) == "a[b[b,c[d]],c[a[a,b,c]]]"

    def test_label_quotient(self):
        f = parse_forest("a[b],a[c[d]],b[a]")
        assert label_quotient("a", f) == parse_forest("b,c[d]")
        assert label_quotient("d", f) == EMPTY

    def test_trails(self):
        f = parse_forest("a[b,c]")
        words = sorted(trail_word(t) for t in trails(f))
        assert words == [("a",), ("a", "b"), ("a", "c")]

    @LAWS
    @given(forests(max_width=4))
    def test_psi_properties(self, f):
        g = psi(f)
        assert not has_equal_label_siblings(g)
        assert is_psi_normal(g)
        assert paths(g) == paths(f)
        assert psi(g) == g

    @LAWS
    @given(forests(), forests())
    def test_psi_decides_path_equality(self, f, g):
        assert (paths(f) == paths(g)) == (psi(f) == psi(g))


class TestEnumeration:
    def test_counts(self):
        # height 1: subsets of {a, b} -> 4 forests
        assert len(enumerate_forests(("a", "b"), 1, 5)) == 4
        # a, a[a] as trees; forests within 2 nodes: {}, a, a[a]
        assert [render(f) for f in enumerate_forests(("a",), 2, 2)] == ["{}", "a", "a[a]"]

    def test_forests_are_distinct(self):
        out = enumerate_forests(("a", "b"), 3, 5)
        assert len(out) == len(set(out))
        assert all(f.height <= 3 and f.size <= 5 for f in out)

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            enumerate_forests(("a", "b", "c"), 4, 10, cap=100)

    def test_random_generation_is_seeded(self):
        first = [random_forest(random.Random(7), "abc", 3, 8) for _ in range(3)]
        second = [random_forest(random.Random(7), "abc", 3, 8) for _ in range(3)]
        assert first == second
        c = random_context(random.Random(3), "ab", 2, 6)
        assert isinstance(apply_context(c, EMPTY), Forest)

    def test_tree_order_is_structural(self):
        assert Tree("a") < Tree("b")
        assert Tree("a") < Tree("a", Forest.of(leaf("a")))
