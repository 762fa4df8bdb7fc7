import random

import pytest

from algebra.algebra import LetterMap, Morphism, find_isomorphism, transformation_algebra, validate_algebra
from fixtures.src import algebras
from forest.forest import parse_forest
from src.errors import FormatError, MalformedTableError, ResourceLimitError
from wreath.wreath import (
    format_gtable, iterated_wreath, parse_gtable, project_right, wreath_generated, wreath_product,
)

OR = [[0, 1], [1, 1]]


@pytest.fixture(scope="module")
def flag():
    """H = {0, 1}, V = {id, c1}."""
    return transformation_algebra(OR, {})


class TestFullProduct:
    def test_sizes_and_validity(self, bool_or):
        wreath = wreath_product(bool_or, bool_or)
        W = wreath.algebra
        assert (W.h_size, W.v_size) == (4, 27)
        assert validate_algebra(W).ok

    def test_projection_is_a_homomorphism(self, bool_or, bool_or_neg):
        for left, right in ((bool_or, bool_or_neg), (bool_or_neg, bool_or), (algebras.trivial(), bool_or)):
            check = project_right(wreath_product(left, right)).verify()
            assert check.ok, check.failure

    def test_cap(self, bool_or_neg):
        with pytest.raises(ResourceLimitError) as info:
            wreath_product(bool_or_neg, bool_or_neg, cap=10)
        assert info.value.partial == 64

    def test_names(self, bool_or):
        W = wreath_product(bool_or, bool_or).algebra
        assert W.h_names[0] == "(0,0)"
        assert W.v_names[W.one_v] == "([id,id],id)"

    def test_associative_up_to_isomorphism(self, flag):
        left = iterated_wreath([flag, flag, flag])
        right = wreath_product(flag, wreath_product(flag, flag).algebra).algebra
        assert (left.h_size, left.v_size) == (right.h_size, right.v_size) == (8, 128)
        assert find_isomorphism(left, right) is not None


class TestGeneratedProduct:
    def test_bool_or_wreath(self):
        wreath, letters = algebras.bool_or_wreath()
        W = wreath.algebra
        assert validate_algebra(W).ok
        assert project_right(wreath).verify().ok
        assert letters.letters == ("a", "b", "c")

    def test_generated_values(self):
        wreath, letters = algebras.bool_or_wreath()
        m = Morphism(wreath.algebra, letters)

        def pair(text):
            return wreath.h_pairs[m.forest(parse_forest(text))]

        assert pair("a[c]") == (1, 1)
        assert pair("c") == (0, 1)
        assert pair("a[b]") == pair("b") == (0, 0)
        # c resets the left flag of everything below it
        assert pair("c[a[c]]") == (0, 1)

    def test_random_generated_wreaths_are_valid(self):
        rng = random.Random(5)
        A = algebras.bool_or()
        for _ in range(5):
            built = algebras.random_generated_wreath(rng, A, A)
            assert built is not None
            wreath, letters = built
            assert validate_algebra(wreath.algebra).ok
            assert project_right(wreath).verify().ok
            assert set(letters.letters) == {"a", "b"}

    def test_missing_function_table(self, bool_or):
        letters = LetterMap(("a",), (0,))
        with pytest.raises(MalformedTableError):
            wreath_generated(bool_or, bool_or, letters, {})
        with pytest.raises(MalformedTableError):
            wreath_generated(bool_or, bool_or, letters, {"a": {0: 0}})
        with pytest.raises(MalformedTableError):
            wreath_generated(bool_or, bool_or, letters, {"a": {0: 0, 1: 9}})

    def test_closure_cap(self, bool_or_neg):
        letters = LetterMap(("a",), (bool_or_neg.v_index("neg"),))
        with pytest.raises(ResourceLimitError):
            wreath_generated(bool_or_neg, bool_or_neg, letters, {"a": {0: 3, 1: 1}}, cap=3)


class TestFunctionTables:
    def test_roundtrip(self):
        table = {"a": {0: 0, 1: 2}, "c": {0: 1, 1: 1}}
        assert parse_gtable(format_gtable(table)) == table

    def test_bad_line(self):
        with pytest.raises(FormatError) as info:
            parse_gtable("G a 0 1\nG a 1\n", "g.txt")
        assert info.value.line == 2
