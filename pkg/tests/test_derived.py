import random

import pytest

from algebra.algebra import LetterMap
from derived.derived import (
    Assignment, HalfArrow, act_arrow_on_half, add_arrow_half, add_half_arrows, build_derived_category,
    build_pair_image, compose_arrows, diagram_merge, diagram_val,
    identity_assignment, is_locally_distributive, parse_diagram, random_diagram, search_division,
    verify_division,
)
from derived.src.division import FOUND, NOT_FOUND
from fixtures.src import algebras
from forest.forest import has_equal_label_siblings
from oracle.oracle import corrupt_assignment, diagram_invariance, division_sanity
from src.errors import (
    AlphabetMismatchError, EndpointMismatchError, InconsistentDiagramError, PartialAssignmentError,
)
from twodist.twodist import canonical_self_morphism


def one_object(A):
    """The derived category of A's canonical morphism against the trivial algebra."""
    _, letters = canonical_self_morphism(A)
    flat = LetterMap(letters.letters, (0,) * len(letters.letters))
    return build_derived_category(A, letters, algebras.trivial(), flat)


@pytest.fixture(scope="module")
def diagonal():
    return one_object(algebras.bool_or())


@pytest.fixture(scope="module")
def wreath_category():
    wreath, l1, right, l2 = algebras.canonical_wreath_pair()
    return build_derived_category(wreath.algebra, l1, right, l2)


class TestCategory:
    def test_one_object(self, diagonal):
        assert diagonal.objects == (0,)
        assert diagonal.halves == (HalfArrow(0, 0), HalfArrow(1, 0))
        assert [a.row for a in diagonal.arrows] == [(0, 0), (0, 1), (1, 1)]
        assert diagonal.identity(0).row == (0, 1)
        assert diagonal.render().splitlines()[:3] == ["objects: 0", "half-arrows: 2", "arrows: 3"]

    def test_pair_image_is_closed(self, wreath_category):
        C = wreath_category
        assert C.image.verify(C.left, C.right)

    def test_objects_are_right_values(self, wreath_category):
        C = wreath_category
        assert set(C.objects) <= set(range(C.right.h_size))
        for x in C.halves:
            assert x.endpoint in C.objects

    def test_composition(self, wreath_category):
        C = wreath_category
        for first in C.arrows[:10]:
            for second in C.arrows_from(first.target)[:10]:
                composed = compose_arrows(C, second, first)
                assert (composed.source, composed.target) == (first.source, second.target)
                for x in C.halves_at(first.source):
                    assert C.act(composed, x) == C.act(second, C.act(first, x))
            assert compose_arrows(C, C.identity(first.target), first) == first

    def test_endpoint_mismatch(self, wreath_category):
        C = wreath_category
        pairs = [(a, b) for a in C.arrows for b in C.arrows if a.target != b.source]
        if not pairs:
            pytest.skip("every arrow composes")
        first, second = pairs[0]
        with pytest.raises(EndpointMismatchError):
            C.compose(second, first)

    def test_alphabet_mismatch(self):
        A = algebras.bool_or()
        with pytest.raises(AlphabetMismatchError):
            build_derived_category(A, LetterMap(("a",), (0,)), A, LetterMap(("b",), (0,)))

    def test_dot(self, diagonal):
        assert diagonal.to_dot().startswith("digraph derived_category")


class TestLocalDistributivity:
    def test_distributive_left(self, diagonal):
        assert is_locally_distributive(diagonal).holds
        assert is_locally_distributive(diagonal).render(diagonal) == "locally distributive: yes"

    def test_wreath_of_distributive_algebras(self, wreath_category):
        assert is_locally_distributive(wreath_category).holds

    def test_sibling_pair(self):
        C = one_object(algebras.sibling_pair_detector())
        verdict = is_locally_distributive(C)
        assert not verdict.holds
        arrow, x, y = verdict.witness
        merged = C.row_at(arrow, int(C.left.add[x.value, y.value]))
        split = int(C.left.add[C.row_at(arrow, x.value), C.row_at(arrow, y.value)])
        assert merged != split
        assert verdict.render(C).startswith("locally distributive: no arrow A:0>0#")


class TestDiagrams:
    def test_value(self, diagonal):
        assert diagram_val(diagonal, parse_diagram(diagonal, "A:0>0#0[H:1@0]")) == HalfArrow(0, 0)
        assert diagram_val(diagonal, parse_diagram(diagonal, "A:0>0#2[H:0@0],H:0@0")) == HalfArrow(1, 0)
        assert diagram_val(diagonal, parse_diagram(diagonal, "A:0>0#1[A:0>0#2[H:0@0]]")) == HalfArrow(1, 0)

    @pytest.mark.parametrize("text", ["H:5@0", "A:0>0#0", "H:0@0[H:1@0]", "A:0>0#9[H:0@0]", "x"])
    def test_inconsistent(self, diagonal, text):
        with pytest.raises(InconsistentDiagramError):
            parse_diagram(diagonal, text)

    def test_merge(self, diagonal):
        d = parse_diagram(diagonal, "A:0>0#1[H:0@0],A:0>0#1[H:1@0]")
        merged = diagram_merge(diagonal, d)
        assert len(merged) == 1
        assert diagram_val(diagonal, merged) == diagram_val(diagonal, d)

    def test_random_merge_keeps_value(self, wreath_category):
        rng = random.Random(5)
        for _ in range(100):
            d = random_diagram(wreath_category, rng)
            merged = diagram_merge(wreath_category, d)
            assert diagram_val(wreath_category, merged) == diagram_val(wreath_category, d)
            assert not has_equal_label_siblings(merged)

    def test_invariance_suite(self, wreath_category, rng):
        result = diagram_invariance(wreath_category, rng, "wreath", 50)
        assert result.ok, result.findings


class TestDivision:
    def test_identity_assignment(self, diagonal):
        assignment = identity_assignment(diagonal)
        assert verify_division(diagonal, diagonal.left, assignment).ok
        assert verify_division(diagonal, diagonal.left, assignment).render() == "division: yes"

    def test_corrupted_assignments_are_rejected(self, diagonal):
        rng = random.Random(3)
        base = identity_assignment(diagonal)
        for clause in ("1a", "1b", "1c", "2a", "2b"):
            broken = corrupt_assignment(diagonal, diagonal.left, base, clause, rng)
            if broken is not None:
                assert not verify_division(diagonal, diagonal.left, broken).ok, clause

    def test_disjointness(self, diagonal):
        assignment = identity_assignment(diagonal)
        x, y = diagonal.halves
        assignment.set(y, assignment[x])
        verdict = verify_division(diagonal, diagonal.left, assignment)
        assert not verdict.ok

    def test_partial(self, diagonal):
        with pytest.raises(PartialAssignmentError):
            verify_division(diagonal, diagonal.left, Assignment())
        assignment = identity_assignment(diagonal)
        assignment.set(diagonal.halves[0], frozenset({7}))
        with pytest.raises(PartialAssignmentError):
            verify_division(diagonal, diagonal.left, assignment)

    def test_search(self, diagonal):
        search = search_division(diagonal, diagonal.left)
        assert search.status == FOUND
        assert verify_division(diagonal, diagonal.left, search.assignment).ok

    def test_search_into_trivial_fails(self, diagonal):
        assert search_division(diagonal, algebras.trivial()).status == NOT_FOUND

    def test_zero_budget(self, diagonal):
        search = search_division(diagonal, diagonal.left, budget=0)
        assert search.status == NOT_FOUND
        assert search.assignment is None

    def test_sanity_suite(self, rng):
        result = division_sanity(rng)
        assert result.ok, result.findings


class TestArrowOperations:
    def test_representatives_agree(self, wreath_category):
        C = wreath_category
        L, R = C.left, C.right
        for w1, w2 in sorted(C.image.W)[:40]:
            for h in C.objects:
                target = int(R.act[w2, h])
                arrow = C.arrow(h, target, tuple(int(L.act[w1, a]) for a in C.half_values[h]))
                for x in C.halves_at(h):
                    assert act_arrow_on_half(C, arrow, x) == HalfArrow(int(L.act[w1, x.value]), target)
                for a, b in sorted(C.image.R)[:10]:
                    shifted = C.arrow(h, int(R.act[R.mul[R.ins[b], w2], h]),
                                      tuple(int(L.act[L.mul[L.ins[a], w1], x]) for x in C.half_values[h]))
                    assert add_arrow_half(C, arrow, HalfArrow(a, b)) == shifted

    def test_half_arrow_sums_stay_in_the_category(self, wreath_category):
        C = wreath_category
        for x in C.halves:
            for y in C.halves:
                total = add_half_arrows(C, x, y)
                assert C.is_half(total)
                assert total == add_half_arrows(C, y, x)

    def test_act_checks_endpoints(self, wreath_category):
        C = wreath_category
        cases = [(a, x) for a in C.arrows for x in C.halves if x.endpoint != a.source]
        if not cases:
            pytest.skip("one object")
        with pytest.raises(EndpointMismatchError):
            act_arrow_on_half(C, *cases[0])

    def test_pair_image(self):
        A = algebras.bool_or()
        _, letters = canonical_self_morphism(A)
        image = build_pair_image(A, letters, A, letters)
        assert image.R == frozenset({(0, 0), (1, 1)})
        assert image.verify(A, A)

    def test_division_into_distributive_means_local_distributivity(self, diagonal):
        for build in (algebras.bool_or, algebras.sibling_pair_detector, algebras.bool_or_neg):
            C = one_object(build())
            if search_division(C, diagonal.left, budget=20_000).status == FOUND:
                assert is_locally_distributive(C).holds, build.__name__
