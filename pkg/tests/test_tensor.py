from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teamdim.errors import BaseMismatchError, EmptyFamilyError
from teamdim.setfam import BaseSet, Family, Interval, classify, sets_of
from teamdim.tensor import (
    ALL_OPS,
    U,
    char_function,
    kleene_extend,
    op,
    pointwise,
    tensor_apply,
    tensor_interval_apply,
    tensor_negation,
)


def fam(base, *sets):
    return Family.of_sets(base, sets)


@st.composite
def family_pairs(draw, max_base=4, nonempty=True):
    n = draw(st.integers(1, max_base))
    pick = st.sets(st.integers(0, (1 << n) - 1), min_size=1 if nonempty else 0, max_size=6)
    return Family(n, draw(pick)), Family(n, draw(pick)), Family(n, draw(pick))


class TestOps:
    def test_sixteen_distinct_tables(self):
        assert len({o.code for o in ALL_OPS}) == 16

    def test_aliases_and_codes(self):
        assert op("or") == op("0111")
        assert op("and").code == "0001"
        assert op("minus")(1, 0) == 1 and op("minus")(1, 1) == 0

    def test_unknown_alias(self):
        with pytest.raises(ValueError):
            op("maybe")


class TestCharFunction:
    def test_mixed(self):
        assert char_function(fam(2, [0], [0, 1])).values == (1, U)

    def test_empty_member_only(self):
        assert char_function(fam(2, [])).values == (0, 0)

    def test_powerset_base_one(self):
        assert char_function(Family.powerset(1)).values == (U,)

    def test_empty_family(self):
        with pytest.raises(EmptyFamilyError):
            char_function(Family(2))


class TestKleene:
    def test_examples(self):
        assert kleene_extend(op("or"))(U, 1) == 1
        assert kleene_extend(op("and"))(U, 0) == 0
        assert kleene_extend(op("xor"))(U, 1) == U

    def test_agrees_on_classical_values(self):
        for o in ALL_OPS:
            ext = kleene_extend(o)
            assert all(ext(a, b) == o(a, b) for a in (0, 1) for b in (0, 1))


class TestTensorApply:
    def test_two_singletons(self):
        assert sets_of(tensor_apply("or", fam(2, [0]), fam(2, [1]))) == [(0, 1)]

    def test_singletons_squared(self):
        S = fam(3, [0], [1], [2])
        expected = Family(3, (m for m in range(1, 8) if bin(m).count("1") <= 2))
        assert tensor_apply("or", S, S) == expected

    def test_disjunction_not_idempotent(self):
        S = fam(3, [0], [1], [2])
        assert tensor_apply("or", S, S) != S

    def test_negation_of_empty_set(self):
        assert sets_of(tensor_negation(fam(2, []))) == [(0, 1)]

    def test_empty_operand(self):
        assert len(tensor_apply("or", Family(2), Family.powerset(2))) == 0

    def test_base_mismatch(self):
        with pytest.raises(BaseMismatchError):
            tensor_apply("or", Family.powerset(2), Family.powerset(3))

    @settings(max_examples=60)
    @given(family_pairs(), st.sampled_from(ALL_OPS))
    def test_commutative_and_associative_ops(self, triple, o):
        A, B, C = triple
        if o.is_commutative():
            assert tensor_apply(o, A, B) == tensor_apply(o, B, A)
        if o.is_associative():
            assert tensor_apply(o, tensor_apply(o, A, B), C) == tensor_apply(o, A, tensor_apply(o, B, C))

    def test_non_commutative_op_has_counterexample(self):
        A, B = fam(1, [0]), fam(1, [])
        assert tensor_apply("minus", A, B) != tensor_apply("minus", B, A)

    @settings(max_examples=150)
    @given(family_pairs(), st.sampled_from(ALL_OPS))
    def test_characteristic_of_result_is_pointwise(self, triple, o):
        A, B, _ = triple
        assert char_function(tensor_apply(o, A, B)) == pointwise(o, char_function(A), char_function(B))

    def test_non_monotone_op_breaks_domination(self):
        F = fam(2, [0], [1], [0, 1])
        profile = classify(F)
        assert profile.dominated and profile.convex and not profile.supported
        out = tensor_apply("minus", fam(2, [0, 1]), F)
        assert not classify(out).dominated


class TestIntervalClosedForm:
    def test_union_example(self):
        assert tensor_interval_apply("or", Interval(0, 0b01), Interval(0b10, 0b10), 2) == Interval(0b10, 0b11)

    def test_and_with_full(self):
        I = Interval(0b001, 0b101)
        assert tensor_interval_apply("and", I, Interval(0b111, 0b111), 3) == I

    def test_xor_with_empty(self):
        I = Interval(0b010, 0b110)
        assert tensor_interval_apply("xor", Interval(0, 0), I, 3) == I

    def test_rejects_inverted_interval(self):
        with pytest.raises(ValueError):
            tensor_interval_apply("or", Interval(0b1, 0), Interval(0, 0), 1)

    def test_all_ops_random_intervals(self):
        rng = random.Random(11)
        for _ in range(400):
            n = rng.randint(1, 6)
            o = rng.choice(ALL_OPS)
            pieces = []
            for _ in range(2):
                lo = rng.getrandbits(n)
                pieces.append(Interval(lo, lo | rng.getrandbits(n)))
            brute = tensor_apply(o, *(Family(n, p.members()) for p in pieces))
            closed = tensor_interval_apply(o, pieces[0], pieces[1], BaseSet(n))
            assert brute == Family(n, closed.members())
