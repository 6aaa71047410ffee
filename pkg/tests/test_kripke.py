from __future__ import annotations

import random

import pytest

from teamdim.dims import cylindrical_dimension, dual_upper_dimension, upper_dimension
from teamdim.errors import ArityError, BaseMismatchError, ParseError
from teamdim.kripke import (
    apply_kripke,
    catalog,
    check_star_flat,
    check_star_sharp,
    check_union_lemma,
    conjunction_relation,
    disjunction_relation,
    format_kripke,
    intersection_relation,
    is_local,
    is_separating,
    materialize,
    nonempty_to_full_relation,
    parse_kripke,
    random_local_relation,
    restricted_union_relation,
)
from teamdim.setfam import Family
from teamdim.tensor import tensor_apply


def rand_family(rng, n, most=5):
    return Family(n, (rng.getrandbits(n) for _ in range(rng.randint(1, most))))


def split(rng, fam, parts):
    buckets = [[] for _ in range(parts)]
    for m in fam:
        buckets[rng.randrange(parts)].append(m)
    return [Family(fam.base, b) for b in buckets]


class TestApply:
    def test_intersection_relation(self):
        rng = random.Random(0)
        for _ in range(30):
            A, B = rand_family(rng, 3), rand_family(rng, 3)
            assert apply_kripke(intersection_relation(3), A, B) == A & B

    def test_disjunction_relation_is_tensor_or(self):
        rng = random.Random(1)
        for _ in range(30):
            A, B = rand_family(rng, 3), rand_family(rng, 3)
            assert apply_kripke(disjunction_relation(3), A, B) == tensor_apply("or", A, B)

    def test_empty_argument_gives_empty(self):
        for rel in catalog(2).values():
            args = [Family.powerset(2)] * rel.arity
            args[-1] = Family(2)
            assert len(apply_kripke(rel, *args)) == 0

    def test_arity_mismatch(self):
        with pytest.raises((ArityError, ValueError)):
            apply_kripke(intersection_relation(2), Family.powerset(2))

    def test_base_mismatch(self):
        with pytest.raises(BaseMismatchError):
            apply_kripke(intersection_relation(2), Family.powerset(2), Family.powerset(3))


class TestLocality:
    def test_intersection(self):
        assert is_local(intersection_relation(3)) and is_separating(intersection_relation(3))

    def test_restricted_union(self):
        rel = restricted_union_relation(3)
        assert not is_local(rel) and is_separating(rel)

    def test_tensor_conjunction(self):
        rel = conjunction_relation(3)
        assert not is_local(rel) and not is_separating(rel)

    def test_tensor_disjunction_separating(self):
        assert is_separating(disjunction_relation(3))


class TestStarConditions:
    def test_intersection(self):
        rel = intersection_relation(2)
        assert check_star_sharp(rel) and check_star_flat(rel)

    def test_nonempty_to_full(self):
        rel = nonempty_to_full_relation(2)
        assert is_local(rel)
        assert check_star_sharp(rel) and not check_star_flat(rel)

    def test_tensor_conjunction_preserves_both(self):
        rel = conjunction_relation(2)
        assert check_star_sharp(rel) and check_star_flat(rel)


class TestUnionLemma:
    def test_intersection_two_way_splits(self):
        rng = random.Random(2)
        rel = intersection_relation(3)
        for _ in range(20):
            args = [rand_family(rng, 3, 6) for _ in range(2)]
            assert check_union_lemma(rel, [split(rng, a, 2) for a in args])

    def test_disjunction_singleton_parts(self):
        rng = random.Random(3)
        rel = disjunction_relation(3)
        args = [rand_family(rng, 3, 6) for _ in range(2)]
        assert check_union_lemma(rel, [[Family(3, [m]) for m in a] for a in args])

    def test_all_parts_empty(self):
        rel = intersection_relation(2)
        assert check_union_lemma(rel, [[Family(2), Family(2)], [Family(2)]])

    def test_every_catalog_relation(self):
        rng = random.Random(4)
        for size in range(1, 4):
            for rel in catalog(size).values():
                for _ in range(5):
                    args = [rand_family(rng, rel.source.size, 6) for _ in range(rel.arity)]
                    assert check_union_lemma(rel, [split(rng, a, rng.randint(1, 3)) for a in args])


class TestRandomLocal:
    def test_generated_relations_are_local(self):
        rng = random.Random(5)
        for _ in range(30):
            rel = random_local_relation(rng, rng.randint(1, 2), rng.randint(1, 3), rng.randint(1, 3))
            assert is_local(rel)

    def test_separating_generator(self):
        rng = random.Random(6)
        for _ in range(30):
            rel = random_local_relation(rng, rng.randint(1, 2), rng.randint(1, 3), rng.randint(1, 3), separating=True)
            assert is_local(rel) and is_separating(rel)

    def test_preservation_and_products(self):
        rng = random.Random(8)
        for i in range(60):
            sep = i % 2 == 1
            arity = rng.randint(1, 2)
            rel = random_local_relation(rng, arity, rng.randint(1, 4), rng.randint(1, 4), separating=sep)
            assert check_star_sharp(rel)
            if sep:
                assert check_star_flat(rel)
            args = [rand_family(rng, rel.source.size) for _ in range(arity)]
            image = apply_kripke(rel, *args)
            solvers = [upper_dimension] + ([dual_upper_dimension, cylindrical_dimension] if sep else [])
            for solver in solvers:
                bound = 1
                for a in args:
                    bound *= solver(a).value
                assert solver(image).value <= bound


class TestFiles:
    def test_round_trip(self):
        rel = intersection_relation(2)
        again = parse_kripke(format_kripke(rel))
        assert again.rows == materialize(rel).rows
        assert format_kripke(again) == format_kripke(rel)

    def test_header_line_one(self):
        text = "kripke 1 2 2\n0 ; 0\n1 ; 1\n"
        rel = parse_kripke(text)
        assert rel.arity == 1 and len(rel.rows) == 2

    def test_bad_header(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_kripke("kripke two\n")

    def test_wrong_field_count(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_kripke("kripke 2 2 2\n0 ; 1\n")
