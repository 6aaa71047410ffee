from __future__ import annotations

import random
from math import comb

import pytest

from teamdim.errors import UnsupportedError
from teamdim.teamlogic import Structure, lindstrom_apply, parse_formula, team_family
from teamdim.teamlogic.generate import FormulaShape, random_formula
from teamdim.teamlogic.quantifiers import EVEN, EXISTS, FORALL, MAJORITY, at_least, quantifier_class


class TestClasses:
    @pytest.mark.parametrize("n, r", [(2, 1), (3, 1), (2, 2)])
    def test_member_counts(self, n, r):
        cells = n ** r
        assert len(EXISTS.members(n, r)) == 2 ** cells - 1
        assert FORALL.members(n, r) == [2 ** cells - 1]
        assert len(EVEN.members(n, r)) == 2 ** (cells - 1)
        assert len(MAJORITY.members(n, r)) == sum(comb(cells, j) for j in range(cells + 1) if 2 * j > cells)
        assert len(at_least(2).members(n, r)) == 2 ** cells - 1 - cells

    def test_majority_is_strict(self):
        assert not MAJORITY.contains(2, 1, 0b01)
        assert MAJORITY.contains(3, 1, 0b011)

    def test_empty_relation(self):
        assert EVEN.contains_empty(3, 1) and not EXISTS.contains_empty(3, 1)

    def test_lookup(self):
        assert quantifier_class("majority") is MAJORITY
        assert quantifier_class("atleast3").contains(3, 1, 0b111)
        with pytest.raises(UnsupportedError, match="atleastK"):
            quantifier_class("most")


class TestFormulaLevel:
    def test_catalog_exists_and_forall_match_the_built_in_quantifiers(self):
        model = Structure.bare(2)
        for body in ("x = y", "dep(x;y)", "NE", "x != y or const(y)"):
            for q, builtin in (("exists", "E"), ("forall", "A")):
                left = team_family(model, parse_formula(f"Q {q} y . {body}"), ("x",))
                right = team_family(model, parse_formula(f"{builtin} y . {body}"), ("x",))
                assert left == right, (q, body)

    @pytest.mark.parametrize("name", ["exists", "forall", "majority", "even", "atleast2"])
    def test_operator_matches_team_semantics(self, name):
        model = Structure.bare(2)
        rng = random.Random(len(name))
        shape = FormulaShape(
            connectives=("and", "or", "ior", "tand"),
            quantifiers=("E", "A", "E1", "A1", "d1"),
            max_bound=1,
        )
        for _ in range(15):
            body = random_formula(rng, ("x", "y"), rng.randint(1, 3), shape)
            inner = team_family(model, body, ("x", "y"))
            wrapped = parse_formula(f"Q {name} y . ({body})")
            assert lindstrom_apply(quantifier_class(name), (1,), inner, 2) == team_family(model, wrapped, ("x",)), str(body)

    def test_binary_arity(self):
        # the diagonal of a two-element universe has exactly two pairs
        model = Structure.bare(2)
        two = team_family(model, parse_formula("Q atleast2 x y . x = y"), ())
        three = team_family(model, parse_formula("Q atleast3 x y . x = y"), ())
        assert sorted(two) == [0, 1] and sorted(three) == [0]
