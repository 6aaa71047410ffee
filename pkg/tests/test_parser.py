from __future__ import annotations

import random

import pytest

from teamdim.errors import ParseError
from teamdim.teamlogic import free_variables, parse_formula
from teamdim.teamlogic.generate import FormulaShape, random_formula
from teamdim.teamlogic.syntax import Binary, Const, Dep, Eq, Exc, Ind, NonEmpty, Quant, Rel


class TestAtoms:
    def test_dependence(self):
        assert parse_formula("dep(x ; y)") == Dep(("x",), "y")

    def test_constancy_form_of_dependence(self):
        assert parse_formula("dep(;y)") == Dep((), "y")
        assert parse_formula("const(x y)") == Const(("x", "y"))

    def test_universal_exclusion(self):
        phi = parse_formula("A z . (z = y or exc(x z ; x y))")
        assert phi == Quant("A", ("z",), Binary("or", Eq("z", "y"), Exc(("x", "z"), ("x", "y"))))
        assert set(free_variables(phi)) == {"x", "y"}

    def test_independence_with_empty_condition(self):
        assert parse_formula("ind(x;;y)") == Ind(("x",), (), ("y",))

    def test_literals(self):
        assert parse_formula("! R(x, y)") == Rel("R", ("x", "y"), negated=True)
        assert parse_formula("x != y") == parse_formula("!x = y") == Eq("x", "y", negated=True)
        assert parse_formula("NE") == NonEmpty()


class TestStructure:
    def test_precedence(self):
        phi = parse_formula("a = b and b = c or NE ior const(a) -> even(a)")
        assert phi.op == "implies"
        assert phi.left.op == "ior"
        assert phi.left.left.op == "or"
        assert phi.left.left.left.op == "and"

    def test_tensor_conjunction_between_or_and_and(self):
        phi = parse_formula("a = b or b = c tand c = d and d = a")
        assert phi.op == "or" and phi.right.op == "tand" and phi.right.right.op == "and"

    def test_implication_groups_right(self):
        phi = parse_formula("a=b -> b=c -> c=d")
        assert phi.right.op == "implies"

    def test_quantifier_scope_extends_right(self):
        phi = parse_formula("E x . x = y and y = z")
        assert isinstance(phi, Quant) and phi.body.op == "and"

    def test_multi_variable_sugar(self):
        assert parse_formula("E x y . x = y") == Quant("E", ("x",), Quant("E", ("y",), Eq("x", "y")))

    def test_generalized_quantifier(self):
        phi = parse_formula("Q majority x y . R(x, y)")
        assert phi.kind == "Q" and phi.variables == ("x", "y") and phi.qclass == "majority"

    def test_round_trip_of_random_formulas(self):
        rng = random.Random(0)
        shape = FormulaShape(
            connectives=("and", "or", "ior", "tand", "implies"),
            quantifiers=("E", "A", "Q", "E1", "A1", "d1"),
            relations={"R": 2},
            max_bound=2,
        )
        for _ in range(200):
            phi = random_formula(rng, ("x", "y"), rng.randint(1, 4), shape)
            assert parse_formula(str(phi)) == phi


class TestErrors:
    def test_dependence_without_target(self):
        with pytest.raises(ParseError, match="const"):
            parse_formula("dep(x y ;)")

    @pytest.mark.parametrize(
        "text, where",
        [
            ("x = ", "column 5"),
            ("(x = y", "column 7"),
            ("E . x = y", "column 3"),
            ("x = y\n and ,", "line 2, column 6"),
            ("Q nosuch x . x = x", "column 3"),
        ],
    )
    def test_positions(self, text, where):
        with pytest.raises(ParseError, match=where):
            parse_formula(text)

    @pytest.mark.parametrize("text", ["exc(x;y z)", "inc(;)", "ano(;y)", "ind(;;y)", "E and . x = y"])
    def test_arity_and_keyword_violations(self, text):
        with pytest.raises(ParseError):
            parse_formula(text)
