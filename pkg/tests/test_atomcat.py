from __future__ import annotations

import pytest

import oracles
from teamdim.atomcat import (
    AtomSpec,
    Bracket,
    closed_form_dims,
    gen_family,
    growth_label,
    relation_closed_form,
    relation_family,
)
from teamdim.dims import all_dimensions
from teamdim.errors import CapExceededError
from teamdim.setfam import classify, sets_of
from teamdim.teamlogic import Structure, free_variables, parse_formula, team_family


def dims(fam):
    return tuple(r.value for r in all_dimensions(fam))


class TestGenerators:
    def test_partial_functions(self):
        F = gen_family(AtomSpec("dep", 2))
        assert F.base.size == 4 and len(F) == 9

    def test_exclusion_two(self):
        # (0,1) is element 1 and (1,0) is element 2
        assert sets_of(gen_family(AtomSpec("exc", 2))) == [(), (1,), (2,)]

    def test_products_two_by_two(self):
        # nine nonempty rectangles plus the empty set
        pairs = [(x, y) for x in range(2) for y in range(2)]
        brute = {
            frozenset(p for p in pairs if p[0] in A and p[1] in B)
            for A in oracles.powerset(range(2))
            for B in oracles.powerset(range(2))
        }
        assert len(brute) == 10
        assert len(relation_family("Iperp", 2, 2)) == len(brute)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            gen_family(AtomSpec("dep", 3, m=2))

    def test_bad_spec(self):
        with pytest.raises(ValueError):
            AtomSpec("dep", 0)
        with pytest.raises(ValueError):
            AtomSpec("maybe", 2)

    @pytest.mark.parametrize(
        "kind, source, ctx",
        [
            ("dep", "dep(x;y)", ("y", "x")),
            ("exc", "exc(x;y)", ("y", "x")),
            ("inc", "inc(x;y)", ("y", "x")),
            ("ano", "ano(x;y)", ("y", "x")),
            ("pureInd", "ind(x;;y)", ("y", "x")),
            ("condInd", "ind(x;z;y)", ("z", "y", "x")),
            ("even", "even(x)", ("x",)),
            ("half", "half(x)", ("x",)),
            ("ne", "NE", ("x",)),
        ],
    )
    def test_generator_matches_formula(self, kind, source, ctx):
        # generators put the last coordinate fastest; teams put the first variable fastest
        model = Structure.bare(2)
        assert gen_family(AtomSpec(kind, 2)) == team_family(model, parse_formula(source), ctx)

    def test_shapes(self):
        for kind in ("dep", "exc"):
            assert classify(gen_family(AtomSpec(kind, 2))).downwardClosed
        for kind in ("inc", "ano"):
            p = classify(gen_family(AtomSpec(kind, 2)))
            assert p.unionClosed and p.dominated


class TestClosedForms:
    def test_examples(self):
        assert closed_form_dims(AtomSpec("dep", 2)) == relation_closed_form("F", 2, 2)
        c = closed_form_dims(AtomSpec("dep", 2))
        assert (c.dd, c.ddd, c.cd) == (4, 1, 4)
        c = closed_form_dims(AtomSpec("inc", 2))
        assert (c.dd, c.ddd, c.cd) == (2, 5, 5)
        c = closed_form_dims(AtomSpec("pureInd", 2))
        assert (c.dd, c.ddd, c.cd) == (5, 2, 5)

    def test_conditional_bracket(self):
        c = closed_form_dims(AtomSpec("condInd", 2))
        assert c.dd == Bracket(5, 25) and c.ddd == Bracket(2, 4)

    def test_exact_big_integers(self):
        c = closed_form_dims(AtomSpec("dep", 3, m=2))
        assert c.dd == 3 ** 9

    @pytest.mark.parametrize("kind", ["dep", "exc", "ano", "pureInd", "even", "half", "ne"])
    @pytest.mark.parametrize("n", [2, 3])
    def test_closed_form_agrees(self, kind, n):
        spec = AtomSpec(kind, n)
        assert closed_form_dims(spec).matches(*dims(gen_family(spec)))

    def test_conditional_within_bracket(self):
        spec = AtomSpec("condInd", 2)
        assert closed_form_dims(spec).matches(*dims(gen_family(spec)))

    def test_inclusion_brute_force_values(self):
        # frozen from the brute-force cover oracle; the closed form gives 5 for both
        F = gen_family(AtomSpec("inc", 2))
        S = oracles.as_sets(F)
        assert dims(F) == (2, 4, 4)
        assert (oracles.upper_dimension(S), oracles.dual_upper_dimension(S), oracles.cylindrical_dimension(S)) == (2, 4, 4)


class TestGrowthLabels:
    def test_dependence(self):
        assert growth_label(AtomSpec("dep", 2, m=3)) == "F_3"

    def test_inclusion(self):
        assert growth_label(AtomSpec("inc", 2, m=2), "dd") == "E_2"

    def test_conditional(self):
        assert growth_label(AtomSpec("condInd", 2, m=1, k=2, s=3)) == "E_6"


class TestDummyVariables:
    @pytest.mark.parametrize("source, ctx, extra", [("dep(x;y)", ("x", "y"), "z"), ("const(x)", ("x",), "z")])
    def test_one_dummy(self, source, ctx, extra):
        model = Structure.bare(2)
        phi = parse_formula(source)
        before = dims(team_family(model, phi, ctx))
        after = dims(team_family(model, phi, ctx + (extra,)))
        assert after[0] == before[0]
        growth = 2 ** len(free_variables(phi))
        assert after[1] <= before[1] * growth and after[2] <= before[2] * growth
