from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from teamdim.atomcat import anonymity_family, inclusion_family
from teamdim.dims import (
    BUDGET,
    EXACT,
    SearchBudget,
    all_dimensions,
    check_dominating,
    check_interval_cover,
    check_supporting,
    cylindrical_dimension,
    dual_upper_dimension,
    format_witness,
    greedy_cover,
    upper_dimension,
)
from teamdim.errors import NotASubfamilyError
from teamdim.setfam import Family, classify, max_sets
from teamdim.tensor import tensor_apply


def even_family(n):
    return Family(n, (m for m in range(1 << n) if bin(m).count("1") % 2 == 0))


def random_family(rng, n, max_members=None):
    pool = range(1 << n)
    k = rng.randint(1, min(len(pool), max_members or len(pool)))
    return Family(n, rng.sample(pool, k))


@st.composite
def small_families(draw, max_base=4, max_members=7):
    n = draw(st.integers(0, max_base))
    members = draw(st.sets(st.integers(0, (1 << n) - 1), max_size=max_members))
    return Family(n, members)


class TestCheckers:
    def test_even_family_dominates_itself(self):
        E = even_family(2)
        assert check_dominating(E, E.members)

    def test_powerset_dominated_by_top(self):
        assert check_dominating(Family.powerset(2), [0b11])

    def test_top_alone_misses_empty_set(self):
        assert not check_dominating(even_family(2), [0b11])

    def test_generators_must_be_members(self):
        with pytest.raises(NotASubfamilyError):
            check_dominating(even_family(2), [0b01])

    def test_supporting(self):
        assert check_supporting(Family.powerset(2), [0])
        assert not check_supporting(even_family(2), [0])


class TestValues:
    def test_even_base_two(self):
        E = even_family(2)
        assert upper_dimension(E).value == 2
        assert cylindrical_dimension(E).value == 2

    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
    def test_powerset_is_one_interval(self, k):
        dd, ddd, cd = all_dimensions(Family.powerset(k))
        assert (dd.value, ddd.value, cd.value) == (1, 1, 1)

    def test_inclusion_family_two(self):
        F = inclusion_family(2)
        assert upper_dimension(F).value == 2
        # the brute-force oracle gives 4 where the closed form reads 5; see the acceptance battery
        assert dual_upper_dimension(F).value == oracles.dual_upper_dimension(oracles.as_sets(F)) == 4

    def test_anonymity_two_two(self):
        assert cylindrical_dimension(anonymity_family(2, 2)).value == 4

    def test_singleton_family(self):
        assert cylindrical_dimension(Family(3, [0b101])).value == 1

    def test_empty_family_and_empty_member(self):
        assert [r.value for r in all_dimensions(Family(3))] == [0, 0, 0]
        assert all(not r.witness for r in all_dimensions(Family(3)))
        assert [r.value for r in all_dimensions(Family(3, [0]))] == [1, 1, 1]

    def test_witness_format(self):
        E = even_family(2)
        assert format_witness(E, cylindrical_dimension(E)) == ["[-] [-]", "[0 1] [0 1]"]
        assert format_witness(E, upper_dimension(E)) == ["-", "0 1"]


class TestGreedy:
    def test_powerset_interval_mode(self):
        assert greedy_cover(Family.powerset(2), "interval").value == 1

    def test_even_base_three_dominate_mode(self):
        assert greedy_cover(even_family(3), "dominate").value == 4

    def test_greedy_bounds_exact(self):
        rng = random.Random(42)
        F = random_family(rng, 4)
        for mode, solver in (("dominate", upper_dimension), ("support", dual_upper_dimension), ("interval", cylindrical_dimension)):
            assert greedy_cover(F, mode).value >= solver(F).value


class TestAgainstOracle:
    @settings(max_examples=150, deadline=None)
    @given(small_families())
    def test_all_three_match_brute_force(self, F):
        S = oracles.as_sets(F)
        dd, ddd, cd = all_dimensions(F)
        assert dd.value == oracles.upper_dimension(S)
        assert ddd.value == oracles.dual_upper_dimension(S)
        assert cd.value == oracles.cylindrical_dimension(S)

    @settings(max_examples=150, deadline=None)
    @given(small_families(max_base=5, max_members=32))
    def test_witnesses_verify(self, F):
        dd, ddd, cd = all_dimensions(F)
        for r in (dd, ddd, cd):
            assert r.status == EXACT and len(r.witness) == r.value
        assert check_dominating(F, dd.witness)
        assert check_supporting(F, ddd.witness)
        assert check_interval_cover(F, cd.witness)


class TestProperties:
    @settings(max_examples=200, deadline=None)
    @given(small_families(max_base=5, max_members=32))
    def test_estimates(self, F):
        dd, ddd, cd = (r.value for r in all_dimensions(F))
        assert dd <= cd and ddd <= cd
        if F.base.size >= 1:
            assert cd <= 2 ** (F.base.size - 1) or len(F) == 0
        if classify(F).convex:
            assert cd <= dd * ddd

    @settings(max_examples=100, deadline=None)
    @given(small_families(max_base=5, max_members=32))
    def test_downward_closed(self, F):
        down = Family(F.base, {s for m in F for s in range(1 << F.base.size) if s & ~m == 0})
        if len(down):
            assert upper_dimension(down).value == len(max_sets(down))
            assert dual_upper_dimension(down).value == 1

    @settings(max_examples=100, deadline=None)
    @given(small_families(max_base=4, max_members=10), small_families(max_base=4, max_members=10))
    def test_union_bound(self, F, G):
        if F.base.size != G.base.size:
            G = Family(F.base, (m & F.base.full for m in G))
        U = F | G
        for solver in (upper_dimension, dual_upper_dimension, cylindrical_dimension):
            assert solver(U).value <= solver(F).value + solver(G).value

    def test_disjoint_tensor_disjunction_product(self):
        rng = random.Random(3)
        for _ in range(40):
            factors = rng.choice([2, 3])
            width = 2
            n = factors * width
            parts = []
            for i in range(factors):
                local = random_family(rng, width)
                parts.append(Family(n, (m << (i * width) for m in local)))
            acc = parts[0]
            for part in parts[1:]:
                acc = tensor_apply("or", acc, part)
            bound = 1
            for part in parts:
                bound *= cylindrical_dimension(part).value
            assert cylindrical_dimension(acc).value <= bound


class TestBudget:
    def test_tiny_budget_reports_upper_bound(self):
        rng = random.Random(0)
        F = Family(10, [m for m in range(1 << 10) if rng.random() < 0.5])
        result = cylindrical_dimension(F, SearchBudget(wallClock=0.05))
        assert result.status == BUDGET
        assert check_interval_cover(F, result.witness)
        assert result.value >= cylindrical_dimension(F).value

    def test_node_budget_on_search_path(self):
        result = upper_dimension(even_family(6), SearchBudget(maxNodes=1))
        assert result.status == BUDGET and result.value >= 32

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("TEAMDIM_BUDGET_MS", "1500")
        assert SearchBudget.default().wallClock == pytest.approx(1.5)
