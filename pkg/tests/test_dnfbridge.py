from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teamdim.dims import cylindrical_dimension, prime_intervals
from teamdim.dnfbridge import (
    BoolFunc,
    boolfunc_to_family,
    family_to_boolfunc,
    minimal_dnf_length,
    parse_boolfunc,
    prime_implicants,
)
from teamdim.errors import ParseError
from teamdim.setfam import Family


def even_family(n):
    return Family(n, (m for m in range(1 << n) if bin(m).count("1") % 2 == 0))


@st.composite
def boolfuncs(draw, max_vars=6):
    n = draw(st.integers(0, max_vars))
    return BoolFunc(n, tuple(draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))))


class TestCorrespondence:
    def test_even_family_is_xnor(self):
        assert family_to_boolfunc(even_family(2)).truth_table == (1, 0, 0, 1)

    def test_constant_false(self):
        assert len(boolfunc_to_family(BoolFunc(3, (0,) * 8))) == 0

    @given(boolfuncs())
    def test_round_trip(self, f):
        assert family_to_boolfunc(boolfunc_to_family(f)) == f


class TestPrimes:
    def test_single_minterm(self):
        f = BoolFunc(3, tuple(int(v == 5) for v in range(8)))
        primes = prime_implicants(f)
        assert len(primes) == 1 and str(primes[0]) == "101"

    def test_even_family(self):
        assert len(prime_implicants(family_to_boolfunc(even_family(2)))) == 2

    def test_constant_true(self):
        primes = prime_implicants(BoolFunc(3, (1,) * 8))
        assert [str(p) for p in primes] == ["---"]

    @settings(max_examples=100)
    @given(boolfuncs(max_vars=5))
    def test_primes_are_the_maximal_intervals(self, f):
        fam = boolfunc_to_family(f)
        got = sorted(p.interval() for p in prime_implicants(f))
        assert got == sorted(prime_intervals(fam))
        for p in prime_implicants(f):
            assert all(m in fam for m in p.interval().members())


class TestMinimalLength:
    def test_even_family(self):
        assert minimal_dnf_length(family_to_boolfunc(even_family(2))).value == 2

    def test_constant_true(self):
        assert minimal_dnf_length(BoolFunc(4, (1,) * 16)).value == 1

    def test_constant_false(self):
        assert minimal_dnf_length(BoolFunc(2, (0,) * 4)).value == 0

    def test_random_eight_variables_match_cylindrical_dimension(self):
        rng = random.Random(5)
        for _ in range(10):
            f = BoolFunc(8, tuple(rng.randint(0, 1) for _ in range(256)))
            dnf = minimal_dnf_length(f)
            cd = cylindrical_dimension(boolfunc_to_family(f))
            assert dnf.exact and cd.exact and dnf.value == cd.value

    @settings(max_examples=100, deadline=None)
    @given(boolfuncs())
    def test_witness_cubes_cover_exactly(self, f):
        result = minimal_dnf_length(f)
        covered = {v for v in range(1 << f.var_count) if any(t.covers(v) for t in result.witness)}
        assert covered == set(f.minterms())


class TestText:
    def test_parse(self):
        f = parse_boolfunc("boolfunc 2\n1001\n")
        assert f.truth_table == (1, 0, 0, 1)
        assert parse_boolfunc(f.to_text()) == f

    def test_wrapped_table(self):
        assert parse_boolfunc("boolfunc 3\n0110\n1001\n").truth_table == (0, 1, 1, 0, 1, 0, 0, 1)

    def test_wrong_length(self):
        with pytest.raises(ParseError):
            parse_boolfunc("boolfunc 2\n101\n")

    def test_bad_character(self):
        with pytest.raises(ParseError, match="line 2, column 3"):
            parse_boolfunc("boolfunc 2\n10x1\n")

    def test_bad_header(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_boolfunc("func 2\n1001\n")
