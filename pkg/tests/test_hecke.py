"""Hecke algebra: multiplication, the three bases, and the involution."""

import itertools

from hypothesis import given, settings, strategies as st

from asymhecke.coeffring import GAUSS, Laurent, ONE, ZERO, q_power, v_power
from asymhecke.hecke import (
    HeckeElt, a_function, a_function_oracle, c_basis, convert_basis,
    cprime_basis, h_const, h_simple_closed_form, j_involution, mu_joined,
    mul_hecke, t_basis, unit,
)
from asymhecke.weyl import (
    IDENTITY, S0, S1, WeylElt, bruhat_leq, enumerate_by_length, generator,
    mul, parse_word,
)

small_laurent = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5),
                                max_size=3).map(Laurent)
small_weyl = st.one_of(
    st.just(IDENTITY),
    st.tuples(st.integers(0, 1), st.integers(1, 6)).map(lambda t: WeylElt(*t)))
small_elt = st.builds(
    lambda basis, pairs: HeckeElt(basis, dict(pairs)),
    st.sampled_from(("T", "C", "Cprime")),
    st.lists(st.tuples(small_weyl, small_laurent), max_size=3))


def fold_product(a: HeckeElt, w: WeylElt) -> HeckeElt:
    """Oracle: multiply by T_w one generator at a time, from the relations."""
    out = convert_basis(a, "T")
    for k in range(w.length):
        i = w.letter(k)
        nxt = {}
        for x, c in out.coeffs.items():
            xs = mul(x, generator(i))
            if xs.length > x.length:
                nxt[xs] = nxt.get(xs, ZERO) + c
            else:
                nxt[x] = nxt.get(x, ZERO) + c * (q_power(1) - ONE)
                nxt[xs] = nxt.get(xs, ZERO) + c * q_power(1)
        out = HeckeElt("T", nxt)
    return out


class TestConversion:
    def test_cprime_of_the_length_three_word(self):
        got = convert_basis(cprime_basis(parse_word("010")), "T")
        want = {w: v_power(-3)
                for w in enumerate_by_length(0, 3) if bruhat_leq(w, parse_word("010"))}
        assert dict(got.coeffs) == want
        assert len(want) == 6

    def test_cprime_of_identity_is_unit(self):
        assert convert_basis(cprime_basis(IDENTITY), "T") == t_basis(IDENTITY)

    def test_t_word_in_cprime(self):
        got = convert_basis(t_basis(parse_word("01")), "Cprime")
        assert got.coeff(parse_word("01")) == q_power(1)
        assert got.coeff(S0) == Laurent({1: -1})
        assert got.coeff(S1) == Laurent({1: -1})
        assert got.coeff(IDENTITY) == ONE

    def test_roundtrips_exact(self):
        for w in enumerate_by_length(0, 12):
            for b1, b2 in itertools.permutations(("T", "C", "Cprime"), 2):
                h = HeckeElt(b1, {w: ONE})
                assert convert_basis(convert_basis(h, b2), b1) == h

    @given(small_elt, st.sampled_from(("T", "C", "Cprime")))
    @settings(max_examples=60, deadline=None)
    def test_roundtrip_random(self, h, target):
        assert convert_basis(convert_basis(h, target), h.basis) == h

    def test_triangularity_and_signs(self):
        # T_w over C' is supported on y <= w with sign (-1)^(l(w)-l(y)).
        for w in enumerate_by_length(0, 8):
            got = convert_basis(t_basis(w), "Cprime")
            for y in enumerate_by_length(0, 9):
                c = got.coeff(y)
                if not bruhat_leq(y, w):
                    assert c.is_zero()
                    continue
                sign = -1 if (w.length - y.length) % 2 else 1
                assert c == Laurent({y.length: sign})


class TestMultiplication:
    def test_length_additive_case(self):
        assert mul_hecke(t_basis(S0), t_basis(S1)) == t_basis(parse_word("01"))

    def test_quadratic_relation(self):
        got = mul_hecke(t_basis(S0), t_basis(S0))
        assert got.coeff(S0) == q_power(1) - ONE
        assert got.coeff(IDENTITY) == q_power(1)
        # (T_s + 1)(T_s - q) = 0
        ts = t_basis(S0)
        prod = mul_hecke(ts + unit(), ts - unit().scale(q_power(1)))
        assert prod.is_zero()

    def test_matches_fold_oracle(self):
        for x in enumerate_by_length(0, 5):
            for y in enumerate_by_length(0, 5):
                assert mul_hecke(t_basis(x), t_basis(y)) == fold_product(t_basis(x), y)

    @given(small_elt, small_elt, small_elt)
    @settings(max_examples=25, deadline=None)
    def test_associative_random(self, a, b, c):
        lhs = mul_hecke(mul_hecke(a, b), convert_basis(c, a.basis))
        rhs = mul_hecke(a, mul_hecke(b, convert_basis(c, b.basis)))
        assert convert_basis(lhs, "T") == convert_basis(rhs, "T")

    def test_unit_is_neutral(self):
        for w in enumerate_by_length(0, 6):
            assert mul_hecke(unit(), t_basis(w)) == t_basis(w)
            assert mul_hecke(t_basis(w), unit()) == t_basis(w)


class TestInvolution:
    def test_fixed_identity(self):
        assert j_involution(t_basis(IDENTITY)) == t_basis(IDENTITY)

    def test_generator_value(self):
        assert j_involution(t_basis(S0)) == t_basis(S0).scale(Laurent({-2: -1}))

    def test_exchanges_canonical_bases(self):
        for w in enumerate_by_length(0, 8):
            sign = Laurent({0: -1 if w.length % 2 else 1})
            got = convert_basis(j_involution(c_basis(w)), "Cprime")
            assert got == cprime_basis(w).scale(sign)

    @given(small_elt)
    @settings(max_examples=40, deadline=None)
    def test_involution(self, h):
        assert j_involution(j_involution(h)) == h

    @given(small_elt, small_elt)
    @settings(max_examples=25, deadline=None)
    def test_algebra_map(self, a, b):
        lhs = j_involution(mul_hecke(a, convert_basis(b, a.basis)))
        rhs = mul_hecke(j_involution(a), j_involution(convert_basis(b, a.basis)))
        assert convert_basis(lhs, "T") == convert_basis(rhs, "T")


class TestStructureConstants:
    def test_examples(self):
        assert h_const(S0, S0, S0) == -GAUSS
        assert h_const(S0, S1, parse_word("01")) == ONE
        assert h_const(S0, S1, S1) == ZERO

    def test_closed_form_sweep(self):
        for x in enumerate_by_length(0, 10):
            for i in (0, 1):
                prod = mul_hecke(c_basis(x), c_basis(generator(i)))
                for z in enumerate_by_length(0, 11):
                    assert prod.coeff(z) == h_simple_closed_form(x, i, z)

    def test_mu(self):
        assert mu_joined(S0, parse_word("01")) == 1
        assert mu_joined(IDENTITY, IDENTITY) == 0
        assert mu_joined(S0, parse_word("010")) == 0

    def test_a_function_values(self):
        assert a_function(IDENTITY) == 0
        assert a_function(S0) == 1
        assert a_function(parse_word("010101")) == 1

    def test_a_function_against_oracle(self):
        for w in enumerate_by_length(0, 4):
            assert a_function(w) == a_function_oracle(w, max_length=5)
