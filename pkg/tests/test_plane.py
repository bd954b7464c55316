"""Convolution action on plane functions: exact rules and series limits."""

import pytest

from asymhecke.coeffring import Laurent, ONE, ZERO, q_power
from asymhecke.completion import CompletedHecke, build_g
from asymhecke.hecke import mul_hecke, t_basis
from asymhecke.plane import (
    OrbitWindow, StabilizationError, act_completed, act_simple, act_t,
    closed_orbit_action, closure_from_window, orbit_coefficients,
    orbit_window, parse_symbol, phi_orbit, phibar, psi_orbit, psibar,
    schwartz_check, t_action, zero_function,
)
from asymhecke.weyl import IDENTITY, S0, S1, WeylElt, enumerate_by_length, parse_word

Q = q_power(1)
QM1 = Q - ONE


def orbit_fn(kind: str, m: int):
    return phi_orbit(m) if kind == "phi" else psi_orbit(m)


def cone_series(i: int, cutoff: int, prec: int) -> CompletedHecke:
    """The alternating series restricted to words starting with s_i."""
    g = build_g(cutoff, prec)
    coeffs = {w: c for w, c in g.coeffs.items()
              if not w.is_identity() and w.first == i}
    return CompletedHecke("T", coeffs, cutoff, prec, g.exact_to, g.tail)


class TestBases:
    def test_orbit_closure_roundtrip(self):
        assert orbit_coefficients(phi_orbit(0)) == {("phi", 0): ONE}
        assert orbit_coefficients(psi_orbit(-2)) == {("psi", -2): ONE}

    def test_closure_functions_have_infinite_orbit_support(self):
        with pytest.raises(ValueError):
            orbit_coefficients(phibar(0))

    def test_window_of_closure_function(self):
        win = orbit_window(phibar(0), -2, 3)
        for k in range(-2, 4):
            want = ONE if k >= 0 else ZERO
            assert win.coeff("phi", k) == want
            assert win.coeff("psi", k) == want
        assert win.truncated_above

    def test_window_closure_recovery(self):
        f = phibar(1) + psibar(-1).scale(q_power(2))
        win = orbit_window(f, -3, 4)
        assert closure_from_window(win) == f

    def test_parse_symbols(self):
        assert parse_symbol("phibar(0)") == phibar(0)
        assert parse_symbol("psi(-2)") == psi_orbit(-2)
        assert parse_symbol("0") == zero_function()
        with pytest.raises(ValueError):
            parse_symbol("phibar[0]")


class TestSimpleAction:
    def test_orbit_rules(self):
        assert orbit_coefficients(act_simple(0, psi_orbit(0))) == {("phi", 0): ONE}
        assert orbit_coefficients(act_simple(0, phi_orbit(0))) == \
            {("phi", 0): QM1, ("psi", 0): Q}
        assert orbit_coefficients(act_simple(1, phi_orbit(2))) == {("psi", 1): ONE}
        assert orbit_coefficients(act_simple(1, psi_orbit(0))) == \
            {("psi", 0): QM1, ("phi", 1): Q}

    def test_closure_rules(self):
        assert act_simple(0, phibar(0)) == phibar(0).scale(Q)
        assert act_simple(1, psibar(0)) == psibar(0).scale(Q)
        assert act_simple(0, psibar(0)) == \
            phibar(0) - psibar(0) + phibar(1).scale(Q)
        # The fourth rule, middle sign and index confirmed by the orbit rules.
        assert act_simple(1, phibar(0)) == \
            psibar(-1) - phibar(0) + psibar(0).scale(Q)

    def test_quadratic_relation_on_functions(self):
        for f in (phibar(0), psibar(2), phi_orbit(-1), psi_orbit(0)):
            for i in (0, 1):
                twice = act_simple(i, act_simple(i, f))
                assert twice == act_simple(i, f).scale(QM1) + f.scale(Q)

    def test_generator_swap_symmetry(self):
        # Conjugating by the unit translation swaps the generators and
        # shifts the alcoves: phi_n -> psi_(n-1), psi_n -> phi_n.
        def swap(coeffs):
            out = {}
            for (kind, n), c in coeffs.items():
                if kind == "phi":
                    out[("psi", n - 1)] = c
                else:
                    out[("phi", n)] = c
            return out

        for kind in ("phi", "psi"):
            for m in (-1, 0, 2):
                lhs = orbit_coefficients(act_simple(0, orbit_fn(kind, m)))
                image = swap({(kind, m): ONE})
                (ikind, im), = image.keys()
                rhs = orbit_coefficients(act_simple(1, orbit_fn(ikind, im)))
                assert swap(lhs) == rhs

    def test_window_action_shrinks_margin(self):
        win = orbit_window(phibar(0), -3, 5)
        acted = act_simple(0, win)
        assert isinstance(acted, OrbitWindow)
        assert acted.hi == 4  # truncated above, one index lost
        for k in range(acted.lo, acted.hi + 1):
            want = Q if k >= 0 else ZERO
            assert acted.coeff("phi", k) == want
            assert acted.coeff("psi", k) == want


class TestWordAction:
    def test_closed_forms_match_iteration(self):
        for n in range(0, 6):
            for first, parity in ((1, 0), (0, 1), (0, 0), (1, 1)):
                length = 2 * n + parity
                if length == 0:
                    continue
                w = WeylElt(first, length)
                for kind in ("phi", "psi"):
                    for m in range(-3, 4):
                        got = orbit_coefficients(act_t(w, orbit_fn(kind, m)))
                        want = closed_orbit_action(w, kind, m)
                        assert got == want, (w, kind, m)

    def test_single_letter_consistency(self):
        for i in (0, 1):
            for m in (-2, 0, 3):
                assert act_t(WeylElt(i, 1), psi_orbit(m)) == \
                    act_simple(i, psi_orbit(m))

    def test_module_axiom(self):
        f0 = phi_orbit(0)
        for w1 in enumerate_by_length(0, 4):
            for w2 in enumerate_by_length(0, 4):
                lhs = act_t(w1, act_t(w2, f0))
                prod = mul_hecke(t_basis(w1), t_basis(w2))
                rhs = zero_function()
                for x in prod.support():
                    rhs = rhs + act_t(x, f0).scale(prod.coeff(x))
                assert lhs == rhs, (w1, w2)


class TestSeriesAction:
    def expect_window(self, win, expectations):
        for (kind, k), want in expectations.items():
            got = win.coeff(kind, k).known_part()
            assert got == want, (kind, k, got.terms)

    def test_cone_zero_on_phi(self):
        win, rep = act_completed(cone_series(0, 18, 20), phi_orbit(0), -4, 4,
                                 floor=-2)
        assert rep.ok
        self.expect_window(win, {("phi", k): (Laurent({0: -1}) if k >= 0 else ZERO)
                                 for k in range(-4, 5)})
        self.expect_window(win, {("psi", k): (Laurent({0: -1}) if k >= 0 else ZERO)
                                 for k in range(-4, 5)})

    def test_cone_one_on_psi(self):
        win, rep = act_completed(cone_series(1, 18, 20), psi_orbit(0), -4, 4,
                                 floor=-2)
        assert rep.ok
        for k in range(-4, 5):
            assert win.coeff("psi", k).known_part() == \
                (Laurent({0: -1}) if k >= 0 else ZERO)
            assert win.coeff("phi", k).known_part() == \
                (Laurent({0: -1}) if k >= 1 else ZERO)

    def test_other_cone_lines(self):
        win, rep = act_completed(cone_series(1, 18, 20), phi_orbit(0), -4, 4,
                                 floor=-2)
        assert rep.ok
        for k in range(-4, 5):
            assert win.coeff("psi", k).known_part() == (ONE if k >= 0 else ZERO)
            assert win.coeff("phi", k).known_part() == (ONE if k >= 1 else ZERO)
        win2, rep2 = act_completed(cone_series(0, 18, 20), psi_orbit(0), -4, 4,
                                   floor=-2)
        assert rep2.ok
        for k in range(-4, 5):
            want = ONE if k >= 1 else ZERO
            assert win2.coeff("phi", k).known_part() == want
            assert win2.coeff("psi", k).known_part() == want

    def test_alternating_series_annihilates(self):
        for f in (phi_orbit(0), psi_orbit(0)):
            win, rep = act_completed(build_g(18, 20), f, -4, 4, floor=-2)
            assert rep.ok
            for k in range(-4, 5):
                for kind in ("phi", "psi"):
                    assert win.coeff(kind, k).known_part().is_zero()

    def test_insufficient_cutoff_reported(self):
        win, rep = act_completed(build_g(4, 8), phi_orbit(0), -3, 3, floor=-2)
        assert not rep.ok
        assert rep.unsettled


class TestTAction:
    def test_projector(self):
        for m in (-2, 0, 3):
            assert t_action(S0, phibar(m)).result == phibar(m)
            assert t_action(S0, psibar(m)).result.is_zero()
            assert t_action(S1, psibar(m)).result == psibar(m)
            assert t_action(S1, phibar(m)).result.is_zero()

    def test_identity_element_acts_trivially(self):
        for m in (-1, 0, 2):
            assert t_action(IDENTITY, phi_orbit(m)).result.is_zero()
            assert t_action(IDENTITY, psi_orbit(m)).result.is_zero()

    def test_identity_decomposition(self):
        for f in (phibar(0), psibar(1), phi_orbit(-1)):
            s0f = t_action(S0, f).result
            s1f = t_action(S1, f).result
            assert s0f + s1f == f

    def test_idempotence_as_operator(self):
        for f in (phibar(0), psibar(0), psi_orbit(2)):
            once = t_action(S0, f).result
            assert t_action(S0, once).result == once

    def test_image_is_spherically_invariant(self):
        for f in (psibar(-1), phi_orbit(0), psi_orbit(1)):
            img = t_action(S0, f).result
            assert all(kind == "phibar" for kind, _ in img.coeffs)

    def test_zero_function_shortcut(self):
        action = t_action(parse_word("01"), zero_function())
        assert action.result.is_zero()

    def test_stabilization_failure_raises(self):
        with pytest.raises(StabilizationError):
            t_action(S0, phibar(0), cutoff=6, floor=-4)


class TestSchwartz:
    def test_bounded_for_small_parameters(self):
        for q0 in (2, 3, 5):
            for y in (S0, S1, parse_word("01")):
                report = schwartz_check(y, q0, 30)
                assert report.bounded, (q0, y)
                assert report.tail_monotone, (q0, y)

    def test_rejects_tiny_parameter(self):
        with pytest.raises(ValueError):
            schwartz_check(S0, 1, 5)
