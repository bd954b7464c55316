"""
Named verification suites shared by the service and the CLI.

Each suite replays one family of identities at a configurable cutoff and
returns per-check verdicts; the acceptance tests run the same code at the
pinned scales.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffring import Laurent
from .hecke import h_simple_closed_form, mul_hecke, HeckeElt
from .coeffring import ONE
from .jalg import gamma, j_mul, t_elt, tw_in_cprime, tw_numerator, verify_images
from .plane import phibar, psibar, phi_orbit, psi_orbit, t_action
from .weyl import IDENTITY, S0, S1, WeylElt, enumerate_by_length, inverse

__all__ = ["Check", "SUITES", "run_suite"]

SUITES = ("images", "expansion-signs", "plane", "gamma", "all")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def _suite_images(cutoff: int, precision: int) -> list[Check]:
    rep = verify_images(max(cutoff, 8), max(precision, 8))
    return [
        Check("images/g-to-unit-series", rep.g_image_ok),
        Check("images/f-tilde-two-terms", rep.f_tilde_image_ok),
        Check("images/other-coefficients-vanish", rep.others_vanish),
        Check("images/f-consistent-with-f-tilde", rep.f_consistency_ok,
              "; ".join(rep.details[:3])),
    ]


def _suite_expansion_signs(cutoff: int, precision: int) -> list[Check]:
    del precision
    checks: list[Check] = []
    y_cap = min(6, max(1, cutoff - 2))
    poly_ok = sign_ok = norm_ok = True
    for y in enumerate_by_length(1, y_cap):
        _, report = tw_in_cprime(y, cutoff)
        poly_ok &= report.all_polynomial
        sign_ok &= report.all_signs_ok
        for x in enumerate_by_length(0, cutoff):
            num = tw_numerator(y, x)
            if not num.is_zero() and num.max_exponent() > y.length + 1:
                norm_ok = False
    checks.append(Check("expansion/a-coefficients-polynomial", poly_ok))
    checks.append(Check("expansion/sign-condition", sign_ok))
    checks.append(Check("expansion/(q+1)b-is-laurent", norm_ok,
                        f"lengths y<={y_cap}, x<={cutoff}"))
    return checks


def _suite_gamma(cutoff: int, precision: int) -> list[Check]:
    del precision
    cap = min(cutoff, 6)
    idem = (j_mul(t_elt(S0), t_elt(S0)) == t_elt(S0)
            and j_mul(t_elt(S1), t_elt(S1)) == t_elt(S1))
    only = True
    for z in enumerate_by_length(0, cap):
        for i, s in ((0, S0), (1, S1)):
            g = gamma(s, s, z)
            if z == s:
                only &= g == 1
            else:
                only &= g == 0
    integral = True
    for x in enumerate_by_length(0, min(cap, 4)):
        for y in enumerate_by_length(0, min(cap, 4)):
            prod = mul_hecke(HeckeElt("C", {x: ONE}), HeckeElt("C", {y: ONE}))
            for w in prod.support():
                z = inverse(w)
                a = 0 if z.is_identity() else 1
                g = gamma(x, y, z)
                shifted = prod.coeff(w) * Laurent({a: 1})
                signed = g if a % 2 == 0 else -g
                diff = shifted - Laurent({0: signed})
                if not diff.is_zero() and diff.min_exponent() <= 0:
                    integral = False
    return [
        Check("gamma/simple-idempotents", idem),
        Check("gamma/only-nonzero-diagonal", only, f"lengths <= {cap}"),
        Check("gamma/leading-coefficient-membership", integral),
    ]


def _suite_plane(cutoff: int, precision: int) -> list[Check]:
    del precision
    cutoff = max(cutoff, 14)
    m_range = range(-2, 3)
    t1_ok = proj_ok = decomp_ok = True
    for m in m_range:
        for f in (phi_orbit(m), psi_orbit(m)):
            if not t_action(IDENTITY, f, cutoff=cutoff).result.is_zero():
                t1_ok = False
        fixed = t_action(S0, phibar(m), cutoff=cutoff).result
        killed = t_action(S0, psibar(m), cutoff=cutoff).result
        proj_ok &= fixed == phibar(m) and killed.is_zero()
        for f in (phibar(m), psibar(m)):
            s0f = t_action(S0, f, cutoff=cutoff).result
            s1f = t_action(S1, f, cutoff=cutoff).result
            decomp_ok &= (s0f + s1f) == f
    return [
        Check("plane/t1-acts-trivially", t1_ok),
        Check("plane/ts0-projector", proj_ok),
        Check("plane/identity-decomposition", decomp_ok),
    ]


def _suite_hecke_small(cutoff: int, precision: int) -> list[Check]:
    del precision
    cap = min(cutoff, 10)
    ok = True
    for x in enumerate_by_length(0, cap):
        for i in (0, 1):
            prod = mul_hecke(HeckeElt("C", {x: ONE}),
                             HeckeElt("C", {WeylElt(i, 1): ONE}))
            for z in enumerate_by_length(0, cap + 1):
                if prod.coeff(z) != h_simple_closed_form(x, i, z):
                    ok = False
    return [Check("hecke/simple-product-closed-form", ok, f"l(x) <= {cap}")]


_SUITE_FUNCS = {
    "images": _suite_images,
    "expansion-signs": _suite_expansion_signs,
    "gamma": _suite_gamma,
    "plane": _suite_plane,
}


def run_suite(suite: str, cutoff: int, precision: int) -> list[Check]:
    if suite == "all":
        out: list[Check] = []
        out.extend(_suite_hecke_small(cutoff, precision))
        for name in ("images", "expansion-signs", "gamma", "plane"):
            out.extend(_SUITE_FUNCS[name](cutoff, precision))
        return out
    if suite not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {suite!r}")
    return _SUITE_FUNCS[suite](cutoff, precision)
