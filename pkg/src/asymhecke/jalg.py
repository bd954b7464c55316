"""
The asymptotic algebra J for the infinite dihedral Weyl group: the t-basis,
its integer structure constants, the canonical homomorphism phi from the
Hecke algebra, the explicit inverse of its completed extension, and the
resulting standard-basis expansions of every t_w.

Structure constants.  gamma(x, y, z) is the coefficient of v^(a(z)) in the
C'-basis structure constant of C'_x C'_y at z^(-1); products are
t_x t_y = Sigma_z gamma(x, y, z) t_(z^(-1)).  Equivalently, in terms of the
C-basis constants h, gamma is (-1)^(a(z)) times the coefficient of
v^(-a(z)) in h(x, y, z^(-1)); the sign makes t_(s_i) idempotent.

The homomorphism phi sends sum b_x C_x to sum b_x h(x, d, z) t_z over the
three distinguished involutions d with a(d) = a(z), which collapses to a
three-term stencil:

    phi(C_1)     = t_1 + t_(s0) + t_(s1)
    phi(C_(s_i)) = -(v + v^-1) t_(s_i) + t_(s_i s_j)
    phi(C_w)     = -(v + v^-1) t_w + t_(parent w) + t_(extend w),  l(w) >= 2.

Its completed inverse is assembled from weighted cone sums: with
y = s_(i_1) ... s_(i_n) and y_k the length-k prefix,

    phi^-1(t_y) = -v^(-(n-1)) Sigma_k q^(n-k) Sigma_(w starts with y_k) v^l(w) C_w,

and phi^-1(t_1) is the full sum Sigma v^l(w) C_w by the unit relation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .coeffring import (
    GAUSS, Laurent, ONE, TruncSeries, ZERO,
    expand_rational, q_power, v_power,
)
from .completion import (
    CompletedHecke, TailBound, cone_sum, to_c_basis, total_sum,
)
from .hecke import HeckeElt, a_function, convert_basis, mul_hecke
from .weyl import (
    IDENTITY, WeylElt, enumerate_by_length, extend, generator, inverse,
    parent, starts_with, word,
)

__all__ = [
    "JElt", "CompletedJ",
    "gamma", "gamma_table", "j_mul", "j_unit",
    "phi_finite", "phi_via_definition", "phi_completed",
    "phi_inverse", "tw_in_t", "tw_in_t_pipeline", "tw_numerator",
    "tw_coefficient_exact", "tw_in_cprime",
    "ExpansionReport", "ImagesReport", "verify_images", "t_elt",
]


@dataclass(frozen=True)
class JElt:
    """A finite combination of t-basis symbols with Laurent coefficients."""

    coeffs: Mapping[WeylElt, Laurent]

    def __post_init__(self) -> None:
        clean = {w: c for w, c in self.coeffs.items() if not c.is_zero()}
        object.__setattr__(self, "coeffs", clean)

    def coeff(self, w: WeylElt) -> Laurent:
        return self.coeffs.get(w, ZERO)

    def support(self) -> list[WeylElt]:
        return sorted(self.coeffs, key=lambda w: (w.length, w.first))

    def __add__(self, other: "JElt") -> "JElt":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, ZERO) + c
        return JElt(out)

    def scale(self, factor: Laurent) -> "JElt":
        return JElt({w: c * factor for w, c in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, JElt):
            return dict(self.coeffs) == dict(other.coeffs)
        return NotImplemented

    def to_json(self) -> dict[str, object]:
        return {"basis": "t",
                "terms": [{"w": word(w), "coeff": self.coeff(w).to_json()}
                          for w in self.support()]}


def t_elt(w: WeylElt, coeff: Laurent = ONE) -> JElt:
    return JElt({w: coeff})


@dataclass(frozen=True)
class CompletedJ:
    """A truncated window onto the completed asymptotic algebra."""

    coeffs: Mapping[WeylElt, "Laurent | TruncSeries"]
    cutoff: int
    prec: int
    exact_to: int

    def __post_init__(self) -> None:
        clean = {}
        for w, c in self.coeffs.items():
            if isinstance(c, Laurent) and c.is_zero():
                continue
            clean[w] = c
        object.__setattr__(self, "coeffs", clean)

    def coeff(self, w: WeylElt) -> "Laurent | TruncSeries":
        return self.coeffs.get(w, ZERO)

    def support(self) -> list[WeylElt]:
        return sorted(self.coeffs, key=lambda w: (w.length, w.first))

    def to_json(self) -> dict[str, object]:
        return {"basis": "t", "cutoff": self.cutoff, "prec": self.prec,
                "exactTo": self.exact_to,
                "terms": [{"w": word(w), "coeff": self.coeff(w).to_json()}
                          for w in self.support()]}


# -- structure constants ------------------------------------------------------

def gamma(x: WeylElt, y: WeylElt, z: WeylElt) -> int:
    """
    The integer structure constant, read off from the C-basis constant
    h(x, y, z^-1) as (-1)^(a(z)) times its coefficient of v^(-a(z)).
    """
    h = mul_hecke(_c(x), _c(y)).coeff(inverse(z))
    a = a_function(z)
    c = h.coeff(-a)
    return -c if a % 2 else c


def _c(w: WeylElt) -> HeckeElt:
    return HeckeElt("C", {w: ONE})


def gamma_table(max_length: int) -> list[tuple[WeylElt, WeylElt, WeylElt, int]]:
    """All nonzero gamma(x, y, z) with every length <= max_length."""
    out = []
    elems = enumerate_by_length(0, max_length)
    for x in elems:
        for y in elems:
            prod = mul_hecke(_c(x), _c(y))
            for w in prod.support():
                z = inverse(w)
                if z.length > max_length:
                    continue
                gxyz = gamma(x, y, z)
                if gxyz:
                    out.append((x, y, z, gxyz))
    out.sort(key=lambda r: (r[0].length, r[0].first, r[1].length, r[1].first,
                            r[2].length, r[2].first))
    return out


def j_mul(a: JElt, b: JElt) -> JElt:
    """Bilinear product t_x t_y = Sigma gamma(x, y, z) t_(z^-1)."""
    out: dict[WeylElt, Laurent] = {}
    for x, cx in a.coeffs.items():
        for y, cy in b.coeffs.items():
            prod = mul_hecke(_c(x), _c(y))
            scale = cx * cy
            for w in prod.support():
                # w ranges over candidate z^-1; gamma lives at z = w^-1.
                az = a_function(w)
                c = prod.coeff(w).coeff(-az)
                g = -c if az % 2 else c
                if g:
                    out[w] = out.get(w, ZERO) + scale * Laurent({0: g})
    return JElt(out)


def j_unit() -> JElt:
    """t_1 + t_(s0) + t_(s1), the image of the Hecke unit."""
    return JElt({IDENTITY: ONE, generator(0): ONE, generator(1): ONE})


# -- the homomorphism phi -----------------------------------------------------

def _phi_distribute(w: WeylElt, coeff, bump) -> None:
    """Add coeff * phi(C_w) into an accumulator via the three-term stencil."""
    if w.is_identity():
        bump(IDENTITY, coeff)
        bump(generator(0), coeff)
        bump(generator(1), coeff)
        return
    bump(w, coeff * (-GAUSS))
    bump(extend(w), coeff)
    if w.length >= 2:
        bump(parent(w), coeff)


def phi_finite(h: HeckeElt) -> JElt:
    """phi on a finite element; input is converted to the C basis first."""
    hc = convert_basis(h, "C")
    out: dict[WeylElt, Laurent] = {}

    def bump(z: WeylElt, c: Laurent) -> None:
        out[z] = out.get(z, ZERO) + c

    for w, c in hc.coeffs.items():
        _phi_distribute(w, c, bump)
    return JElt(out)


def phi_via_definition(h: HeckeElt, z_cap: int | None = None) -> JElt:
    """
    phi evaluated straight from its defining sum over distinguished
    involutions:  sum over x, z and d in {1, s0, s1} with a(d) = a(z) of
    b_x h(x, d, z) t_z.  Exponentially slower than the stencil; used as the
    independent oracle in tests.
    """
    hc = convert_basis(h, "C")
    if z_cap is None:
        z_cap = hc.max_length() + 1
    out: dict[WeylElt, Laurent] = {}
    dees = [IDENTITY, generator(0), generator(1)]
    for x, b in hc.coeffs.items():
        for d in dees:
            prod = mul_hecke(_c(x), _c(d))
            for z in enumerate_by_length(0, z_cap):
                if a_function(d) != a_function(z):
                    continue
                h_xdz = prod.coeff(z)
                if h_xdz.is_zero():
                    continue
                out[z] = out.get(z, ZERO) + b * h_xdz
    return JElt(out)


def phi_completed(h: CompletedHecke) -> CompletedJ:
    """
    phi applied termwise to a truncated C-basis window.  The stencil reaches
    one length past each term, so certification drops by one length.
    """
    if h.basis != "C":
        raise ValueError("phi_completed expects a C-basis window")
    out: dict[WeylElt, Laurent | TruncSeries] = {}

    def bump(z: WeylElt, c) -> None:
        out[z] = c + out[z] if z in out else c

    for w, c in h.coeffs.items():
        _phi_distribute(w, c, bump)
    exact_to = min(h.exact_to, h.cutoff) - 1
    trimmed = {w: c for w, c in out.items() if w.length <= exact_to}
    return CompletedJ(trimmed, cutoff=exact_to, prec=h.prec, exact_to=exact_to)


# -- the inverse --------------------------------------------------------------

def phi_inverse(y: WeylElt, cutoff: int, prec: int) -> CompletedHecke:
    """
    The preimage of t_y in the completed Hecke algebra, as a window with
    exact coefficients: a q-weighted stack of prefix cones, scaled by
    -v^(-(l(y)-1)).  The identity is handled by the unit relation (the full
    sum over the group).
    """
    if y.is_identity():
        return total_sum(cutoff, prec)
    n = y.length
    acc: CompletedHecke | None = None
    for k in range(1, n + 1):
        y_k = WeylElt(y.first, k)
        piece = cone_sum(y_k, cutoff, prec).scale(q_power(n - k))
        acc = piece if acc is None else acc.add(piece)
    assert acc is not None
    return acc.scale(Laurent({-(n - 1): -1}))


# -- standard-basis expansions of t_w ----------------------------------------

def _cone_case(y: WeylElt, k: int, x: WeylElt) -> tuple[int, int]:
    """
    The per-prefix contribution to the T-coefficient of t_y at x, as
    (sign, q_exponent) for the closed-form numerator over (1 + q):
    cone words get (-1)^l q^(1-l), complement words at length >= k get
    (-1)^(l+1) q^(-l), and short complement words get (-1)^k q^(1-k).
    """
    y_k = WeylElt(y.first, k)
    if starts_with(x, y_k):
        sign = -1 if x.length % 2 else 1
        return sign, 1 - x.length
    if x.length >= k:
        sign = 1 if x.length % 2 else -1
        return sign, -x.length
    sign = -1 if k % 2 else 1
    return sign, 1 - k


def tw_numerator(y: WeylElt, x: WeylElt) -> Laurent:
    """
    (q + 1) times the T-coefficient of t_y at x, an exact Laurent value:
    -v^(l(y)-1) Sigma_k q^(k - l(y)) times the per-prefix monomial.
    """
    if y.is_identity():
        # (phi o j)^-1(t_1) has T-coefficient sum_(w >= x) (-1)^l q^(-l):
        # one term at l(x) plus a doubled alternating tail, which collapses
        # against (q+1) to (-1)^l(x) (q^(1-l(x)) - q^(-l(x))).
        lx = x.length
        sign = -1 if lx % 2 else 1
        return Laurent({2 - 2 * lx: sign, -2 * lx: -sign})
    n = y.length
    total = ZERO
    for k in range(1, n + 1):
        sign, q_exp = _cone_case(y, k, x)
        total = total + Laurent({2 * (k - n) + 2 * q_exp: sign})
    return total * Laurent({n - 1: -1})


def tw_coefficient_exact(y: WeylElt, x: WeylElt, q0: Fraction | int) -> Fraction:
    """
    The T-coefficient of t_y at x, evaluated exactly at a numeric q after
    pulling out the common factor v^(l(y)-1); rational for every x.
    """
    q0 = Fraction(q0)
    num = tw_numerator(y, x) * v_power(-(y.length - 1) if y.length else 0)
    return num.evaluate_q(q0) / (q0 + 1)


def tw_in_t(y: WeylElt, cutoff: int, prec: int) -> CompletedHecke:
    """
    The expansion of t_y over the standard basis, with every coefficient the
    exact numerator times the descending expansion of 1/(1+q).
    """
    inv_unit = expand_rational(ONE, ONE + q_power(1), "desc",
                               -2 * prec - 2 * cutoff - 2 * max(1, y.length))
    out: dict[WeylElt, Laurent | TruncSeries] = {}
    for x in enumerate_by_length(0, cutoff):
        num = tw_numerator(y, x)
        if num.is_zero():
            continue
        out[x] = (inv_unit * num).truncated(-2 * prec)
    return CompletedHecke("T", out, cutoff, prec, exact_to=cutoff,
                          tail=_tw_tail(y))


def _tw_tail(y: WeylElt) -> TailBound:
    # Beyond the cutoff the coefficient of T_x has exponents <= l(y)+1-2l(x)
    # and the 1/(1+q) expansion runs down without a floor.
    hi = y.length + 1
    return TailBound(-(10 ** 9), -2, hi, -2)


def tw_in_t_pipeline(y: WeylElt, cutoff: int, prec: int) -> CompletedHecke:
    """
    Oracle route: push phi^-1(t_y) through the involution and change basis
    to T at truncation.  Agrees with the closed form within certification.
    """
    pre = phi_inverse(y, cutoff, prec)
    from .completion import j_completed  # local import keeps module graph flat
    flipped = j_completed(pre)  # C window -> C' window
    return _cprime_window_to_t(flipped)


def _cprime_window_to_t(h: CompletedHecke) -> CompletedHecke:
    if h.basis != "Cprime":
        raise ValueError("expected a C' window")
    from .completion import _tail_reach_desc
    from .weyl import bruhat_leq
    out: dict[WeylElt, Laurent | TruncSeries] = {}
    for x in enumerate_by_length(0, h.cutoff):
        total: Laurent | TruncSeries = ZERO
        for w, c in h.coeffs.items():
            if not bruhat_leq(x, w):
                continue
            total = total + c * v_power(-w.length)
        floor = _tail_reach_desc(h, 0, -1)
        if floor is not None:
            if isinstance(total, Laurent):
                total = TruncSeries.from_laurent(total, "desc", floor)
            else:
                total = total.truncated(floor)
        out[x] = total
    return CompletedHecke("T", out, h.cutoff, h.prec,
                          min(h.exact_to, h.cutoff - 1), tail=None)


@dataclass(frozen=True)
class ExpansionReport:
    """Per-coefficient verdicts for the canonical-basis expansion of t_y."""

    y: WeylElt
    entries: list[tuple[WeylElt, Laurent, bool, bool]] = field(default_factory=list)

    @property
    def all_polynomial(self) -> bool:
        return all(p for _, _, p, _ in self.entries)

    @property
    def all_signs_ok(self) -> bool:
        return all(s for _, _, _, s in self.entries)


def tw_in_cprime(y: WeylElt, cutoff: int) -> tuple[CompletedHecke, ExpansionReport]:
    """
    The expansion of t_y over the canonical basis C'.  Coefficients are exact
    Laurent values; the report records, per basis element, whether the
    coefficient is a polynomial in q^(-1/2) and whether (-1)^l(x) times it
    has nonpositive coefficients.
    """
    pre = phi_inverse(y, cutoff, max(4, cutoff))
    from .completion import j_completed
    window = j_completed(pre)
    report = ExpansionReport(y=y, entries=[])
    for x in window.support():
        a_yx = window.coeff(x)
        assert isinstance(a_yx, Laurent)
        is_poly = a_yx.is_zero() or a_yx.max_exponent() <= 0
        sign = -1 if x.length % 2 else 1
        signed = a_yx * sign
        signs_ok = all(c <= 0 for c in signed.terms.values())
        report.entries.append((x, a_yx, is_poly, signs_ok))
    return window, report


# -- machine checks of the two image identities -------------------------------

@dataclass(frozen=True)
class ImagesReport:
    cutoff: int
    prec: int
    g_image_ok: bool
    f_tilde_image_ok: bool
    others_vanish: bool
    f_consistency_ok: bool
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.g_image_ok and self.f_tilde_image_ok
                and self.others_vanish and self.f_consistency_ok)


def verify_images(cutoff: int, prec: int) -> ImagesReport:
    """
    Push the alternating series g and the comparison function f-tilde through
    j, the basis change into the canonical window, and phi, then compare with
    their closed-form images:

        phi(j(g))       = (1 + 2q/(1-q)) t_1
        phi(j(f-tilde)) = (v + v^-1) t_(s0 s1) - (q + 1) t_(s0)

    with every other t-coefficient vanishing within certification.
    """
    from .completion import build_f, build_f_tilde, build_g, j_completed
    details: list[str] = []

    g_window = to_c_basis(j_completed(build_g(cutoff, prec)))
    g_image = phi_completed(g_window)
    unit_asc = expand_rational(ONE + q_power(1), ONE - q_power(1), "asc", 2 * prec)

    def matches(got, want) -> bool:
        if isinstance(got, Laurent):
            if isinstance(want, Laurent):
                return got == want
            return want.agrees_with(got, through=want.prec)
        through = want.prec if isinstance(want, TruncSeries) else None
        if through is None:
            return got.agrees_with(want, through=got.prec)
        if got.direction == "asc":
            through = min(got.prec, through)
        else:
            through = max(got.prec, through)
        return got.agrees_with(want, through=through)

    g_ok = matches(g_image.coeff(IDENTITY), unit_asc)
    details.append(f"phi(j(g)) at t_1 {'matches' if g_ok else 'differs from'} 1 + 2q/(1-q)")

    ft_window = to_c_basis(j_completed(build_f_tilde(cutoff, prec)))
    ft_image = phi_completed(ft_window)
    want_s0s1 = GAUSS
    want_s0 = -(q_power(1) + ONE)
    ft_ok = (matches(ft_image.coeff(WeylElt(0, 2)), want_s0s1)
             and matches(ft_image.coeff(WeylElt(0, 1)), want_s0))
    details.append("phi(j(f~)) two-term form "
                   + ("matches" if ft_ok else "differs"))

    others = True
    for z in enumerate_by_length(0, min(g_image.exact_to, ft_image.exact_to)):
        for image, keep in ((g_image, (IDENTITY,)),
                            (ft_image, (WeylElt(0, 2), WeylElt(0, 1)))):
            if z in keep:
                continue
            c = image.coeff(z)
            if isinstance(c, Laurent):
                ok = c.is_zero()
            else:
                ok = c.is_zero_within_precision()
            if not ok:
                others = False
                details.append(f"unexpected t-coefficient at {word(z)!r}: {c!r}")

    # f = f~ + T_1 + T_(s0), so the images must differ by phi(j(T_1 + T_(s0))).
    f_window = to_c_basis(j_completed(build_f(cutoff, prec)))
    f_image = phi_completed(f_window)
    shim = phi_finite(_j_of_short_terms())
    f_ok = True
    for z in enumerate_by_length(0, f_image.exact_to):
        got = f_image.coeff(z)
        want_l = shim.coeff(z)
        if z == WeylElt(0, 2):
            want = want_l + want_s0s1
        elif z == WeylElt(0, 1):
            want = want_l + want_s0
        else:
            want = want_l
        if not matches(got, want):
            f_ok = False
            details.append(f"phi(j(f)) mismatch at {word(z)!r}")
    return ImagesReport(cutoff, prec, g_ok, ft_ok, others, f_ok, details)


def _j_of_short_terms() -> HeckeElt:
    """j(T_1 + T_(s0)) as an exact element."""
    from .hecke import j_involution
    from .weyl import S0
    return j_involution(HeckeElt("T", {IDENTITY: ONE, S0: ONE}))
