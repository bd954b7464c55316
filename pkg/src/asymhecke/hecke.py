"""
The Hecke algebra of the infinite dihedral group over Z[v, v^-1].

Three bases are supported: the standard basis T_w, and the two canonical
bases C_w and C'_w.  Every Kazhdan-Lusztig polynomial in this rank is the
constant 1, which collapses the basis-change matrices to signed powers of v:

    coefficient of T_y in C_w   is (-1)^(l(w)-l(y)) * v^(l(w) - 2 l(y)),
    coefficient of T_y in C'_w  is v^(-l(w)),
    coefficient of C'_y in T_w  is (-1)^(l(w)-l(y)) * v^(l(y)),
    coefficient of C_y in T_w   is v^(2 l(w) - l(y)),

each summed over y <= w in Bruhat order.

The T-basis product is generated by T_w T_s = T_(ws) when the length grows
and T_w T_s = (q-1) T_w + q T_(ws) when it shrinks; the latter is forced by
the quadratic relation (T_s + 1)(T_s - q) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .coeffring import GAUSS, Laurent, ONE, ZERO, q_power, v_power
from .weyl import (
    IDENTITY, WeylElt, bruhat_leq, enumerate_by_length,
    right_descent, simple_product, word,
)

__all__ = [
    "HeckeElt", "BASES",
    "t_basis", "c_basis", "cprime_basis", "unit",
    "convert_basis", "mul_hecke", "j_involution",
    "h_const", "h_simple_closed_form", "mu_joined", "a_function", "a_function_oracle",
]

BASES = ("T", "C", "Cprime")


@dataclass(frozen=True)
class HeckeElt:
    """A finite Z[v,v^-1]-combination of basis symbols in a named basis."""

    basis: str
    coeffs: Mapping[WeylElt, Laurent]

    def __post_init__(self) -> None:
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        clean = {w: c for w, c in self.coeffs.items() if not c.is_zero()}
        object.__setattr__(self, "coeffs", clean)

    def coeff(self, w: WeylElt) -> Laurent:
        return self.coeffs.get(w, ZERO)

    def support(self) -> list[WeylElt]:
        return sorted(self.coeffs, key=lambda w: (w.length, w.first))

    def max_length(self) -> int:
        return max((w.length for w in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        if other.basis != self.basis:
            raise ValueError("cannot add elements in different bases; convert first")
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, ZERO) + c
        return HeckeElt(self.basis, out)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + other.scale(Laurent({0: -1}))

    def scale(self, factor: Laurent) -> "HeckeElt":
        return HeckeElt(self.basis, {w: c * factor for w, c in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HeckeElt):
            return self.basis == other.basis and dict(self.coeffs) == dict(other.coeffs)
        return NotImplemented

    def to_json(self) -> dict[str, object]:
        return {
            "basis": self.basis,
            "terms": [{"w": word(w), "coeff": self.coeff(w).to_json()}
                      for w in self.support()],
        }


def _single(basis: str, w: WeylElt, coeff: Laurent = ONE) -> HeckeElt:
    return HeckeElt(basis, {w: coeff})


def t_basis(w: WeylElt) -> HeckeElt:
    return _single("T", w)


def c_basis(w: WeylElt) -> HeckeElt:
    return _single("C", w)


def cprime_basis(w: WeylElt) -> HeckeElt:
    return _single("Cprime", w)


def unit() -> HeckeElt:
    return t_basis(IDENTITY)


# -- basis change ----------------------------------------------------------

def _t_coeff_in_c(w: WeylElt, y: WeylElt) -> Laurent:
    sign = -1 if (w.length - y.length) % 2 else 1
    return Laurent({w.length - 2 * y.length: sign})


def _t_coeff_in_cprime(w: WeylElt, y: WeylElt) -> Laurent:
    del y
    return v_power(-w.length)


def _cprime_coeff_in_t(w: WeylElt, y: WeylElt) -> Laurent:
    sign = -1 if (w.length - y.length) % 2 else 1
    return Laurent({y.length: sign})


def _c_coeff_in_t(w: WeylElt, y: WeylElt) -> Laurent:
    return v_power(2 * w.length - y.length)


_EXPANSIONS: dict[tuple[str, str], Callable[[WeylElt, WeylElt], Laurent]] = {
    ("C", "T"): _t_coeff_in_c,
    ("Cprime", "T"): _t_coeff_in_cprime,
    ("T", "Cprime"): _cprime_coeff_in_t,
    ("T", "C"): _c_coeff_in_t,
}


def _lower_interval(w: WeylElt) -> Iterable[WeylElt]:
    return (y for y in enumerate_by_length(0, w.length) if bruhat_leq(y, w))


def _convert_step(h: HeckeElt, target: str) -> HeckeElt:
    rule = _EXPANSIONS[(h.basis, target)]
    out: dict[WeylElt, Laurent] = {}
    for w, c in h.coeffs.items():
        for y in _lower_interval(w):
            out[y] = out.get(y, ZERO) + c * rule(w, y)
    return HeckeElt(target, out)


def convert_basis(h: HeckeElt, target: str) -> HeckeElt:
    """Re-express the same algebra element in another basis, exactly."""
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if h.basis == target:
        return h
    if (h.basis, target) in _EXPANSIONS:
        return _convert_step(h, target)
    # C <-> Cprime goes through T.
    return _convert_step(_convert_step(h, "T"), target)


# -- multiplication --------------------------------------------------------

def _t_times_generator(h: HeckeElt, i: int) -> HeckeElt:
    out: dict[WeylElt, Laurent] = {}

    def bump(w: WeylElt, c: Laurent) -> None:
        out[w] = out.get(w, ZERO) + c

    for w, c in h.coeffs.items():
        ws = simple_product(w, i)
        if ws.length > w.length:
            bump(ws, c)
        else:
            bump(w, c * (q_power(1) - ONE))
            bump(ws, c * q_power(1))
    return HeckeElt("T", out)


def mul_hecke(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """
    Product of two elements in any bases; the result is produced in the basis
    of the left factor.
    """
    at = convert_basis(a, "T")
    bt = convert_basis(b, "T")
    total: dict[WeylElt, Laurent] = {}
    for y, cy in bt.coeffs.items():
        partial = at
        for k in range(y.length):
            partial = _t_times_generator(partial, y.letter(k))
        for w, c in partial.coeffs.items():
            total[w] = total.get(w, ZERO) + c * cy
    return convert_basis(HeckeElt("T", total), a.basis)


# -- the j involution ------------------------------------------------------

def j_involution(h: HeckeElt) -> HeckeElt:
    """
    The algebra involution sending sum a_w T_w to
    sum bar(a_w) (-1)^l(w) q^(-l(w)) T_w; on canonical bases it exchanges
    C_w and (-1)^l(w) C'_w.  The result is returned in the input's basis.
    """
    if h.basis == "T":
        out = {}
        for w, c in h.coeffs.items():
            sign = -1 if w.length % 2 else 1
            out[w] = c.bar() * Laurent({-2 * w.length: sign})
        return HeckeElt("T", out)
    if h.basis == "C":
        flipped = HeckeElt("Cprime", {
            w: c.bar() * Laurent({0: -1 if w.length % 2 else 1})
            for w, c in h.coeffs.items()})
        return convert_basis(flipped, "C")
    flipped = HeckeElt("C", {
        w: c.bar() * Laurent({0: -1 if w.length % 2 else 1})
        for w, c in h.coeffs.items()})
    return convert_basis(flipped, "Cprime")


# -- canonical-basis structure constants ------------------------------------

def h_const(x: WeylElt, y: WeylElt, z: WeylElt) -> Laurent:
    """The coefficient of C_z in C_x C_y."""
    return mul_hecke(c_basis(x), c_basis(y)).coeff(z)


def h_simple_closed_form(x: WeylElt, i: int, z: WeylElt) -> Laurent:
    """
    Closed form of h_(x, s_i, z): the simple multiplication rule either
    rescales C_x by -(v + v^-1) or spreads to the adjacent lengths ending
    in s_i.
    """
    if i in right_descent(x):
        return -GAUSS if z == x else ZERO
    if abs(x.length - z.length) == 1 and i in right_descent(z):
        return ONE
    return ZERO


def mu_joined(y: WeylElt, w: WeylElt) -> int:
    """1 exactly when the lengths are adjacent (all KL leading terms are 1)."""
    return 1 if abs(y.length - w.length) == 1 else 0


def a_function(w: WeylElt) -> int:
    """0 at the identity, 1 everywhere else."""
    return 0 if w.is_identity() else 1


def a_function_oracle(w: WeylElt, max_length: int = 6) -> int:
    """
    Derived value: the least a >= 0 such that v^a h_(x,y,w) has no negative
    v-exponents over all x, y up to the stated length.  Agreement with
    a_function is a test, not an assumption.
    """
    worst = 0
    for x in enumerate_by_length(0, max_length):
        for y in enumerate_by_length(0, max_length):
            h = mul_hecke(c_basis(x), c_basis(y)).coeff(w)
            if h.is_zero():
                continue
            worst = max(worst, -min(0, h.min_exponent()))
    return worst
