"""
Truncated windows onto the completed Hecke algebra.

An infinite sum like g = Sigma (-1)^l(w) q^(-l(w)) T_w is represented by its
restriction to lengths <= cutoff, together with bookkeeping that makes the
truncation honest:

  * every stored coefficient may be exact (Laurent) or itself truncated
    (TruncSeries with a declared reliable range);
  * ``exact_to`` records the largest length through which the stored
    coefficients are guaranteed to agree with the infinite object;
  * ``tail`` optionally bounds the v-exponents of the *unstored* coefficients
    (affine in the length), which is what lets a basis change at finite
    cutoff certify a concrete series precision for its output.

Elements with tail=None are genuinely finite, and basis changes on them are
exact.  The C side completes in ascending powers of v, the T and C' sides in
descending powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .coeffring import Laurent, ONE, TruncSeries, ZERO, expand_rational, q_power, v_power
from .hecke import HeckeElt
from .weyl import IDENTITY, S0, WeylElt, bruhat_leq, cone, enumerate_by_length

__all__ = [
    "CompletedHecke", "TailBound", "direction_for_basis",
    "truncate", "cone_sum", "total_sum",
    "build_g", "build_f_tilde", "build_f",
    "rewrite_in_cprime", "to_c_basis", "j_completed",
    "g_cprime_coefficient", "f_tilde_cprime_coefficient",
]


def direction_for_basis(basis: str) -> str:
    return "asc" if basis == "C" else "desc"


@dataclass(frozen=True)
class TailBound:
    """
    For every length m beyond the cutoff, the true coefficient at length m
    has all v-exponents inside [lo_a + lo_b * m, hi_a + hi_b * m].
    """

    lo_a: int
    lo_b: int
    hi_a: int
    hi_b: int

    def lo(self, m: int) -> int:
        return self.lo_a + self.lo_b * m

    def hi(self, m: int) -> int:
        return self.hi_a + self.hi_b * m

    def shifted(self, low: int, high: int) -> "TailBound":
        return TailBound(self.lo_a + low, self.lo_b, self.hi_a + high, self.hi_b)

    def barred(self, length_twist: int = 0) -> "TailBound":
        """Exponent map e -> -e + length_twist * m under the bar involution."""
        return TailBound(-self.hi_a, -self.hi_b + length_twist,
                         -self.lo_a, -self.lo_b + length_twist)


@dataclass(frozen=True)
class CompletedHecke:
    basis: str
    coeffs: Mapping[WeylElt, "Laurent | TruncSeries"]
    cutoff: int
    prec: int
    exact_to: int
    tail: TailBound | None = None

    def __post_init__(self) -> None:
        clean = {}
        for w, c in self.coeffs.items():
            if w.length > self.cutoff:
                raise ValueError(f"support at length {w.length} beyond cutoff {self.cutoff}")
            if isinstance(c, Laurent) and c.is_zero():
                continue
            # Zero-within-precision series are kept: they certify a zero.
            clean[w] = c
        object.__setattr__(self, "coeffs", clean)

    @property
    def direction(self) -> str:
        return direction_for_basis(self.basis)

    def coeff(self, w: WeylElt) -> "Laurent | TruncSeries":
        return self.coeffs.get(w, ZERO)

    def support(self) -> list[WeylElt]:
        return sorted(self.coeffs, key=lambda w: (w.length, w.first))

    def scale(self, factor: Laurent) -> "CompletedHecke":
        if factor.is_zero():
            return CompletedHecke(self.basis, {}, self.cutoff, self.prec,
                                  self.exact_to, self.tail)
        tail = self.tail.shifted(factor.min_exponent(), factor.max_exponent()) \
            if self.tail else None
        return CompletedHecke(
            self.basis, {w: c * factor for w, c in self.coeffs.items()},
            self.cutoff, self.prec, self.exact_to, tail)

    def add(self, other: "CompletedHecke") -> "CompletedHecke":
        if other.basis != self.basis:
            raise ValueError("basis mismatch")
        out: dict[WeylElt, Laurent | TruncSeries] = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = c + out[w] if w in out else c
        tail = _merge_tails(self.tail, other.tail)
        return CompletedHecke(self.basis, out,
                              min(self.cutoff, other.cutoff), min(self.prec, other.prec),
                              min(self.exact_to, other.exact_to), tail)

    def add_exact(self, finite: HeckeElt) -> "CompletedHecke":
        """Add a finite exact element (whose support must fit the cutoff)."""
        if finite.basis != self.basis:
            raise ValueError("basis mismatch")
        out: dict[WeylElt, Laurent | TruncSeries] = dict(self.coeffs)
        for w, c in finite.coeffs.items():
            out[w] = c + out[w] if w in out else c
        return CompletedHecke(self.basis, out, self.cutoff, self.prec,
                              self.exact_to, self.tail)

    def to_json(self) -> dict[str, object]:
        from .weyl import word
        return {
            "basis": self.basis,
            "cutoff": self.cutoff,
            "prec": self.prec,
            "exactTo": self.exact_to,
            "terms": [{"w": word(w), "coeff": self.coeff(w).to_json()}
                      for w in self.support()],
        }


def _merge_tails(a: TailBound | None, b: TailBound | None) -> TailBound | None:
    if a is None:
        return b
    if b is None:
        return a
    # Conservative hull; affine in m only if slopes agree, else widen offsets
    # at slope extremes.  All in-repo tails share slopes, so keep it simple.
    if (a.lo_b, a.hi_b) != (b.lo_b, b.hi_b):
        raise ValueError("cannot merge tail bounds with different slopes")
    return TailBound(min(a.lo_a, b.lo_a), a.lo_b, max(a.hi_a, b.hi_a), a.hi_b)


# -- constructors ------------------------------------------------------------

def truncate(h: "HeckeElt | CompletedHecke", cutoff: int, prec: int) -> CompletedHecke:
    """
    Restrict to lengths <= cutoff and weaken series coefficients to the given
    order.  Exact coefficients stay exact (they are known at every order);
    the operation is idempotent.
    """
    if isinstance(h, HeckeElt):
        coeffs = {w: c for w, c in h.coeffs.items() if w.length <= cutoff}
        return CompletedHecke(h.basis, coeffs, cutoff, prec,
                              exact_to=cutoff, tail=None)
    direction = h.direction
    floor = prec if direction == "asc" else -prec
    out: dict[WeylElt, Laurent | TruncSeries] = {}
    for w, c in h.coeffs.items():
        if w.length > cutoff:
            continue
        if isinstance(c, TruncSeries):
            out[w] = c.truncated(floor)
        else:
            out[w] = c
    return CompletedHecke(h.basis, out, min(cutoff, h.cutoff), min(prec, h.prec),
                          min(h.exact_to, cutoff), h.tail)


def cone_sum(y: WeylElt, cutoff: int, prec: int) -> CompletedHecke:
    """
    Sigma over w starting with y of v^l(w) C_w, restricted to the cutoff.
    The building block of the inverse of the canonical isomorphism.
    """
    if y.is_identity():
        raise ValueError("identity cone is ambiguous; use total_sum")
    coeffs = {w: v_power(w.length) for w in cone(y, cutoff)}
    return CompletedHecke("C", coeffs, cutoff, prec, exact_to=cutoff,
                          tail=TailBound(0, 1, 0, 1))


def total_sum(cutoff: int, prec: int) -> CompletedHecke:
    """Sigma over all w of v^l(w) C_w (the preimage of t_1)."""
    coeffs = {w: v_power(w.length) for w in enumerate_by_length(0, cutoff)}
    return CompletedHecke("C", coeffs, cutoff, prec, exact_to=cutoff,
                          tail=TailBound(0, 1, 0, 1))


def build_g(cutoff: int, prec: int) -> CompletedHecke:
    """The alternating series Sigma (-1)^l(w) q^(-l(w)) T_w."""
    coeffs = {}
    for w in enumerate_by_length(0, cutoff):
        sign = -1 if w.length % 2 else 1
        coeffs[w] = Laurent({-2 * w.length: sign})
    return CompletedHecke("T", coeffs, cutoff, prec, exact_to=cutoff,
                          tail=TailBound(0, -2, 0, -2))


def build_f_tilde(cutoff: int, prec: int) -> CompletedHecke:
    """
    The depth-zero spherical-vs-Iwahori comparison function with its two
    short standard-basis terms removed, in the T basis.

    Coefficients: q^(-2k) on the words of length 2k and 2k+1 beginning with
    s1, -q^(-2k+1) on the even words beginning with s0, -q^(-2k-1) on the odd
    words beginning and ending with s1, and -q^(-1) on each of T_1, T_(s0),
    T_(s1).  This is exactly the element whose canonical-basis rewrite is
    supported on the cone over s0 s1 (see rewrite tests); the two odd
    families and the three short terms repair misprints in the source
    display, which is not self-consistent.
    """
    coeffs: dict[WeylElt, Laurent] = {}
    minus_q_inv = Laurent({-2: -1})
    for w in enumerate_by_length(0, min(1, cutoff)):
        coeffs[w] = minus_q_inv
    k = 1
    while 2 * k <= cutoff:
        m_even, m_odd = 2 * k, 2 * k + 1
        coeffs[WeylElt(1, m_even)] = q_power(-2 * k)          # (s1 s0)^k
        coeffs[WeylElt(0, m_even)] = Laurent({-4 * k + 2: -1})  # (s0 s1)^k
        if m_odd <= cutoff:
            coeffs[WeylElt(0, m_odd)] = q_power(-2 * k)       # s0 (s1 s0)^k
            coeffs[WeylElt(1, m_odd)] = Laurent({-4 * k - 2: -1})  # s1 (s0 s1)^k
        k += 1
    return CompletedHecke("T", coeffs, cutoff, prec, exact_to=cutoff,
                          tail=TailBound(0, -2, 2, -2))


def build_f(cutoff: int, prec: int) -> CompletedHecke:
    """The full comparison function: the tilde variant plus T_1 + T_(s0)."""
    base = build_f_tilde(cutoff, prec)
    extra = HeckeElt("T", {IDENTITY: ONE, S0: ONE})
    return base.add_exact(extra)


# -- reference coefficients for the rewrites --------------------------------

def g_cprime_coefficient(w: WeylElt, prec: int) -> TruncSeries:
    """
    (-1)^l(w) q^(-l(w)/2) (1 + 2 q^-1 + 2 q^-2 + ...) as a descending series:
    the canonical-basis coefficient of the alternating series g.
    """
    unit = expand_rational(ONE + q_power(-1), ONE - q_power(-1), "desc",
                           -2 * prec - w.length)
    sign = -1 if w.length % 2 else 1
    return unit * Laurent({-w.length: sign})


def f_tilde_cprime_coefficient(w: WeylElt) -> Laurent:
    """
    Exact canonical-basis coefficient of the tilde comparison function:
    q^(-n)(-1-q) on the even cone words (s0 s1)^n and
    q^(-n)(q^(1/2)+q^(-1/2)) on the odd ones s0 (s1 s0)^n, zero elsewhere.
    """
    if w.length < 2 or w.first != 0:
        return ZERO
    if w.length % 2 == 0:
        n = w.length // 2
        return Laurent({-2 * n: -1, -2 * n + 2: -1})
    n = (w.length - 1) // 2
    return Laurent({-2 * n + 1: 1, -2 * n - 1: 1})


# -- basis changes at truncation ---------------------------------------------

def _tail_reach_desc(h: CompletedHecke, shift_a: int, shift_b: int) -> int | None:
    """
    Descending precision floor induced by the unstored tail, when the
    length-m tail coefficient lands with an exponent shift of
    shift_a + shift_b * m.  None means the output is exact (no tail).
    """
    if h.tail is None:
        return None
    if h.tail.hi_b + shift_b >= 0:
        raise ValueError("tail does not decay in this conversion; cannot certify")
    m = h.cutoff + 1
    return h.tail.hi(m) + shift_a + shift_b * m + 1


def _tail_reach_asc(h: CompletedHecke, shift_a: int, shift_b: int) -> int | None:
    if h.tail is None:
        return None
    if h.tail.lo_b + shift_b <= 0:
        raise ValueError("tail does not decay in this conversion; cannot certify")
    m = h.cutoff + 1
    return h.tail.lo(m) + shift_a + shift_b * m - 1


def rewrite_in_cprime(h: CompletedHecke) -> CompletedHecke:
    """
    Change a truncated T-basis element into the C' basis.  The sum over the
    window is exact; the unstored tail shrinks the certified series order of
    each output coefficient (recorded per coefficient), and the certified
    length range drops by one.
    """
    if h.basis != "T":
        raise ValueError("rewrite_in_cprime expects a T-basis element")
    out: dict[WeylElt, Laurent | TruncSeries] = {}
    for x in enumerate_by_length(0, h.cutoff):
        total: Laurent | TruncSeries = ZERO
        for w, c in h.coeffs.items():
            if not bruhat_leq(x, w):
                continue
            sign = -1 if (w.length - x.length) % 2 else 1
            total = total + c * Laurent({x.length: sign})
        floor = _tail_reach_desc(h, x.length, 0)
        if floor is not None:
            if isinstance(total, Laurent):
                total = TruncSeries.from_laurent(total, "desc", floor)
            else:
                total = total.truncated(floor)
        if isinstance(total, Laurent) and total.is_zero():
            continue
        out[x] = total
    return CompletedHecke("Cprime", out, h.cutoff, h.prec,
                          min(h.exact_to, h.cutoff - 1), tail=None)


def to_c_basis(h: CompletedHecke) -> CompletedHecke:
    """
    Change a truncated T-basis element into the C basis (ascending side),
    with the same per-coefficient certification discipline.
    """
    if h.basis != "T":
        raise ValueError("to_c_basis expects a T-basis element")
    out: dict[WeylElt, Laurent | TruncSeries] = {}
    for x in enumerate_by_length(0, h.cutoff):
        total: Laurent | TruncSeries = ZERO
        for w, c in h.coeffs.items():
            if not bruhat_leq(x, w):
                continue
            total = total + c * v_power(2 * w.length - x.length)
        ceil = _tail_reach_asc(h, -x.length, 2)
        if ceil is not None:
            if isinstance(total, Laurent):
                total = TruncSeries.from_laurent(total, "asc", ceil)
            else:
                total = total.truncated(ceil)
        if isinstance(total, Laurent) and total.is_zero():
            continue
        out[x] = total
    return CompletedHecke("C", out, h.cutoff, h.prec,
                          min(h.exact_to, h.cutoff - 1), tail=None)


def j_completed(h: CompletedHecke) -> CompletedHecke:
    """
    The involution applied termwise.  On the T basis it rescales each
    coefficient; on the canonical bases it exchanges C and C' windows.
    """
    if h.basis == "T":
        out: dict[WeylElt, Laurent | TruncSeries] = {}
        for w, c in h.coeffs.items():
            sign = -1 if w.length % 2 else 1
            factor = Laurent({-2 * w.length: sign})
            barred = c.bar()
            out[w] = barred * factor
        tail = h.tail.barred(length_twist=-2) if h.tail else None
        return CompletedHecke("T", out, h.cutoff, h.prec, h.exact_to, tail)
    source_is_c = h.basis == "C"
    target = "Cprime" if source_is_c else "C"
    out = {}
    for w, c in h.coeffs.items():
        sign = -1 if w.length % 2 else 1
        out[w] = c.bar() * Laurent({0: sign})
    tail = h.tail.barred() if h.tail else None
    return CompletedHecke(target, out, h.cutoff, h.prec, h.exact_to, tail)
