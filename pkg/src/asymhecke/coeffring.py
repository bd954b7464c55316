"""
Exact coefficient arithmetic in the ring Z[v, v^-1] with v = q^(1/2), and in
its two one-sided completions (formal series in v and in v^-1).

Exponents always count powers of v, so the exponent 2 means q and -1 means
q^(-1/2).  Keeping everything in integer v-exponents turns every half-integer
power of q appearing in the Kazhdan-Lusztig story into plain bookkeeping.

>>> (V + V**-1) * (V - V**-1)
Laurent({-2: -1, 2: 1})
>>> q_power(1) + 2*ONE + q_power(-1) == (V + V**-1)**2
True
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Laurent", "TruncSeries", "PrecisionError",
    "ZERO", "ONE", "V", "GAUSS",
    "v_power", "q_power", "expand_rational",
]


class PrecisionError(Exception):
    """A truncated-series value was interrogated beyond its reliable range."""


def _normalized(terms: Mapping[int, int]) -> dict[int, int]:
    return {e: c for e, c in terms.items() if c != 0}


class Laurent:
    """
    An exact Laurent polynomial in v over the integers.

    Immutable; all arithmetic returns fresh values, so instances are safe to
    share between threads.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        object.__setattr__(self, "_terms", _normalized(terms or {}))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Laurent values are immutable")

    # -- inspection ------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        """Exponent -> nonzero coefficient, as a defensive copy."""
        return dict(self._terms)

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self) -> int:
        """Valuation; raises on zero."""
        if not self._terms:
            raise ValueError("zero polynomial has no valuation")
        return min(self._terms)

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    def support(self) -> Iterator[int]:
        return iter(sorted(self._terms))

    # -- ring structure --------------------------------------------------

    def __add__(self, other: "Laurent") -> "Laurent":
        if not isinstance(other, Laurent):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            return Laurent({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, Laurent):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return Laurent(out)

    def __rmul__(self, other: int) -> "Laurent":
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return Laurent({e * n: c if n % 2 else 1})
            raise ValueError("negative powers only defined for unit monomials")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def shift(self, exponent: int) -> "Laurent":
        """Multiply by v**exponent."""
        return Laurent({e + exponent: c for e, c in self._terms.items()})

    def bar(self) -> "Laurent":
        """The involution v -> v^-1 (exponent negation)."""
        return Laurent({-e: c for e, c in self._terms.items()})

    # -- comparisons and hashing -----------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Laurent):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def __repr__(self) -> str:
        return f"Laurent({{{', '.join(f'{e}: {c}' for e, c in sorted(self._terms.items()))}}})"

    # -- evaluation and rendering ----------------------------------------

    def evaluate_q(self, q0: Fraction | int) -> Fraction:
        """
        Evaluate at a rational value of q.  Only defined when every exponent
        is even (an honest Laurent polynomial in q).
        """
        q0 = Fraction(q0)
        total = Fraction(0)
        for e, c in self._terms.items():
            if e % 2:
                raise ValueError("odd v-exponent; value is not rational in q")
            total += c * q0 ** (e // 2)
        return total

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._terms.items())}

    @staticmethod
    def from_json(obj: Mapping[str, int]) -> "Laurent":
        return Laurent({int(e): int(c) for e, c in obj.items()})

    def pretty(self) -> str:
        """Human-readable rendering with q-powers, e.g. ``-q^-1 + 2``."""
        if not self._terms:
            return "0"
        bits = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            mono = _q_monomial(e)
            if mono == "1":
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            bits.append((sign, body))
        head_sign, head = bits[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in bits[1:]:
            text += f" {sign} {body}"
        return text


def _q_monomial(v_exponent: int) -> str:
    if v_exponent == 0:
        return "1"
    num, rem = divmod(v_exponent, 2)
    if rem == 0:
        return "q" if num == 1 else f"q^{num}"
    return f"q^{Fraction(v_exponent, 2)}"


ZERO = Laurent()
ONE = Laurent({0: 1})
V = Laurent({1: 1})
# v + v^-1, the ubiquitous simple-reflection eigenvalue
GAUSS = Laurent({1: 1, -1: 1})


def v_power(exponent: int) -> Laurent:
    return Laurent({exponent: 1})


def q_power(exponent: int) -> Laurent:
    """q**exponent as a Laurent value in v (exponent doubling)."""
    return Laurent({2 * exponent: 1})


class TruncSeries:
    """
    A truncated Laurent series in v with an explicit reliable range.

    direction 'asc': a series in ascending powers of v; every exponent <= prec
    is known and everything strictly above prec is unknown.  direction 'desc':
    the mirror image, known for exponents >= prec.

    Arithmetic propagates the reliable range pessimistically, and any
    interrogation beyond it raises PrecisionError rather than silently
    reporting a zero.
    """

    __slots__ = ("direction", "prec", "_terms")

    def __init__(self, direction: str, prec: int, terms: Mapping[int, int] | None = None):
        if direction not in ("asc", "desc"):
            raise ValueError(f"bad direction {direction!r}")
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "prec", prec)
        kept = {}
        for e, c in (terms or {}).items():
            if c == 0:
                continue
            if (direction == "asc" and e > prec) or (direction == "desc" and e < prec):
                continue  # beyond the reliable range: drop, do not pretend to know
            kept[e] = c
        object.__setattr__(self, "_terms", kept)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("TruncSeries values are immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_laurent(p: Laurent, direction: str, prec: int) -> "TruncSeries":
        return TruncSeries(direction, prec, p.terms)

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, exponent: int) -> int:
        if self.direction == "asc" and exponent > self.prec:
            raise PrecisionError(f"exponent {exponent} beyond ascending precision {self.prec}")
        if self.direction == "desc" and exponent < self.prec:
            raise PrecisionError(f"exponent {exponent} beyond descending precision {self.prec}")
        return self._terms.get(exponent, 0)

    def known_part(self) -> Laurent:
        return Laurent(self._terms)

    def is_zero_within_precision(self) -> bool:
        return not self._terms

    def _valuation_bound(self) -> int:
        # Order of the leading known term, used for product precision; if the
        # known part vanishes the series could start anywhere past prec.
        if self.direction == "asc":
            return min(self._terms) if self._terms else self.prec + 1
        return max(self._terms) if self._terms else self.prec - 1

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other: "TruncSeries | Laurent | int") -> "TruncSeries":
        if isinstance(other, int):
            other = Laurent({0: other})
        if isinstance(other, Laurent):
            return TruncSeries.from_laurent(other, self.direction, self.prec)
        if other.direction != self.direction:
            raise ValueError("cannot mix ascending and descending series")
        return other

    def __add__(self, other: "TruncSeries | Laurent | int") -> "TruncSeries":
        o = self._coerce(other)
        prec = min(self.prec, o.prec) if self.direction == "asc" else max(self.prec, o.prec)
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out.get(e, 0) + c
        return TruncSeries(self.direction, prec, out)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.direction, self.prec, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "TruncSeries | Laurent | int") -> "TruncSeries":
        return self + (-self._coerce(other))

    def __mul__(self, other: "TruncSeries | Laurent | int") -> "TruncSeries":
        if isinstance(other, int):
            return TruncSeries(self.direction, self.prec,
                               {e: c * other for e, c in self._terms.items()})
        if isinstance(other, Laurent):
            # Exact multiplier: reliable range shifts by its extreme exponent.
            if other.is_zero():
                # Annihilates the known part; the unknown tail shifts away too,
                # so keep the current precision.
                return TruncSeries(self.direction, self.prec, {})
            shift = other.min_exponent() if self.direction == "asc" else other.max_exponent()
            prod = self.known_part() * other
            return TruncSeries(self.direction, self.prec + shift, prod.terms)
        o = self._coerce(other)
        v1, v2 = self._valuation_bound(), o._valuation_bound()
        if self.direction == "asc":
            prec = min(self.prec + v2, o.prec + v1)
        else:
            prec = max(self.prec + v2, o.prec + v1)
        prod = self.known_part() * o.known_part()
        return TruncSeries(self.direction, prec, prod.terms)

    __rmul__ = __mul__

    def bar(self) -> "TruncSeries":
        """v -> v^-1; flips the completion direction."""
        flipped = "desc" if self.direction == "asc" else "asc"
        return TruncSeries(flipped, -self.prec, {-e: c for e, c in self._terms.items()})

    def truncated(self, prec: int) -> "TruncSeries":
        """Weaken to a coarser precision (never strengthens)."""
        if self.direction == "asc":
            prec = min(prec, self.prec)
        else:
            prec = max(prec, self.prec)
        return TruncSeries(self.direction, prec, self._terms)

    # -- comparisons -------------------------------------------------------

    def agrees_with(self, other: "TruncSeries | Laurent", *, through: int) -> bool:
        """
        Compare coefficient-by-coefficient through the stated exponent
        (inclusive), raising PrecisionError if either side cannot certify
        that far.
        """
        o = self._coerce(other)
        if self.direction == "asc":
            if through > self.prec or through > o.prec:
                raise PrecisionError(
                    f"asked through exponent {through}, known only to "
                    f"{min(self.prec, o.prec)}")
            rng = [e for e in set(self._terms) | set(o._terms) if e <= through]
        else:
            if through < self.prec or through < o.prec:
                raise PrecisionError(
                    f"asked through exponent {through}, known only to "
                    f"{max(self.prec, o.prec)}")
            rng = [e for e in set(self._terms) | set(o._terms) if e >= through]
        return all(self._terms.get(e, 0) == o._terms.get(e, 0) for e in rng)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TruncSeries):
            return (self.direction == other.direction and self.prec == other.prec
                    and self._terms == other._terms)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.direction, self.prec, tuple(sorted(self._terms.items()))))

    def __repr__(self) -> str:
        inner = ", ".join(f"{e}: {c}" for e, c in sorted(self._terms.items()))
        return f"TruncSeries({self.direction!r}, prec={self.prec}, {{{inner}}})"

    def to_json(self) -> dict[str, object]:
        out: dict[str, object] = {str(e): c for e, c in sorted(self._terms.items())}
        out["dir"] = self.direction
        out["prec"] = self.prec
        return out


def expand_rational(num: Laurent, den: Laurent, direction: str, prec: int) -> TruncSeries:
    """
    Expand num/den as a truncated series in the given direction.

    The denominator must have a +-1 leading coefficient on the side being
    expanded, so that the quotient stays over the integers; prefactors like
    (1+q^-1)/(1-q^-1) and q/(1+q) are the intended clients.

    >>> expand_rational(q_power(1), q_power(1) + ONE, "desc", -8).terms
    {0: 1, -2: -1, -4: 1, -6: -1, -8: 1}
    """
    if den.is_zero():
        raise ZeroDivisionError("denominator is zero")
    if direction not in ("asc", "desc"):
        raise ValueError(f"bad direction {direction!r}")
    lead = den.min_exponent() if direction == "asc" else den.max_exponent()
    lead_coeff = den.coeff(lead)
    if lead_coeff not in (1, -1):
        raise ValueError(
            f"leading coefficient {lead_coeff} is not invertible over Z in that direction")
    out: dict[int, int] = {}
    rem = dict(num.terms)

    def next_exponent() -> int | None:
        if not rem:
            return None
        return min(rem) if direction == "asc" else max(rem)

    while True:
        e = next_exponent()
        if e is None:
            break
        target = e - lead
        if (direction == "asc" and target > prec) or (direction == "desc" and target < prec):
            break
        c = rem[e] * lead_coeff  # divide by +-1
        out[target] = out.get(target, 0) + c
        for de, dc in den.terms.items():
            k = target + de
            rem[k] = rem.get(k, 0) - c * dc
            if rem[k] == 0:
                del rem[k]
    return TruncSeries(direction, prec, out)


def laurent_sum(values: Iterable[Laurent]) -> Laurent:
    total = ZERO
    for value in values:
        total = total + value
    return total
