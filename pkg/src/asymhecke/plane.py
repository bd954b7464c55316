"""
The convolution action on Iwahori-invariant compactly supported functions on
the punctured plane F^2 minus 0.

Each spherical orbit (index n) splits into two Iwahori orbits with
characteristic functions psi_n and phi_n.  The characteristic functions of
the orbit closures,

    phibar_n = Sigma_(k>=n) (phi_k + psi_k)
    psibar_n = Sigma_(k>=n) (psi_k + phi_(k+1)),

form a basis of the invariants, and every function here is stored as a finite
combination of them (the closure basis is canonical and exact).  The orbit
symbols convert in by phi_n = phibar_n - psibar_n and
psi_n = psibar_n - phibar_(n+1); an OrbitWindow is the derived finite view
used for series actions and display.

The generator action on orbit functions is

    T_(s0) * psi_n = phi_n              T_(s1) * phi_n = psi_(n-1)
    T_(s0) * phi_n = (q-1) phi_n + q psi_n
    T_(s1) * psi_n = (q-1) psi_n + q phi_(n+1)

which on the closure basis closes up to the exact four-term rules used by
``act_simple`` (derived in the tests from the orbit rules, not assumed).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .coeffring import Laurent, ONE, TruncSeries, ZERO, q_power
from .completion import CompletedHecke
from .jalg import tw_coefficient_exact, tw_in_t
from .weyl import IDENTITY, WeylElt, enumerate_by_length, word

__all__ = [
    "PlaneFunction", "OrbitWindow", "StabilizationError",
    "phibar", "psibar", "phi_orbit", "psi_orbit", "parse_symbol", "zero_function",
    "act_simple", "act_t", "closed_orbit_action", "orbit_coefficients",
    "orbit_window", "closure_from_window",
    "act_completed", "t_action", "TAction", "schwartz_check", "SchwartzReport",
]

Symbol = tuple[str, int]  # ("phibar" | "psibar", index)


class StabilizationError(Exception):
    """A windowed series action failed to settle within the cutoff."""


@dataclass(frozen=True)
class PlaneFunction:
    """A finite combination of orbit-closure characteristic functions."""

    coeffs: Mapping[Symbol, Laurent]

    def __post_init__(self) -> None:
        clean = {}
        for (kind, n), c in self.coeffs.items():
            if kind not in ("phibar", "psibar"):
                raise ValueError(f"bad closure symbol kind {kind!r}")
            if not c.is_zero():
                clean[(kind, n)] = c
        object.__setattr__(self, "coeffs", clean)

    def coeff(self, kind: str, n: int) -> Laurent:
        return self.coeffs.get((kind, n), ZERO)

    def support(self) -> list[Symbol]:
        return sorted(self.coeffs, key=lambda s: (s[1], s[0]))

    def is_zero(self) -> bool:
        return not self.coeffs

    def index_range(self) -> tuple[int, int]:
        """(lowest, highest) closure index present; (0, 0) for zero."""
        if not self.coeffs:
            return 0, 0
        idx = [n for _, n in self.coeffs]
        return min(idx), max(idx)

    def __add__(self, other: "PlaneFunction") -> "PlaneFunction":
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out.get(s, ZERO) + c
        return PlaneFunction(out)

    def __sub__(self, other: "PlaneFunction") -> "PlaneFunction":
        return self + other.scale(Laurent({0: -1}))

    def scale(self, factor: Laurent) -> "PlaneFunction":
        return PlaneFunction({s: c * factor for s, c in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PlaneFunction):
            return dict(self.coeffs) == dict(other.coeffs)
        return NotImplemented

    def to_json(self) -> dict[str, object]:
        return {f"{kind}({n})": self.coeff(kind, n).to_json()
                for kind, n in self.support()}

    def pretty(self) -> str:
        if self.is_zero():
            return "0"
        bits = []
        for kind, n in self.support():
            c = self.coeff(kind, n).pretty()
            prefix = "" if c == "1" else f"({c})*"
            bits.append(f"{prefix}{kind}({n})")
        return " + ".join(bits)


def zero_function() -> PlaneFunction:
    return PlaneFunction({})


def phibar(n: int) -> PlaneFunction:
    return PlaneFunction({("phibar", n): ONE})


def psibar(n: int) -> PlaneFunction:
    return PlaneFunction({("psibar", n): ONE})


def phi_orbit(n: int) -> PlaneFunction:
    """The single-orbit function phi_n = phibar_n - psibar_n."""
    return PlaneFunction({("phibar", n): ONE, ("psibar", n): Laurent({0: -1})})


def psi_orbit(n: int) -> PlaneFunction:
    """The single-orbit function psi_n = psibar_n - phibar_(n+1)."""
    return PlaneFunction({("psibar", n): ONE, ("phibar", n + 1): Laurent({0: -1})})


_SYMBOL_RE = re.compile(r"^(phibar|psibar|phi|psi)\((-?\d+)\)$")


def parse_symbol(text: str) -> PlaneFunction:
    """
    Parse "phibar(n)", "psibar(n)", "phi(n)" or "psi(n)"; "0" is the zero
    function.
    """
    text = text.strip()
    if text == "0":
        return zero_function()
    m = _SYMBOL_RE.match(text)
    if not m:
        raise ValueError(f"bad plane symbol {text!r}")
    kind, n = m.group(1), int(m.group(2))
    return {"phibar": phibar, "psibar": psibar,
            "phi": phi_orbit, "psi": psi_orbit}[kind](n)


# -- generator action ---------------------------------------------------------

def _act_closure_letter(i: int, f: PlaneFunction) -> PlaneFunction:
    q = q_power(1)
    out: dict[Symbol, Laurent] = {}

    def bump(kind: str, n: int, c: Laurent) -> None:
        key = (kind, n)
        out[key] = out.get(key, ZERO) + c

    for (kind, n), c in f.coeffs.items():
        if i == 0:
            if kind == "phibar":
                bump("phibar", n, c * q)
            else:
                bump("phibar", n, c)
                bump("psibar", n, -c)
                bump("phibar", n + 1, c * q)
        else:
            if kind == "psibar":
                bump("psibar", n, c * q)
            else:
                bump("psibar", n - 1, c)
                bump("phibar", n, -c)
                bump("psibar", n, c * q)
    return PlaneFunction(out)


@dataclass(frozen=True)
class OrbitWindow:
    """
    Orbit-basis coefficients for indices lo..hi, with flags recording that
    the true function continues beyond either edge.
    """

    lo: int
    hi: int
    coeffs: Mapping[tuple[str, int], "Laurent | TruncSeries"]
    truncated_below: bool = False
    truncated_above: bool = False

    def coeff(self, kind: str, n: int) -> "Laurent | TruncSeries":
        if not self.lo <= n <= self.hi:
            raise IndexError(f"index {n} outside window [{self.lo}, {self.hi}]")
        return self.coeffs.get((kind, n), ZERO)

    def to_json(self) -> dict[str, object]:
        out: dict[str, object] = {}
        for n in range(self.lo, self.hi + 1):
            for kind in ("phi", "psi"):
                c = self.coeffs.get((kind, n))
                if c is not None and not (isinstance(c, Laurent) and c.is_zero()):
                    out[f"{kind}({n})"] = c.to_json()
        out["window"] = [self.lo, self.hi]
        out["truncated"] = [self.truncated_below, self.truncated_above]
        return out


def orbit_window(f: PlaneFunction, lo: int, hi: int) -> OrbitWindow:
    """The exact orbit-coefficient view of a closure function on lo..hi."""
    out: dict[tuple[str, int], Laurent | TruncSeries] = {}
    for k in range(lo, hi + 1):
        c_phi = ZERO
        c_psi = ZERO
        for (kind, m), c in f.coeffs.items():
            if kind == "phibar":
                if m <= k:
                    c_phi = c_phi + c
                    c_psi = c_psi + c
            else:
                if m <= k - 1:
                    c_phi = c_phi + c
                if m <= k:
                    c_psi = c_psi + c
        if not c_phi.is_zero():
            out[("phi", k)] = c_phi
        if not c_psi.is_zero():
            out[("psi", k)] = c_psi
    min_idx, _ = f.index_range()
    return OrbitWindow(lo, hi, out,
                       truncated_below=min_idx < lo,
                       truncated_above=not _vanishes_above(f))


def _vanishes_above(f: PlaneFunction) -> bool:
    # Both orbit-coefficient tails converge to the total closure-coefficient
    # sum, so the orbit support is bounded iff that sum vanishes.
    tot_all = ZERO
    for c in f.coeffs.values():
        tot_all = tot_all + c
    return tot_all.is_zero()


def orbit_coefficients(f: PlaneFunction) -> dict[tuple[str, int], Laurent]:
    """
    The full orbit expansion of an orbit-finite function; raises if the
    function has unbounded support (a genuine closure function).
    """
    if f.is_zero():
        return {}
    if not _vanishes_above(f):
        raise ValueError("function has semi-infinite orbit support")
    lo, hi = f.index_range()
    window = orbit_window(f, lo - 1, hi + 1)
    return {k: c for k, c in window.coeffs.items() if isinstance(c, Laurent)}


def closure_from_window(w: OrbitWindow) -> PlaneFunction:
    """
    Recover closure coefficients from an orbit window:
    phibar-coefficient at k is phi(k) - psi(k-1), psibar at k is
    psi(k) - phi(k).  Only valid when the function's transitions happen
    strictly inside the window; the edges are checked by the caller.
    """
    out: dict[Symbol, Laurent] = {}
    for k in range(w.lo + 1, w.hi + 1):
        phi_k = _known(w.coeffs.get(("phi", k), ZERO))
        psi_k = _known(w.coeffs.get(("psi", k), ZERO))
        psi_prev = _known(w.coeffs.get(("psi", k - 1), ZERO))
        c_phibar = phi_k - psi_prev
        c_psibar = psi_k - phi_k
        if not c_phibar.is_zero():
            out[("phibar", k)] = c_phibar
        if not c_psibar.is_zero():
            out[("psibar", k)] = c_psibar
    return PlaneFunction(out)


def _known(c: "Laurent | TruncSeries") -> Laurent:
    return c if isinstance(c, Laurent) else c.known_part()


def act_simple(i: int, f: "PlaneFunction | OrbitWindow") -> "PlaneFunction | OrbitWindow":
    """
    Act by T_(s_i).  Closure inputs are exact; window inputs lose one index
    of reliable margin at each edge.
    """
    if i not in (0, 1):
        raise ValueError(f"no generator {i}")
    if isinstance(f, PlaneFunction):
        return _act_closure_letter(i, f)
    q = q_power(1)
    out: dict[tuple[str, int], Laurent | TruncSeries] = {}

    def bump(kind: str, n: int, c) -> None:
        key = (kind, n)
        out[key] = c + out[key] if key in out else c

    for (kind, n), c in f.coeffs.items():
        if i == 0:
            if kind == "psi":
                bump("phi", n, c)
            else:
                bump("phi", n, c * (q - ONE))
                bump("psi", n, c * q)
        else:
            if kind == "phi":
                bump("psi", n - 1, c)
            else:
                bump("psi", n, c * (q - ONE))
                bump("phi", n + 1, c * q)
    lo = f.lo + 1 if f.truncated_below else f.lo
    hi = f.hi - 1 if f.truncated_above else f.hi
    if lo > hi:
        raise ValueError("orbit window too small to hold the result; "
                         "widen it before acting")
    kept = {(kind, n): c for (kind, n), c in out.items() if lo <= n <= hi}
    return OrbitWindow(lo, hi, kept, f.truncated_below, f.truncated_above)


def act_t(w: WeylElt, f: "PlaneFunction | OrbitWindow") -> "PlaneFunction | OrbitWindow":
    """Act by T_w, folding the reduced word right to left."""
    for k in range(w.length - 1, -1, -1):
        f = act_simple(w.letter(k), f)
    return f


def closed_orbit_action(w: WeylElt, kind: str, m: int) -> dict[tuple[str, int], Laurent]:
    """
    The eight closed forms for T_w acting on a single orbit function, with
    sums running over decreasing indices interpreted as empty.  The leading
    term of the odd s0-family acting on phi_m lands on psi (the printed form
    of that one formula misstates the symbol; the iterated action fixes it).
    """
    if kind not in ("phi", "psi"):
        raise ValueError(f"orbit symbol expected, got {kind!r}")
    if w.is_identity():
        return {(kind, m): ONE}
    q = q_power(1)
    qm1 = q - ONE
    out: dict[tuple[str, int], Laurent] = {}

    def bump(k: str, n: int, c: Laurent) -> None:
        if not c.is_zero():
            out[(k, n)] = out.get((k, n), ZERO) + c

    even, n = (w.length % 2 == 0), w.length // 2
    if w.first == 1 and even:                       # (s1 s0)^n
        if kind == "psi":
            bump("psi", m - n, ONE)
        else:
            bump("phi", m + n, q ** (2 * n))
            for k in range(1, 2 * n + 1):
                bump("psi", m + n - k, qm1 * q ** (2 * n - k))
    elif w.first == 0 and not even:                 # s0 (s1 s0)^n
        if kind == "psi":
            bump("phi", m - n, ONE)
        else:
            bump("psi", m + n, q ** (2 * n + 1))
            for k in range(0, 2 * n + 1):
                bump("phi", m + n - k, qm1 * q ** (2 * n - k))
    elif w.first == 0 and even:                     # (s0 s1)^n
        if kind == "phi":
            bump("phi", m - n, ONE)
        else:
            bump("psi", m + n, q ** (2 * n))
            for k in range(1, 2 * n + 1):
                bump("phi", m + n + 1 - k, qm1 * q ** (2 * n - k))
    else:                                           # s1 (s0 s1)^n
        if kind == "phi":
            bump("psi", m - n - 1, ONE)
        else:
            bump("phi", m + n + 1, q ** (2 * n + 1))
            for k in range(0, 2 * n + 1):
                bump("psi", m + n - k, qm1 * q ** (2 * n - k))
    return out


# -- series actions with stabilization ----------------------------------------

@dataclass(frozen=True)
class StabilizationReport:
    cutoff: int
    floor: int
    settled_at: Mapping[tuple[str, int], int]
    unsettled: list[tuple[str, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.unsettled


def act_completed(series: CompletedHecke, f: PlaneFunction,
                  lo: int, hi: int, floor: int = -4,
                  settle: int = 2) -> tuple[OrbitWindow, StabilizationReport]:
    """
    Act by a truncated T-basis series, summing length by length and watching
    the window's orbit coefficients (truncated at the v-exponent floor).
    A coefficient is accepted once it survives ``settle`` consecutive
    length increments unchanged; any coefficient still moving at the cutoff
    is reported and the caller decides whether to fail.
    """
    if series.basis != "T":
        raise ValueError("act_completed expects a T-basis series")
    acc: dict[Symbol, Laurent | TruncSeries] = {}
    snapshots: list[dict[tuple[str, int], tuple]] = []

    def snap() -> dict[tuple[str, int], tuple]:
        view: dict[tuple[str, int], tuple] = {}
        for k in range(lo, hi + 1):
            phi_c = ZERO
            psi_c = ZERO
            for (kind, m), c in acc.items():
                if kind == "phibar":
                    if m <= k:
                        phi_c = phi_c + c
                        psi_c = psi_c + c
                else:
                    if m <= k - 1:
                        phi_c = phi_c + c
                    if m <= k:
                        psi_c = psi_c + c
            view[("phi", k)] = _floored(phi_c, floor)
            view[("psi", k)] = _floored(psi_c, floor)
        return view

    for length in range(0, series.cutoff + 1):
        for x in enumerate_by_length(length, length):
            c = series.coeff(x)
            if isinstance(c, Laurent) and c.is_zero():
                continue
            acted = act_t(x, f)
            assert isinstance(acted, PlaneFunction)
            for sym, value in acted.coeffs.items():
                contribution = c * value
                acc[sym] = contribution + acc[sym] if sym in acc else contribution
        snapshots.append(snap())

    settled_at: dict[tuple[str, int], int] = {}
    unsettled: list[tuple[str, int]] = []
    for key in snapshots[-1]:
        run = 0
        when = None
        for idx in range(1, len(snapshots)):
            if snapshots[idx][key] == snapshots[idx - 1][key]:
                run += 1
                if run >= settle and snapshots[idx][key] == snapshots[-1][key]:
                    when = idx
                    break
            else:
                run = 0
        if when is None:
            unsettled.append(key)
        else:
            settled_at[key] = when
    final = snapshots[-1]
    coeffs = {key: TruncSeries("desc", floor, dict(val))
              for key, val in ((k, dict(v)) for k, v in final.items())}
    window = OrbitWindow(lo, hi, coeffs, truncated_below=False, truncated_above=True)
    report = StabilizationReport(series.cutoff, floor, settled_at, sorted(unsettled))
    return window, report


def _floored(c: "Laurent | TruncSeries", floor: int) -> tuple:
    if isinstance(c, Laurent):
        terms = {e: v for e, v in c.terms.items() if e >= floor}
    else:
        if c.direction != "desc":
            raise ValueError("plane series are descending")
        if c.prec > floor:
            raise StabilizationError(
                f"series precision {c.prec} too shallow for floor {floor}")
        terms = {e: v for e, v in c.terms.items() if e >= floor}
    return tuple(sorted(terms.items()))


@dataclass(frozen=True)
class TAction:
    y: WeylElt
    result: PlaneFunction
    report: StabilizationReport


def t_action(y: WeylElt, f: PlaneFunction, cutoff: int = 20,
             floor: int = -2, margin: int = 2) -> TAction:
    """
    Act by the asymptotic-basis element t_y (as the function given by its
    standard-basis expansion).  The result is read back off the stabilized
    orbit window as an exact closure combination; certification is "equal up
    to the v-exponent floor at the stated cutoff".
    """
    if f.is_zero():
        return TAction(y, zero_function(),
                       StabilizationReport(cutoff, floor, {}, []))
    lo_f, hi_f = f.index_range()
    lo = lo_f - margin - (y.length + 1) // 2
    hi = hi_f + margin + (y.length + 1) // 2
    prec_depth = max(4, -floor + 2)
    series = tw_in_t(y, cutoff, prec_depth + cutoff)
    window, report = act_completed(series, f, lo, hi, floor=floor)
    if not report.ok:
        raise StabilizationError(
            f"t-action of {word(y)!r} did not settle on {report.unsettled}; "
            f"raise the cutoff (currently {cutoff})")
    for kind in ("phi", "psi"):
        edge = window.coeff(kind, lo)
        if not _known(edge).is_zero():
            raise StabilizationError(
                "window lower edge is active; widen the margin")
    return TAction(y, _exactified(closure_from_window(window)), report)


def _exactified(f: PlaneFunction) -> PlaneFunction:
    return PlaneFunction({s: c for s, c in f.coeffs.items()})


# -- decay at a specialized parameter -----------------------------------------

@dataclass(frozen=True)
class SchwartzReport:
    y: WeylElt
    q0: int
    n_max: int
    weighted: list[Fraction]
    bound: Fraction
    bounded: bool
    tail_monotone: bool

    def to_json(self) -> dict[str, object]:
        return {"y": word(self.y), "q0": self.q0, "nMax": self.n_max,
                "sup": str(max(self.weighted, default=Fraction(0))),
                "bound": str(self.bound),
                "bounded": self.bounded, "tailMonotone": self.tail_monotone}


def schwartz_check(y: WeylElt, q0: int, n_max: int) -> SchwartzReport:
    """
    Evaluate the standard-basis coefficients of t_y exactly at q = q0 and
    weight the spherical shell at radius n by q0^n.  The shell at n meets the
    double cosets of lengths 2n-1, 2n, 2n+1; the common half-integer power
    q^((l(y)-1)/2) is pulled out first, which only changes the admissible
    constant.  Bounded means the weighted values never exceed q0 times their
    early maximum, with a monotone tail as a stronger decay certificate.
    """
    if q0 < 2:
        raise ValueError("q0 must be a prime power >= 2")
    weighted: list[Fraction] = []
    for n in range(0, n_max + 1):
        shell = {max(0, 2 * n - 1), 2 * n, 2 * n + 1}
        best = Fraction(0)
        for length in shell:
            elts = [IDENTITY] if length == 0 else [WeylElt(0, length), WeylElt(1, length)]
            for x in elts:
                val = abs(tw_coefficient_exact(y, x, q0)) * Fraction(q0) ** n
                best = max(best, val)
        weighted.append(best)
    head = max(weighted[:3], default=Fraction(0))
    bound = q0 * max(head, Fraction(1, q0))
    bounded = all(v <= bound for v in weighted)
    tail = weighted[2:]
    tail_monotone = all(b <= a for a, b in zip(tail, tail[1:]))
    return SchwartzReport(y, q0, n_max, weighted, bound, bounded, tail_monotone)
