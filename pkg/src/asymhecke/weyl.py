"""
The infinite dihedral group on two involutive generators s0, s1.

Every nontrivial element has a unique reduced word, which strictly alternates
between the two generators, so an element is fully determined by its first
letter and its length.  That makes length, descent sets, the Bruhat order
and prefix ("starts with") tests all O(1), and cone enumeration trivial.

Word strings use the letters '0' and '1'; the empty string is the identity.

>>> mul(parse_word("010"), parse_word("01"))
WeylElt(first=0, length=1)
>>> word(mul(S0, S1))
'01'
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "WeylElt", "IDENTITY", "S0", "S1",
    "generator", "parse_word", "word", "mul", "inverse",
    "right_descent", "left_descent", "bruhat_leq", "starts_with",
    "enumerate_by_length", "cone", "parent", "extend", "simple_product",
    "translation_name",
]


@dataclass(frozen=True, order=True)
class WeylElt:
    """first: 0 or 1 for nontrivial elements, -1 for the identity."""

    first: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("negative length")
        if (self.length == 0) != (self.first == -1):
            raise ValueError("identity iff first == -1")
        if self.first not in (-1, 0, 1):
            raise ValueError(f"bad first letter {self.first}")

    def letter(self, i: int) -> int:
        """The i-th letter (0-based) of the unique reduced word."""
        if not 0 <= i < self.length:
            raise IndexError(i)
        return self.first ^ (i & 1)

    @property
    def last(self) -> int:
        """The final letter; -1 for the identity."""
        if self.length == 0:
            return -1
        return self.letter(self.length - 1)

    def is_identity(self) -> bool:
        return self.length == 0


IDENTITY = WeylElt(-1, 0)
S0 = WeylElt(0, 1)
S1 = WeylElt(1, 1)


def generator(i: int) -> WeylElt:
    if i not in (0, 1):
        raise ValueError(f"no generator {i}")
    return WeylElt(i, 1)


def parse_word(text: str) -> WeylElt:
    """
    Parse an alternating word over '0'/'1'; rejects anything non-reduced.

    >>> parse_word("")
    WeylElt(first=-1, length=0)
    >>> parse_word("0101").length
    4
    """
    if text == "":
        return IDENTITY
    letters = []
    for ch in text:
        if ch not in "01":
            raise ValueError(f"bad letter {ch!r} in word {text!r}")
        letters.append(int(ch))
    for a, b in zip(letters, letters[1:]):
        if a == b:
            raise ValueError(f"word {text!r} is not reduced (repeated letter)")
    return WeylElt(letters[0], len(letters))


def word(w: WeylElt) -> str:
    return "".join(str(w.letter(i)) for i in range(w.length))


def mul(x: WeylElt, y: WeylElt) -> WeylElt:
    """Group product, reduced by cancelling s*s = 1 at the junction."""
    if x.is_identity():
        return y
    if y.is_identity():
        return x
    # Cancel matching letters where the words meet.
    k = 0
    while k < x.length and k < y.length and x.letter(x.length - 1 - k) == y.letter(k):
        k += 1
    length = x.length + y.length - 2 * k
    if length == 0:
        return IDENTITY
    if k < x.length:
        return WeylElt(x.first, length)
    return WeylElt(y.letter(k), length)


def inverse(w: WeylElt) -> WeylElt:
    """Word reversal; an involution precisely on the palindromic elements."""
    if w.length == 0:
        return IDENTITY
    return WeylElt(w.last, w.length)


def simple_product(w: WeylElt, i: int) -> WeylElt:
    """w * s_i."""
    return mul(w, generator(i))


def right_descent(w: WeylElt) -> frozenset[int]:
    """{last letter}, or empty for the identity."""
    if w.is_identity():
        return frozenset()
    return frozenset({w.last})


def left_descent(w: WeylElt) -> frozenset[int]:
    if w.is_identity():
        return frozenset()
    return frozenset({w.first})


def bruhat_leq(y: WeylElt, w: WeylElt) -> bool:
    """
    Strong Bruhat order.  In this group the alternating word of any strictly
    shorter element is a subword of the longer one, so the closed form is
    just a length comparison (checked against the subword oracle in tests).
    """
    return y == w or y.length < w.length


def starts_with(w: WeylElt, y: WeylElt) -> bool:
    """True iff the reduced word of y is a prefix of that of w."""
    if y.length > w.length:
        return False
    if y.is_identity():
        return True
    return w.first == y.first


def parent(w: WeylElt) -> WeylElt:
    """Drop the final letter."""
    if w.is_identity():
        raise ValueError("identity has no parent")
    if w.length == 1:
        return IDENTITY
    return WeylElt(w.first, w.length - 1)


def extend(w: WeylElt) -> WeylElt:
    """
    The unique one-letter right extension of a nontrivial element (appending
    the generator different from its last letter).
    """
    if w.is_identity():
        raise ValueError("identity has two extensions; pick a generator")
    return WeylElt(w.first, w.length + 1)


def enumerate_by_length(n_min: int, n_max: int) -> list[WeylElt]:
    """
    All elements with n_min <= length <= n_max, ordered by length with the
    s0-word before the s1-word at each positive length.

    >>> [word(w) for w in enumerate_by_length(0, 2)]
    ['', '0', '1', '01', '10']
    """
    if not 0 <= n_min <= n_max:
        raise ValueError(f"bad range [{n_min}, {n_max}]")
    out: list[WeylElt] = []
    for n in range(n_min, n_max + 1):
        if n == 0:
            out.append(IDENTITY)
        else:
            out.append(WeylElt(0, n))
            out.append(WeylElt(1, n))
    return out


def cone(y: WeylElt, max_length: int) -> Iterator[WeylElt]:
    """All w with starts_with(w, y) and length <= max_length, by length."""
    if y.is_identity():
        raise ValueError("the identity cone is all of the group; enumerate instead")
    for n in range(y.length, max_length + 1):
        yield WeylElt(y.first, n)


def translation_name(w: WeylElt) -> str | None:
    """
    Dominant-translation naming: (s0 s1)^n is the coweight translation pi^n
    and (s1 s0)^n is pi^-n; None for non-translations.
    """
    if w.is_identity():
        return "pi^0"
    if w.length % 2:
        return None
    n = w.length // 2
    return f"pi^{n}" if w.first == 0 else f"pi^{-n}"
