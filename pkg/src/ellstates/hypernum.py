"""Exact arithmetic in the lexicographic unit interval.

Values are formal sums ``r + eps*s`` with rational ``r`` (the standard part,
kept inside [0, 1]) and rational ``s`` (the infinitesimal coefficient),
ordered lexicographically.  ``eps`` is never materialised as a number: it is
the positional convention of the second component.

The interval carries MV operations::

    x (+) y = (x + y) /\\ (1, 0)       componentwise sum, lexicographic meet
    x (*) y = (x + y - (1, 0)) \\/ (0, 0)
    neg x   = (1, 0) - x

Coefficients are :class:`fractions.Fraction`, so every comparison and
equality below is exact; there is no floating point anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

#: Exact rational scalar used throughout the package.
Rational = Fraction

RationalLike = Union[Fraction, int, str]


class Ordering(Enum):
    LT = -1
    EQ = 0
    GT = 1


def _rat(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class DualRational:
    """One element of the interval: ``std + eps*inf``.

    Membership in the interval [(0,0), (1,0)] of the lexicographic product
    is enforced at construction: the standard part lies in [0, 1], and the
    infinitesimal coefficient may not push the value below (0,0) or above
    (1,0) at the boundary.
    """

    std: Fraction
    inf: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "std", _rat(self.std))
        object.__setattr__(self, "inf", _rat(self.inf))
        if not 0 <= self.std <= 1:
            raise ValueError(f"standard part {self.std} outside [0, 1]")
        if self.std == 0 and self.inf < 0:
            raise ValueError(f"0 + eps*{self.inf} lies below (0, 0)")
        if self.std == 1 and self.inf > 0:
            raise ValueError(f"1 + eps*{self.inf} lies above (1, 0)")

    # Order is lexicographic; equality is the componentwise dataclass one.
    def _key(self) -> tuple[Fraction, Fraction]:
        return (self.std, self.inf)

    def __lt__(self, other: "DualRational") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "DualRational") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "DualRational") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "DualRational") -> bool:
        return self._key() >= other._key()

    def __str__(self) -> str:
        return format_dual(self)


DUAL_ZERO = DualRational(Fraction(0))
DUAL_ONE = DualRational(Fraction(1))


def dual(std: RationalLike, inf: RationalLike = 0) -> DualRational:
    """Convenience constructor accepting ints, fraction strings, Fractions."""
    return DualRational(_rat(std), _rat(inf))


def parts(x: DualRational) -> tuple[Fraction, Fraction]:
    """Project onto (standard part, infinitesimal coefficient)."""
    return (x.std, x.inf)


def lex_compare(x: DualRational, y: DualRational) -> Ordering:
    if x._key() < y._key():
        return Ordering.LT
    if x._key() == y._key():
        return Ordering.EQ
    return Ordering.GT


def mv_oplus(x: DualRational, y: DualRational) -> DualRational:
    r = x.std + y.std
    s = x.inf + y.inf
    if (r, s) > (Fraction(1), Fraction(0)):
        return DUAL_ONE
    return DualRational(r, s)


def mv_otimes(x: DualRational, y: DualRational) -> DualRational:
    r = x.std + y.std - 1
    s = x.inf + y.inf
    if (r, s) < (Fraction(0), Fraction(0)):
        return DUAL_ZERO
    return DualRational(r, s)


def mv_neg(x: DualRational) -> DualRational:
    return DualRational(1 - x.std, -x.inf)


def format_dual(x: DualRational) -> str:
    """Render as ``"r+es"`` with exact fraction strings, e.g. ``"1/2+e-3/4"``."""
    return f"{x.std}+e{x.inf}"


def parse_dual(text: str) -> DualRational:
    """Inverse of :func:`format_dual`; the roundtrip is bit-exact."""
    head, sep, tail = text.partition("+e")
    if not sep or not head or not tail:
        raise ValueError(f"not a dual-rational literal: {text!r}")
    try:
        return DualRational(Fraction(head), Fraction(tail))
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator in {text!r}") from exc
