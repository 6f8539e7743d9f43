"""Exact rationals, dyadics and the binary coding map onto [0, 1].

Every distance in the package is a :class:`fractions.Fraction`.  Dyadic
values are fractions whose denominator is a power of two; they are not a
separate type, only a property checked by :func:`is_dyadic`.

Bit words are plain ``str`` objects over ``"01"``.  A finite word is read
as the infinite sequence obtained by padding it with zeros, so the coding
map always picks the eventually-zero expansion.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

Rational = Fraction
BitWord = str

_RATIONAL_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(?:(\d+)|2\s*\^\s*(\d+)))?\s*$")


def check_word(w: str) -> str:
    if not isinstance(w, str) or any(c not in "01" for c in w):
        raise ValueError(f"not a bit word: {w!r}")
    return w


def zeros(k: int) -> str:
    return "0" * k


def is_zero_word(w: str) -> bool:
    return "1" not in w


def is_prefix(s: str, w: str) -> bool:
    return w.startswith(s)


@lru_cache(maxsize=None)
def two_pow_neg(k: int) -> Fraction:
    """Return exactly ``1 / 2**k``."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    return Fraction(1, 1 << k)


def pi_of_word(w: str) -> Fraction:
    """Value of ``sum(w[i] / 2**(i+1))`` for the zero-padded word ``w``."""
    check_word(w)
    if not w:
        return Fraction(0)
    return Fraction(int(w, 2), 1 << len(w))


def is_dyadic(q: Fraction) -> bool:
    den = Fraction(q).denominator
    return den & (den - 1) == 0


def dyadic_parts(q: Fraction) -> tuple[int, int]:
    """Split a dyadic ``q`` into ``(num, exp)`` with ``q == num / 2**exp``.

    The pair is canonical: ``num`` is odd, or ``num == exp == 0``.
    """
    q = Fraction(q)
    if not is_dyadic(q):
        raise ValueError(f"{q} is not dyadic")
    return q.numerator, q.denominator.bit_length() - 1


def word_of_dyadic(q: Fraction, length: int) -> str:
    """Inverse of :func:`pi_of_word` at a fixed word length.

    Raises ``ValueError`` unless ``0 <= q < 1`` and ``q * 2**length`` is an
    integer.
    """
    q = Fraction(q)
    if q < 0 or q >= 1:
        raise ValueError(f"{q} is outside [0, 1)")
    if not is_dyadic(q):
        raise ValueError(f"{q} is not dyadic")
    scaled = q * (1 << length)
    if scaled.denominator != 1:
        raise ValueError(f"{q} needs more than {length} bits")
    return format(scaled.numerator, "b").zfill(length) if length else ""


def parse_rational(text) -> Fraction:
    """Parse ``"p"``, ``"p/q"`` or ``"p/2^k"``; ints are accepted too.

    Floats are refused: they would smuggle rounding into exact values.
    """
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"refusing non-exact value {text!r}")
    if isinstance(text, int):
        if text < 0:
            raise ValueError(f"negative value {text}")
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise ValueError(f"not a non-negative rational: {text!r}")
    num, den, exp = m.groups()
    if exp is not None:
        return Fraction(int(num), 1 << int(exp))
    if den is not None:
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
