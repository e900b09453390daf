"""Exact rational scalars.

All geometry in this package is exact: coordinates, inequality data and
objective values are `fractions.Fraction` instances, which are always kept
in lowest terms with a positive denominator.  This module only adds the
text form used by the file formats: "p/q", or just "p" when q == 1.
"""

from fractions import Fraction

from .errors import InputError

#: Alias used in signatures throughout the package.
Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p".  Accepts non-normalized input such as "4/8"."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational literal {text!r}: {exc}") from None


def format_rational(value: Fraction) -> str:
    """Inverse of parse_rational; emits lowest terms, denominator omitted when 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
