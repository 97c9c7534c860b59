"""Text form of exact rationals.

All distances in the library are `fractions.Fraction` values: stored in
lowest terms with positive denominator, all arithmetic exact.  The text
form used by every file format and CLI emitter is "p/q" (always with an
explicit denominator, so emitted files are byte-stable).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError


def parse_rational(text: str, line: int | None = None) -> Fraction:
    """Parse "p/q" or a bare integer "p" into a Fraction."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}", line=line) from None


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"
