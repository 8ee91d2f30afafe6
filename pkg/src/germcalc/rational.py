"""Exact rational scalars and the floor/ceil scaling calculus.

Every numeric quantity in this package is a ``fractions.Fraction``; there
is no floating point anywhere. This module adds the two integer-valued
scaling operations that the divisor rounding arguments run on, plus the
canonical ``a/b`` text form used by the CLI file format.
"""

from __future__ import annotations

import re
from fractions import Fraction

# The universal exact scalar. Stored in lowest terms with positive
# denominator, with unbounded integer numerator and denominator.
Rat = Fraction

_RAT_RE = re.compile(r"^(-?\d+)(?:/([1-9]\d*))?$")


def parse_rat(text: str) -> Fraction:
    """Parse the canonical form ``a/b``, or ``a`` when the denominator is 1.

    Decimal notation is rejected on purpose: the file format never goes
    through binary floats.
    """
    m = _RAT_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return Fraction(num, den)


def format_rat(q: Fraction) -> str:
    """Canonical text form; ``parse_rat`` inverts it exactly."""
    return str(q)


def floor_scale(m: int, q: Fraction) -> int:
    """Return the unique integer k with k <= m*q < k+1.

    Floors toward minus infinity, so negative products round down.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    return (m * q.numerator) // q.denominator


def ceil_scale(m: int, q: Fraction) -> int:
    """Return the smallest integer >= m*q."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return -((-m * q.numerator) // q.denominator)
