"""Standard-coefficient arithmetic.

The standard set is {(k-1)/k : k >= 2} together with 1. For a fixed
power m >= 2 the working hypothesis admits, besides the standard set,
any coefficient in [1 - 1/m, 1]; under it the bracket bound

    0 <= floor(m c) - (m - 1) c <= c

holds, which is what lets the rounded multiple be rewritten as a
boundary at most the original one. Outside the hypothesis the bound can
fail, and the test suite pins a failing pair found by search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameters
from .rational import floor_scale


@dataclass(frozen=True)
class CoeffCheck:
    """One coefficient against one power: membership and both bounds."""

    c: Fraction
    m: int
    standard: bool
    hypothesis_ok: bool
    bracket_ok: bool


def is_standard(c: Fraction) -> bool:
    """True iff c = 1 or c = (k-1)/k for an integer k >= 2."""
    if c == 1:
        return True
    if not 0 < c < 1:
        return False
    r = 1 - c
    return r.numerator == 1 and r.denominator >= 2


def vanishing_hypothesis(c: Fraction, m: int) -> bool:
    """Membership in the standard set extended by [1 - 1/m, 1]."""
    if m < 2:
        raise BadParameters("m must be >= 2")
    if not 0 < c <= 1:
        raise BadParameters(f"coefficient {c} outside (0, 1]")
    return is_standard(c) or c >= 1 - Fraction(1, m)


def bracket_bound_holds(c: Fraction, m: int) -> bool:
    """Exact check of 0 <= floor(m c) - (m - 1) c <= c."""
    if m < 2:
        raise BadParameters("m must be >= 2")
    if not 0 < c <= 1:
        raise BadParameters(f"coefficient {c} outside (0, 1]")
    gap = floor_scale(m, c) - (m - 1) * c
    return 0 <= gap <= c


def coeff_check(c: Fraction, m: int) -> CoeffCheck:
    return CoeffCheck(c, m, is_standard(c), vanishing_hypothesis(c, m),
                      bracket_bound_holds(c, m))


def plt_modification(n: int, d: Fraction) -> tuple[Fraction, Fraction]:
    """Discrepancy and replacement coefficient for extracting the
    conductor-end curve of a plt chain of order n with boundary drop d.

    Returns (-1 + d/n, 1 - d/n); the two always sum to zero, so the
    extracted curve enters the new boundary exactly at its discrepancy
    level with the sign flipped.
    """
    if n < 1:
        raise BadParameters("n must be >= 1")
    d = Fraction(d)
    if not 0 < d <= 1:
        raise BadParameters(f"drop {d} outside (0, 1]")
    gamma = d / n
    return (-1 + gamma, 1 - gamma)
