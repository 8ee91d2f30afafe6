"""Degree bookkeeping for restriction of pluri-log-canonical forms.

For a plt chain germ the restriction of the invariant generator of the
m-th pluri-log-canonical sheaf to the conductor has pole order governed
by ceil(m * gamma), while the target sheaf twists by floor(m * (1 -
gamma)); the identity m - ceil(m g) = floor(m (1 - g)) makes the
restriction surjective for every m. With several fractional branches
through one point the floor of the sum can exceed the sum of floors,
and the first m where it does is the obstruction this module hunts
down. The dihedral and glued computations record the two ways the
single-branch picture degrades.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameters, GlueMismatch, NotApplicable
from .germs import CyclicQuotientGerm, check_slc_glue
from .rational import ceil_scale, floor_scale

# Restriction twists (relative to the expected dualizing sheaves) for
# the fixed three-component chain glue: two fork-type germs attached to
# the two axes of a normal-crossings plane. The middle restriction
# drops by one twist, so it fails Serre's S_2 even though the total
# sheaf does not. Pinned as a regression value; there is no general
# chain-glue operation here.
CHAIN_GLUE_RESTRICTION_TWISTS: tuple[int, int, int] = (0, -1, 0)


@dataclass(frozen=True)
class ResidueReport:
    """Exponent comparison for one power m.

    ``deficit`` is the target capacity minus the image capacity; the
    restriction is surjective exactly when it vanishes.
    """

    m: int
    source_exponent: int
    target_exponent: int
    surjective: bool
    deficit: int

    def __post_init__(self):
        if self.deficit < 0:
            raise BadParameters("negative deficit")
        if self.surjective != (self.deficit == 0):
            raise BadParameters("surjectivity flag contradicts deficit")


def single_branch_report(m: int, germ: CyclicQuotientGerm) -> ResidueReport:
    """Compare both sides of the restriction in degree m.

    Source and target exponents are computed independently; their
    agreement (m - source = target) is re-derived every call instead of
    assumed.
    """
    if germ.conductor_coeff != 1:
        raise NotApplicable("restriction taken along a branch of coefficient != 1")
    if m < 1:
        raise BadParameters("m must be >= 1")
    gamma = germ.gamma
    source = ceil_scale(m, gamma)
    target = floor_scale(m, 1 - gamma)
    deficit = target - (m - source)
    return ResidueReport(m, source, target, deficit == 0, deficit)


def multibranch_deficit(m: int, coeffs) -> int:
    """floor(m * sum c_i) - sum floor(m * c_i), always >= 0."""
    coeffs = list(coeffs)
    if m < 1:
        raise BadParameters("m must be >= 1")
    if not coeffs:
        raise BadParameters("at least one coefficient required")
    for c in coeffs:
        if not 0 < c < 1:
            raise BadParameters(f"coefficient {c} outside (0, 1)")
    total = sum(coeffs, Fraction(0))
    return floor_scale(m, total) - sum(floor_scale(m, c) for c in coeffs)


def find_failure_m(coeffs) -> int | None:
    """Least m with a positive rounding deficit.

    With two or more fractional branches a failure always exists, no
    later than the denominator of the coefficient sum: either the least
    m making the sum integral already fails, or the multiplicative
    inverse of the numerator modulo that denominator does. The search
    stops at that bound and returns None past it, which the property
    suite treats as a defect.
    """
    coeffs = list(coeffs)
    if len(coeffs) < 2:
        raise BadParameters("need at least two branch coefficients")
    for c in coeffs:
        if not 0 < c < 1:
            raise BadParameters(f"coefficient {c} outside (0, 1)")
    total = sum(coeffs, Fraction(0))
    for m in range(1, total.denominator + 1):
        if multibranch_deficit(m, coeffs) > 0:
            return m
    return None


def dihedral_image_twist(m: int) -> int:
    """Twist of the degree-m restriction image at the pinch point.

    The full twisted sheaf is hit only in even degrees; odd degrees
    land one twist short. Returns m for even m and m - 1 for odd m.
    """
    if m < 1:
        raise BadParameters("m must be >= 1")
    return m - (m % 2)


def glued_restriction_coeff(m: int, n: int, c: Fraction) -> Fraction:
    """Coefficient of the marked point after restricting
    m*(K + D) + floor(m(1-c))*C to the conductor D, in the 1/n(1,1)
    model: m(1 - 1/n) + floor(m(1-c))/n.

    Only the m = 2 value is pinned by the divisor computation; other m
    extrapolate the same intersection numbers and are flagged as such
    by the CLI.
    """
    if m < 1 or n < 1:
        raise BadParameters("m and n must be >= 1")
    c = Fraction(c)
    if not 0 < c < 1:
        raise BadParameters(f"coefficient {c} outside (0, 1)")
    return m * Fraction(n - 1, n) + Fraction(floor_scale(m, 1 - c), n)


def glued_mcartier(m: int, g1: CyclicQuotientGerm, g2: CyclicQuotientGerm) -> bool:
    """Whether the degree-m rounded divisor restricts equally to the
    two sides of a glued pair of 1/n(1,1) germs.

    For m = 2 and both fractional coefficients below 1/2 this reduces
    to asking that the two orders n agree.
    """
    for g in (g1, g2):
        if g.q != 1:
            raise GlueMismatch("restriction formula needs the 1/n(1,1) model (q = 1)")
    if not check_slc_glue(g1, g2):
        raise GlueMismatch("differents disagree, the pair does not glue")
    c1 = 1 - g1.side_coeff
    c2 = 1 - g2.side_coeff
    return glued_restriction_coeff(m, g1.n, c1) == glued_restriction_coeff(m, g2.n, c2)
