"""Resolution dual graphs and their exact numerical invariants.

A graph records the exceptional curves of a resolution (vertices carry
the positive integer c for a curve of self-intersection -c), the tree of
intersections between them, and the boundary branches crossing them.
From that data we compute, in exact rational arithmetic:

* the intersection matrix and its contractibility test (negative
  definiteness via leading principal minors),
* the unique coefficients b_j making K + sum b_j E_j + (branches)
  intersect every exceptional curve trivially; the discrepancy of E_j
  is -b_j,
* the log canonical class of the germ (klt / plt / lc center / not lc),
* the Cartier index, the least m clearing every denominator.

All exceptional curves are assumed rational and the graph a tree; that
is checked at construction time. Branches meet their attachment curve
transversally in one point each, which is a modeling assumption rather
than checked input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import lcm

from .errors import NotApplicable, SingularSystem, ValidationError


@dataclass(frozen=True)
class BoundaryBranch:
    """A boundary branch meeting one exceptional curve transversally.

    ``attach`` is a 0-based vertex index, or None for a branch through
    the ambient smooth point (allowed only when the graph is empty).
    Coefficient 1 encodes a conductor-type branch; coefficients in
    (0, 1) encode fractional boundary branches.
    """

    attach: int | None
    coeff: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if not 0 < self.coeff <= 1:
            raise ValidationError(f"branch coefficient {self.coeff} outside (0, 1]")


@dataclass(frozen=True)
class ResolutionGraph:
    """Tree of exceptional curves plus attached boundary branches."""

    selfints: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    branches: tuple[BoundaryBranch, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "selfints", tuple(int(c) for c in self.selfints))
        object.__setattr__(self, "edges",
                           frozenset((min(i, j), max(i, j)) for i, j in self.edges))
        object.__setattr__(self, "branches", tuple(self.branches))
        n = len(self.selfints)
        for c in self.selfints:
            if c < 1:
                raise ValidationError(f"self-intersection label {c} must be >= 1")
        for i, j in self.edges:
            if i == j:
                raise ValidationError("self-loop edge")
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError(f"edge ({i}, {j}) references a missing vertex")
        if n == 0:
            if self.edges:
                raise ValidationError("edges on an empty vertex set")
        else:
            if len(self.edges) != n - 1 or not self._connected():
                raise ValidationError("edge set is not a tree on the vertex set")
        for br in self.branches:
            if n == 0:
                if br.attach is not None:
                    raise ValidationError("branch attach index on an empty graph")
            elif br.attach is None or not 0 <= br.attach < n:
                raise ValidationError(f"branch attach index {br.attach} out of range")

    def _connected(self) -> bool:
        n = len(self.selfints)
        seen = {0}
        stack = [0]
        adj = self.adjacency()
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    @classmethod
    def chain(cls, selfints, branches=()) -> "ResolutionGraph":
        """Build a path graph; branches as (attach, coeff) pairs."""
        k = len(selfints)
        edges = frozenset((i, i + 1) for i in range(k - 1))
        brs = tuple(BoundaryBranch(a, Fraction(c)) for a, c in branches)
        return cls(tuple(selfints), edges, brs)

    def with_fork(self, attach: int, selfint: int) -> "ResolutionGraph":
        """Return the graph with one extra leaf curve joined to ``attach``."""
        k = len(self.selfints)
        return ResolutionGraph(self.selfints + (selfint,),
                               self.edges | {(attach, k)},
                               self.branches)

    def with_branch(self, attach: int | None, coeff) -> "ResolutionGraph":
        return ResolutionGraph(self.selfints, self.edges,
                               self.branches + (BoundaryBranch(attach, Fraction(coeff)),))

    @property
    def n_vertices(self) -> int:
        return len(self.selfints)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(len(self.selfints))]
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def branch_coeffs_at(self, v: int | None) -> list[Fraction]:
        return sorted(br.coeff for br in self.branches if br.attach == v)


@dataclass(frozen=True)
class GraphDivisor:
    """Rational multiplicities indexed by the vertices of one graph."""

    coeffs: tuple[Fraction, ...]

    def __getitem__(self, v: int) -> Fraction:
        return self.coeffs[v]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)


class LcClass(str, Enum):
    KLT = "KLT"
    PLT = "PLT"
    LC_CENTER = "LC_CENTER"
    NOT_LC = "NOT_LC"


def intersection_matrix(g: ResolutionGraph) -> list[list[int]]:
    """M[i][i] = -selfint(i); M[i][j] = 1 exactly on edges."""
    n = g.n_vertices
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = -g.selfints[i]
    for i, j in g.edges:
        m[i][j] = m[j][i] = 1
    return m


def _det_bareiss(rows: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [row[:] for row in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def leading_principal_minors(g: ResolutionGraph) -> list[int]:
    m = intersection_matrix(g)
    return [_det_bareiss([row[:k] for row in m[:k]])
            for k in range(1, g.n_vertices + 1)]


def is_contractible(g: ResolutionGraph) -> bool:
    """True iff the intersection matrix is negative definite.

    Checked exactly: the k-th leading principal minor must be nonzero
    with sign (-1)^k, equivalently every pivot of the elimination
    without row swaps is negative (the k-th pivot is the ratio of
    consecutive leading minors, and a zero pivot means a zero minor).
    The empty graph is vacuously contractible.
    """
    n = g.n_vertices
    a = [[Fraction(x) for x in row] for row in intersection_matrix(g)]
    for col in range(n):
        pivot = a[col][col]
        if pivot >= 0:
            return False
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / pivot
                row = a[col]
                for c in range(col, n):
                    if row[c] != 0:
                        a[r][c] -= f * row[c]
    return True


def _solve_exact(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(b)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularSystem("intersection matrix is singular")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
        for r in range(col + 1, n):
            if a[r][col] == 0:
                continue
            f = a[r][col] / a[col][col]
            for c in range(col, n):
                if a[col][c] != 0:
                    a[r][c] -= f * a[col][c]
            b[r] -= f * b[col]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = b[r]
        row = a[r]
        for c in range(r + 1, n):
            if row[c] != 0 and x[c] != 0:
                s -= row[c] * x[c]
        x[r] = s / row[r]
    return x


def boundary_coefficients(g: ResolutionGraph) -> GraphDivisor:
    """Solve for the b_j with zero intersection against every E_j.

    The defining equation at vertex j, with c = selfint(j) and t the sum
    of branch coefficients crossing E_j, is

        (c - 2) + sum_{i adjacent to j} b_i - c * b_j + t = 0,

    using adjunction K.E_j = c - 2 for a rational curve of
    self-intersection -c. The discrepancy of E_j is -b_j.
    """
    n = g.n_vertices
    if n == 0:
        return GraphDivisor(())
    a = [[Fraction(x) for x in row] for row in intersection_matrix(g)]
    rhs = [Fraction(2 - g.selfints[j]) for j in range(n)]
    for br in g.branches:
        rhs[br.attach] -= br.coeff
    return GraphDivisor(tuple(_solve_exact(a, rhs)))


def log_canonical_class(g: ResolutionGraph) -> LcClass:
    """Read the singularity class off the solved coefficients.

    NOT_LC when some b_j exceeds 1; LC_CENTER when the maximum solved
    coefficient is exactly 1; otherwise PLT when a coefficient-1 branch
    passes through, else KLT. On the empty graph the branches cross at
    the ambient smooth point itself, so the blowup there plays the role
    of the missing exceptional curve: its solved coefficient would be
    (sum of branch coefficients) - 1, and the same thresholds apply.
    """
    if not is_contractible(g):
        raise NotApplicable("exceptional configuration is not contractible")
    if g.n_vertices == 0:
        virtual = sum((br.coeff for br in g.branches), Fraction(0)) - 1
        solved: tuple[Fraction, ...] = (virtual,) if g.branches else ()
    else:
        solved = boundary_coefficients(g).coeffs
    if any(b > 1 for b in solved):
        return LcClass.NOT_LC
    if any(b == 1 for b in solved):
        return LcClass.LC_CENTER
    if any(br.coeff == 1 for br in g.branches):
        return LcClass.PLT
    return LcClass.KLT


def cartier_index(g: ResolutionGraph) -> int:
    """Least m >= 1 such that every m*b_j and m*coeff is an integer.

    Equals the lcm of all denominators. Numerically trivial integral
    divisors descend from the resolution, so this is the Cartier index
    of the log canonical divisor at the germ.
    """
    if log_canonical_class(g) is LcClass.NOT_LC:
        raise NotApplicable("germ is not log canonical")
    dens = [b.denominator for b in boundary_coefficients(g)]
    dens.extend(br.coeff.denominator for br in g.branches)
    return lcm(1, *dens)
