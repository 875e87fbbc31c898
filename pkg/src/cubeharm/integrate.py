"""Exact weighted integration over the hypercube, its boundary, and the
diagonal set where two coordinates tie for the maximum absolute value.

Geometry.  Write M(x) = max_i |x_i| for x in the cube [-r, r]^n.  The cube
splits into 2n cells on which a fixed signed coordinate attains M; on such a
cell the substitution t = |x_i| leaves a box [-t, t]^(n-1) in the remaining
coordinates, and every weighted monomial integral reduces to the closed form

    int_0^r t^a (r - t)^b dt = a! b! r^(a+b+1) / (a+b+1)!

after expanding the weight profile in powers of (r - t).  Tie sets are lower
dimensional and carry no mass.

Diagonal measure convention.  The diagonal set is the union over pairs
i < j of the sheets {|x_k| <= |x_i| = |x_j|}.  Each pair contributes four
sheets (one per sign pattern of the tied coordinates), parametrized by
t in [0, r] and the free box [-t, t]^(n-2), and carries the PROJECTED
measure dt * prod dx_k obtained by projecting out one tied coordinate.
This is NOT the Euclidean surface measure (for n = 2, r = 1 the Euclidean
length is 4*sqrt(2) while the projected mass is 4).  The projected
convention is the one under which the closed-form masses and the mean-value
identities in `identities` hold exactly; switching to Euclidean measure
would scale all diagonal masses by sqrt(2) and leave every mean unchanged.

Boundary weights.  The power weight (r - M)^k / k! vanishes identically on
the boundary for k >= 1, since M = r there.  The boundary masses reported by
`measure` therefore evaluate the weight from each face's own in-face
maximum (the distance from the face point to the face's rim), which agrees
with the plain surface measure at k = 0 and is the convention under which
the boundary mass closed form 2^n n! r^(n+k-1) / (n+k-1)! is verifiable.

Everything here is exact rational arithmetic; no floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import DimensionMismatchError, Exponent, Poly, UniPoly, uni_to_text

RationalLike = Fraction | int | str


@dataclass(frozen=True)
class CubeDomain:
    """The cube [-r, r]^n together with its boundary and diagonal set."""

    n: int
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        if self.n < 2:
            raise ValueError(f"dimension must be >= 2, got {self.n}")
        if self.r <= 0:
            raise ValueError(f"radius must be positive, got {self.r}")


class Region(enum.Enum):
    CUBE = "cube"
    BOUNDARY = "boundary"
    DIAGONAL = "diagonal"


@dataclass(frozen=True)
class Weight:
    """A radial weight profile evaluated at u = r - M(x).

    `power(k)` builds the profile u^k / k!; `from_profile` wraps an arbitrary
    polynomial profile.  Both run through the same integration path.
    """

    profile: UniPoly
    label: str

    @classmethod
    def power(cls, k: int) -> "Weight":
        if k < 0:
            raise ValueError(f"weight exponent must be >= 0, got {k}")
        return cls(UniPoly.monomial(k, Fraction(1, math.factorial(k))), str(k))

    @classmethod
    def from_profile(cls, phi: UniPoly) -> "Weight":
        return cls(phi, uni_to_text(phi))


def _beta_moment(a: int, b: int, r: Fraction) -> Fraction:
    """int_0^r t^a (r - t)^b dt, exactly."""
    return Fraction(math.factorial(a) * math.factorial(b), math.factorial(a + b + 1)) * r ** (
        a + b + 1
    )


def _radial_factor(profile: UniPoly, a: int, r: Fraction) -> Fraction:
    return sum(
        (c * _beta_moment(a, b, r) for b, c in enumerate(profile.coeffs) if c),
        Fraction(0),
    )


def _box_weighted_monomial(alpha: Exponent, dim: int, r: Fraction, profile: UniPoly) -> Fraction:
    """Weighted integral of x^alpha over [-r, r]^dim via argmax cells.

    Valid for any dim >= 1; used directly by integrate_cube and, in dimension
    n - 1, by the face-local boundary masses.
    """
    if any(e % 2 for e in alpha):
        return Fraction(0)
    radial = _radial_factor(profile, sum(alpha) + dim - 1, r)
    if radial == 0:
        return Fraction(0)
    cells = Fraction(0)
    for i in range(dim):
        box = Fraction(1)
        for k, e in enumerate(alpha):
            if k != i:
                box *= Fraction(2, e + 1)
        cells += 2 * box  # both signs of the argmax coordinate
    return cells * radial


def _check_dim(p: Poly, d: CubeDomain) -> None:
    if p.dim != d.n:
        raise DimensionMismatchError(
            f"polynomial dimension {p.dim} does not match domain dimension {d.n}"
        )


def integrate_cube(p: Poly, d: CubeDomain, w: Weight) -> Fraction:
    """Exact weighted integral of p over the solid cube."""
    _check_dim(p, d)
    total = Fraction(0)
    for alpha, coeff in p.sorted_terms():
        total += coeff * _box_weighted_monomial(alpha, d.n, d.r, w.profile)
    return total


def integrate_boundary(p: Poly, d: CubeDomain) -> Fraction:
    """Exact integral of p over the cube's boundary (surface measure).

    Sums plain (n-1)-dimensional integrals over the 2n faces; edge and
    corner overlaps have zero surface measure.
    """
    _check_dim(p, d)
    n, r = d.n, d.r
    total = Fraction(0)
    for alpha, coeff in p.sorted_terms():
        if any(e % 2 for e in alpha):
            continue
        faces = Fraction(0)
        for i in range(n):
            face = 2 * r ** alpha[i]
            for k, e in enumerate(alpha):
                if k != i:
                    face *= Fraction(2, e + 1) * r ** (e + 1)
            faces += face
        total += coeff * faces
    return total


def integrate_diagonal(p: Poly, d: CubeDomain, w: Weight) -> Fraction:
    """Exact weighted integral of p over the diagonal set, projected measure.

    Each pair i < j contributes four sheets parametrized by the tied value
    t in [0, r] and the free box [-t, t]^(n-2); three-way ties are shared
    sheet boundaries of zero measure.
    """
    _check_dim(p, d)
    n, r = d.n, d.r
    total = Fraction(0)
    for alpha, coeff in p.sorted_terms():
        if any(e % 2 for e in alpha):
            continue
        radial = _radial_factor(w.profile, sum(alpha) + n - 2, r)
        if radial == 0:
            continue
        pairs = Fraction(0)
        for i in range(n):
            for j in range(i + 1, n):
                box = Fraction(1)
                for k, e in enumerate(alpha):
                    if k != i and k != j:
                        box *= Fraction(2, e + 1)
                pairs += 4 * box  # four sign patterns of the tied pair
        total += coeff * pairs * radial
    return total


def measure(d: CubeDomain, region: Region, k: int = 0) -> Fraction:
    """Weighted mass of a region under the power weight of exponent k.

    Cube and diagonal masses integrate the constant 1 through the engine.
    Boundary masses use the face-local weight convention described in the
    module docstring; at k = 0 this is the ordinary surface area, and the
    restriction of the global weight to the boundary would be identically
    zero for k >= 1.
    """
    if k < 0:
        raise ValueError(f"weight exponent must be >= 0, got {k}")
    one = Poly.const(d.n, 1)
    if region is Region.CUBE:
        return integrate_cube(one, d, Weight.power(k))
    if region is Region.DIAGONAL:
        return integrate_diagonal(one, d, Weight.power(k))
    if region is Region.BOUNDARY:
        face = _box_weighted_monomial(
            (0,) * (d.n - 1), d.n - 1, d.r, Weight.power(k).profile
        )
        return 2 * d.n * face
    raise ValueError(f"unknown region {region!r}")
