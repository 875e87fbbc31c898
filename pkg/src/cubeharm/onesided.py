"""Certificates for best one-sided L1 approximation from below by harmonic
polynomials on the cube.

The optimality criterion: if h is harmonic, h <= f on the cube, and f - h
vanishes on the whole diagonal set, then h minimizes the L1 distance to f
among harmonic minorants, and the error is the plain integral of f - h.

Vanishing on the diagonal set is decided exactly by integrating the square:
(f-h)^2 is continuous and nonnegative, so its weighted diagonal integral is
zero precisely when f-h vanishes on every sheet.

One-sidedness (h <= f everywhere) is genuinely hard for general polynomials,
so it is reported at one of three strengths:

  certified   f - h factors exactly as g * prod_{i<j} (x_i^2 - x_j^2)^2 with
              g certified nonnegative (even powers with nonnegative
              coefficients, or an exact polynomial square); sound proof
  heuristic   f - h was nonnegative on a uniform rational grid; no proof
  failed      a grid point with a negative value was found (with witness)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .integrate import CubeDomain, Weight, integrate_cube, integrate_diagonal
from .kernel import is_polyharmonic
from .poly import (
    Poly,
    UniPoly,
    divide_exact,
    evaluate,
    partial,
    poly_sqrt,
    poly_to_text,
    rational_to_text,
)

CERTIFIED = "certified"
HEURISTIC = "heuristic"
FAILED = "failed"

DEFAULT_GRID = 41
MAX_GRID_POINTS = 10**6


def vanishes_on_diagonal(p: Poly, d: CubeDomain) -> bool:
    """True iff p is identically zero on the diagonal set."""
    return integrate_diagonal(p * p, d, Weight.power(0)) == 0


def gradient_vanishes_on_diagonal(p: Poly, d: CubeDomain) -> bool:
    """True iff every partial derivative of p vanishes on the diagonal set."""
    return all(
        vanishes_on_diagonal(partial(p, axis), d) for axis in range(1, p.dim + 1)
    )


def pair_square_product(dim: int) -> Poly:
    """prod over i < j of (x_i^2 - x_j^2)^2 in the given dimension."""
    out = Poly.const(dim, 1)
    for i in range(1, dim + 1):
        for j in range(i + 1, dim + 1):
            xi2 = Poly.variable(dim, i) ** 2
            xj2 = Poly.variable(dim, j) ** 2
            out = out * (xi2 - xj2) ** 2
    return out


def _certified_nonnegative(g: Poly) -> bool:
    if g.is_zero:
        return True
    if all(
        coeff > 0 and not any(e % 2 for e in exps) for exps, coeff in g.terms.items()
    ):
        return True
    return poly_sqrt(g) is not None


def _grid_values(dim: int, r: Fraction, points_per_axis: int):
    if points_per_axis == 1:
        coords = [Fraction(0)]
    else:
        coords = [
            Fraction(2 * i, points_per_axis - 1) * r - r
            for i in range(points_per_axis)
        ]
    return coords


@dataclass(frozen=True)
class OneSidedness:
    """Outcome of a nonnegativity check of f - h on the cube."""

    kind: str  # certified | heuristic | failed
    grid_points_per_axis: int | None = None
    grid_min: Fraction | None = None
    negative_witness: tuple[Fraction, ...] | None = None
    cofactor: Poly | None = None

    def to_dict(self) -> dict:
        out: dict = {"status": self.kind}
        if self.grid_points_per_axis is not None:
            out["grid_points_per_axis"] = self.grid_points_per_axis
        if self.grid_min is not None:
            out["grid_min"] = rational_to_text(self.grid_min)
        if self.negative_witness is not None:
            out["negative_witness"] = [rational_to_text(v) for v in self.negative_witness]
        if self.cofactor is not None:
            out["cofactor"] = poly_to_text(self.cofactor)
        return out


def check_onesided(
    f_minus_h: Poly,
    d: CubeDomain,
    grid_points_per_axis: int = DEFAULT_GRID,
    max_grid_points: int = MAX_GRID_POINTS,
) -> OneSidedness:
    """Decide (or sample) nonnegativity of f - h on the cube.

    The certified path divides out the squared pairwise factor shared by all
    diagonal-vanishing squares; the heuristic path evaluates exactly on a
    uniform rational grid, shrunk if its total size would exceed
    max_grid_points.
    """
    if f_minus_h.dim != d.n:
        raise ValueError(
            f"polynomial dimension {f_minus_h.dim} does not match domain {d.n}"
        )
    quotient, remainder = divide_exact(f_minus_h, pair_square_product(d.n))
    if remainder.is_zero and _certified_nonnegative(quotient):
        return OneSidedness(kind=CERTIFIED, cofactor=quotient)

    npts = max(2, grid_points_per_axis)
    while npts > 2 and npts**d.n > max_grid_points:
        npts -= 1
    coords = _grid_values(d.n, d.r, npts)
    best: Fraction | None = None
    witness: tuple[Fraction, ...] | None = None

    def walk(point: list[Fraction], axis: int):
        nonlocal best, witness
        if axis == d.n:
            value = evaluate(f_minus_h, point)
            if best is None or value < best:
                best = value
                witness = tuple(point)
            return
        for c in coords:
            if witness is not None and best is not None and best < 0:
                return  # a single negative sample already settles it
            walk(point + [c], axis + 1)

    walk([], 0)
    assert best is not None
    if best < 0:
        return OneSidedness(
            kind=FAILED,
            grid_points_per_axis=npts,
            grid_min=best,
            negative_witness=witness,
        )
    return OneSidedness(kind=HEURISTIC, grid_points_per_axis=npts, grid_min=best)


@dataclass(frozen=True)
class ApproxCertificate:
    """Checked hypotheses and exact error for a candidate best approximant."""

    f: Poly
    h: Poly
    domain: CubeDomain
    harmonic_ok: bool
    vanishes_on_diagonal: bool
    gradient_vanishes_on_diagonal: bool
    onesided: OneSidedness
    l1_error: Fraction | None

    @property
    def optimality_certified(self) -> bool:
        """Sound proof of best-approximant optimality from below."""
        return (
            self.harmonic_ok
            and self.vanishes_on_diagonal
            and self.onesided.kind == CERTIFIED
        )

    def to_dict(self) -> dict:
        return {
            "f": poly_to_text(self.f),
            "h": poly_to_text(self.h),
            "n": self.domain.n,
            "r": rational_to_text(self.domain.r),
            "harmonic_ok": self.harmonic_ok,
            "vanishes_on_diagonal": self.vanishes_on_diagonal,
            "gradient_vanishes_on_diagonal": self.gradient_vanishes_on_diagonal,
            "onesided": self.onesided.to_dict(),
            "optimality_certified": self.optimality_certified,
            "l1_error": None if self.l1_error is None else rational_to_text(self.l1_error),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def certify_best_approx(
    f: Poly,
    h: Poly,
    d: CubeDomain,
    grid_points_per_axis: int = DEFAULT_GRID,
) -> ApproxCertificate:
    """Check every hypothesis of the diagonal-interpolation optimality
    criterion and compute the exact L1 error when f - h is not known to dip
    negative."""
    diff = f - h
    onesided = check_onesided(diff, d, grid_points_per_axis=grid_points_per_axis)
    l1_error = None
    if onesided.kind in (CERTIFIED, HEURISTIC):
        l1_error = integrate_cube(diff, d, Weight.power(0))
    return ApproxCertificate(
        f=f,
        h=h,
        domain=d,
        harmonic_ok=is_polyharmonic(h, 1),
        vanishes_on_diagonal=vanishes_on_diagonal(diff, d),
        gradient_vanishes_on_diagonal=gradient_vanishes_on_diagonal(diff, d),
        onesided=onesided,
        l1_error=l1_error,
    )


def weighted_l1_error(
    f: Poly,
    h: Poly,
    d: CubeDomain,
    phi: UniPoly,
    check_points: int = 101,
) -> Fraction:
    """Exact weighted error int (f - h) phi''(r - M) over the cube.

    Requires phi(0) = phi'(0) = 0 (symbolic check) and phi', phi'' >= 0 on
    [0, r]; the sign conditions are sampled on a uniform rational grid of
    check_points values, which is a heuristic, not a proof.  f - h must not
    be negative anywhere on the sampling grid of check_onesided.
    """
    from .identities import WeightConditionError, _require_vanishing

    _require_vanishing(phi, 2)
    d1 = phi.derivative(1)
    d2 = phi.derivative(2)
    for j in range(check_points):
        u = d.r * Fraction(j, max(1, check_points - 1))
        if d1(u) < 0:
            raise WeightConditionError(f"phi' is negative at u = {u}: {d1(u)}")
        if d2(u) < 0:
            raise WeightConditionError(f"phi'' is negative at u = {u}: {d2(u)}")
    diff = f - h
    onesided = check_onesided(diff, d)
    if onesided.kind == FAILED:
        raise ValueError(
            f"f - h is negative at {tuple(map(str, onesided.negative_witness or ()))}"
        )
    return integrate_cube(diff, d, Weight.from_profile(d2))
