"""Independent symbolic reference for the exact integration engine.

Everything here goes through sympy's univariate integrator on explicit cell
parametrizations, so no Beta-moment closed form or monomial bookkeeping is
shared with the engine under test.  Values come back as exact Fractions.

Run as a script to regenerate the frozen constants used in the test suite:

    python3 tests/reference.py
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy as sp

from cubeharm.poly import Poly, UniPoly


def _to_sympy(p: Poly, xs) -> sp.Expr:
    total = sp.Integer(0)
    for exps, coeff in p.terms.items():
        term = sp.Rational(coeff.numerator, coeff.denominator)
        for x, e in zip(xs, exps):
            term *= x**e
        total += term
    return total


def _profile_sympy(profile: UniPoly, u) -> sp.Expr:
    total = sp.Integer(0)
    for power, c in enumerate(profile.coeffs):
        total += sp.Rational(c.numerator, c.denominator) * u**power
    return total


def _fraction(value) -> Fraction:
    value = sp.nsimplify(value)
    return Fraction(int(sp.numer(value)), int(sp.denom(value)))


def ref_cube(p: Poly, r: Fraction, profile: UniPoly) -> Fraction:
    """Weighted cube integral via per-cell iterated sympy integration."""
    n = p.dim
    xs = sp.symbols(f"x1:{n + 1}")
    t = sp.Symbol("t", nonnegative=True)
    rr = sp.Rational(r.numerator, r.denominator)
    expr = _to_sympy(p, xs)
    w = _profile_sympy(profile, rr - t)
    total = sp.Integer(0)
    for i in range(n):
        for sigma in (1, -1):
            cell = expr.subs(xs[i], sigma * t)
            for k in range(n):
                if k != i:
                    cell = sp.integrate(cell, (xs[k], -t, t))
            total += sp.integrate(cell * w, (t, 0, rr))
    return _fraction(total)


def ref_boundary(p: Poly, r: Fraction) -> Fraction:
    n = p.dim
    xs = sp.symbols(f"x1:{n + 1}")
    rr = sp.Rational(r.numerator, r.denominator)
    expr = _to_sympy(p, xs)
    total = sp.Integer(0)
    for i in range(n):
        for sigma in (1, -1):
            face = expr.subs(xs[i], sigma * rr)
            for k in range(n):
                if k != i:
                    face = sp.integrate(face, (xs[k], -rr, rr))
            total += face
    return _fraction(total)


def ref_diagonal(p: Poly, r: Fraction, profile: UniPoly) -> Fraction:
    """Projected-measure diagonal integral via per-sheet parametrization."""
    n = p.dim
    xs = sp.symbols(f"x1:{n + 1}")
    t = sp.Symbol("t", nonnegative=True)
    rr = sp.Rational(r.numerator, r.denominator)
    expr = _to_sympy(p, xs)
    w = _profile_sympy(profile, rr - t)
    total = sp.Integer(0)
    for i in range(n):
        for j in range(i + 1, n):
            for si, sj in itertools.product((1, -1), repeat=2):
                sheet = expr.subs({xs[i]: si * t, xs[j]: sj * t})
                for k in range(n):
                    if k not in (i, j):
                        sheet = sp.integrate(sheet, (xs[k], -t, t))
                total += sp.integrate(sheet * w, (t, 0, rr))
    return _fraction(total)


def _omega(k: int) -> UniPoly:
    import math

    return UniPoly.monomial(k, Fraction(1, math.factorial(k)))


if __name__ == "__main__":
    from cubeharm.onesided import pair_square_product
    from cubeharm.parser import ExprSource, parse_poly

    def pp(text, n):
        return parse_poly(ExprSource(text, expected_dim=n))

    print("V3 =", ref_cube(pair_square_product(3), Fraction(1), _omega(0)))
    f1 = pp("x1^2*x2^2", 2)
    h1 = pp("-1/4*x1^4 + 3/2*x1^2*x2^2 - 1/4*x2^4", 2)
    print("W(t^3/6, ex1) =", ref_cube(f1 - h1, Fraction(1), UniPoly.monomial(1)))
    print("diag(x1^2*x2^2, (3,1), k=2) =", ref_diagonal(pp("x1^2*x2^2", 3), Fraction(1), _omega(2)))
    print("cube(x1^2*x2^4, (3,1), k=2) =", ref_cube(pp("x1^2*x2^4", 3), Fraction(1), _omega(2)))
    print("boundary(x1^2*x2^4, (3,2)) =", ref_boundary(pp("x1^2*x2^4", 3), Fraction(2)))
    print("L1(example 2) =", ref_cube(pp("28*x1^6*x2^2-56*x1^4*x2^4+28*x1^2*x2^6", 2), Fraction(1), _omega(0)))
