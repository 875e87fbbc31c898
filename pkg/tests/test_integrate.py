import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

import reference
from conftest import polys_st, pp
from cubeharm.integrate import (
    CubeDomain,
    Region,
    Weight,
    integrate_boundary,
    integrate_cube,
    integrate_diagonal,
    measure,
)
from cubeharm.poly import DimensionMismatchError, Poly
from cubeharm.sampling import random_poly

D21 = CubeDomain(2, Fraction(1))
D31 = CubeDomain(3, Fraction(1))


def closed_form_mass(region: Region, n: int, r: Fraction, k: int) -> Fraction:
    """The three closed-form masses, written independently of the engine."""
    if region is Region.CUBE:
        return Fraction(2**n * math.factorial(n), math.factorial(n + k)) * r ** (n + k)
    scale = Fraction(2**n if region is Region.BOUNDARY else 2 ** (n - 1))
    return scale * Fraction(math.factorial(n), math.factorial(n + k - 1)) * r ** (
        n + k - 1
    )


class TestCubeDomain:
    def test_rejects_low_dimension(self):
        with pytest.raises(ValueError):
            CubeDomain(1, Fraction(1))

    def test_rejects_nonpositive_radius(self):
        with pytest.raises(ValueError):
            CubeDomain(2, Fraction(0))

    def test_radius_coerced_to_fraction(self):
        assert CubeDomain(2, "3/2").r == Fraction(3, 2)


class TestCube:
    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("k", [0, 1, 3])
    def test_constant_matches_closed_form(self, n, k):
        d = CubeDomain(n, Fraction(2, 3))
        value = integrate_cube(Poly.const(n, 1), d, Weight.power(k))
        assert value == closed_form_mass(Region.CUBE, n, Fraction(2, 3), k)

    def test_product_of_squares(self):
        assert integrate_cube(pp("x1^2*x2^2"), D21, Weight.power(0)) == Fraction(4, 9)

    def test_example1_error_integral(self):
        p = pp("1/4*(x1^2 - x2^2)^2")
        assert integrate_cube(p, D21, Weight.power(0)) == Fraction(8, 45)

    def test_weighted_fixture(self):
        # frozen from tests/reference.py: cube(x1^2*x2^4, (3,1), k=2) = 4/825
        p = pp("x1^2*x2^4", 3)
        assert integrate_cube(p, D31, Weight.power(2)) == Fraction(4, 825)

    def test_odd_monomials_vanish(self):
        assert integrate_cube(pp("x1^3*x2^2"), D21, Weight.power(1)) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            integrate_cube(pp("x1", 3), D21, Weight.power(0))


class TestBoundary:
    def test_surface_area(self):
        assert integrate_boundary(Poly.const(2, 1), D21) == 8

    def test_harmonic_quadratic_cancels(self):
        # faces x1 = +-1 give 2*(2 - 2/3), faces x2 = +-1 give the negative
        assert integrate_boundary(pp("x1^2 - x2^2"), D21) == 0

    def test_surface_area_n3_r2(self):
        assert integrate_boundary(Poly.const(3, 1), CubeDomain(3, Fraction(2))) == 96

    def test_fixture(self):
        # frozen from tests/reference.py: boundary(x1^2*x2^4, (3,2)) = 6144/5
        p = pp("x1^2*x2^4", 3)
        assert integrate_boundary(p, CubeDomain(3, Fraction(2))) == Fraction(6144, 5)


class TestDiagonal:
    def test_mass(self):
        assert integrate_diagonal(Poly.const(2, 1), D21, Weight.power(0)) == 4

    def test_square_moment(self):
        # four sheets, each int_0^1 t^2 dt
        assert integrate_diagonal(pp("x1^2", 2), D21, Weight.power(0)) == Fraction(4, 3)

    def test_weighted_mass_n3(self):
        assert integrate_diagonal(Poly.const(3, 1), D31, Weight.power(1)) == 4

    def test_weighted_fixture(self):
        # frozen from tests/reference.py: diag(x1^2*x2^2, (3,1), k=2) = 5/126
        p = pp("x1^2*x2^2", 3)
        assert integrate_diagonal(p, D31, Weight.power(2)) == Fraction(5, 126)

    def test_requires_two_dimensions(self):
        with pytest.raises(ValueError):
            CubeDomain(1, Fraction(1))


class TestMeasure:
    def test_unit_square(self):
        assert measure(D21, Region.CUBE, 0) == 4

    def test_diagonal_n3(self):
        assert measure(D31, Region.DIAGONAL, 0) == 12

    def test_weighted_square(self):
        assert measure(D21, Region.CUBE, 1) == Fraction(4, 3)

    @pytest.mark.parametrize("region", list(Region))
    @pytest.mark.parametrize("n", [2, 3, 5])
    @pytest.mark.parametrize("k", [0, 1, 2, 4])
    @pytest.mark.parametrize("r", [Fraction(1, 2), Fraction(1), Fraction(3)])
    def test_closed_forms(self, region, n, k, r):
        d = CubeDomain(n, r)
        assert measure(d, region, k) == closed_form_mass(region, n, r, k)

    def test_boundary_weight_is_face_local(self):
        # The global weight (r - max|x|)^k/k! is identically zero on the
        # boundary for k >= 1; the reported mass uses each face's in-face
        # maximum instead, which is what the closed form describes.
        assert measure(D21, Region.BOUNDARY, 1) == 4
        assert measure(D21, Region.BOUNDARY, 0) == integrate_boundary(
            Poly.const(2, 1), D21
        )

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            measure(D21, Region.CUBE, -1)


class TestProperties:
    @given(polys_st(2, max_degree=5), polys_st(2, max_degree=5))
    @settings(max_examples=25, deadline=None)
    def test_linearity(self, p, q):
        w = Weight.power(1)
        a, b = Fraction(3, 7), Fraction(-2, 5)
        combo = p.scale(a) + q.scale(b)
        assert integrate_cube(combo, D21, w) == a * integrate_cube(
            p, D21, w
        ) + b * integrate_cube(q, D21, w)
        assert integrate_diagonal(combo, D21, w) == a * integrate_diagonal(
            p, D21, w
        ) + b * integrate_diagonal(q, D21, w)
        assert integrate_boundary(combo, D21) == a * integrate_boundary(
            p, D21
        ) + b * integrate_boundary(q, D21)

    @given(polys_st(3, max_degree=4))
    @settings(max_examples=20, deadline=None)
    def test_symmetry_under_permutation_and_sign_flip(self, p):
        # x_i -> flips[i] * x_perm[i], a signed permutation of coordinates
        perm = (2, 0, 1)
        flips = (-1, 1, -1)
        terms = {}
        for exps, coeff in p.terms.items():
            new_exps = tuple(exps[perm[i]] for i in range(3))
            sign = 1
            for axis in range(3):
                if flips[axis] < 0 and new_exps[axis] % 2:
                    sign = -sign
            terms[new_exps] = terms.get(new_exps, Fraction(0)) + sign * coeff
        transformed = Poly(3, terms)
        w = Weight.power(1)
        assert integrate_cube(p, D31, w) == integrate_cube(transformed, D31, w)
        assert integrate_diagonal(p, D31, w) == integrate_diagonal(transformed, D31, w)
        assert integrate_boundary(p, D31) == integrate_boundary(transformed, D31)

    @pytest.mark.parametrize("r", [Fraction(1, 2), Fraction(3)])
    def test_homogeneous_scaling(self, r):
        p = pp("x1^2*x2^2 - 2*x2^4")  # homogeneous of degree 4
        d_unit, d_r = D21, CubeDomain(2, r)
        w = Weight.power(0)
        assert integrate_cube(p, d_r, w) == r ** (2 + 4) * integrate_cube(p, d_unit, w)
        assert integrate_boundary(p, d_r) == r ** (2 + 4 - 1) * integrate_boundary(
            p, d_unit
        )
        assert integrate_diagonal(p, d_r, w) == r ** (2 + 4 - 1) * integrate_diagonal(
            p, d_unit, w
        )


class TestSymbolicReference:
    """Exact agreement with the sympy-backed reference implementations."""

    @pytest.mark.parametrize("seed", [11, 12, 13])
    def test_cube_matches_reference(self, seed):
        rng = random.Random(seed)
        p = random_poly(rng, 2, max_degree=5, max_terms=5)
        w = Weight.power(rng.randint(0, 2))
        assert integrate_cube(p, D21, w) == reference.ref_cube(p, D21.r, w.profile)

    @pytest.mark.parametrize("seed", [21, 22])
    def test_diagonal_matches_reference(self, seed):
        rng = random.Random(seed)
        p = random_poly(rng, 2, max_degree=5, max_terms=5)
        w = Weight.power(rng.randint(0, 2))
        assert integrate_diagonal(p, D21, w) == reference.ref_diagonal(
            p, D21.r, w.profile
        )

    def test_boundary_matches_reference(self):
        rng = random.Random(31)
        p = random_poly(rng, 3, max_degree=4, max_terms=4)
        r = Fraction(3, 2)
        assert integrate_boundary(p, CubeDomain(3, r)) == reference.ref_boundary(p, r)

    def test_cube_matches_reference_n3(self):
        rng = random.Random(41)
        p = random_poly(rng, 3, max_degree=4, max_terms=4)
        w = Weight.power(1)
        assert integrate_cube(p, D31, w) == reference.ref_cube(p, D31.r, w.profile)
