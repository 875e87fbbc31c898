import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cubeharm.integrate import CubeDomain
from cubeharm.parser import ExprSource, parse_poly
from cubeharm.poly import Poly


def pp(text: str, n: int | None = None) -> Poly:
    return parse_poly(ExprSource(text, expected_dim=n))


@pytest.fixture
def d21() -> CubeDomain:
    return CubeDomain(2, Fraction(1))


@pytest.fixture
def example1():
    f = pp("x1^2*x2^2", 2)
    h = pp("-1/4*x1^4 + 3/2*x1^2*x2^2 - 1/4*x2^4", 2)
    return f, h


@pytest.fixture
def example2():
    f = pp("x1^8 + 14*x1^4*x2^4 + x2^8", 2)
    h = pp("x1^8 + x2^8 - 28*(x1^6*x2^2 + x1^2*x2^6) + 70*x1^4*x2^4", 2)
    return f, h


# -- hypothesis strategies ----------------------------------------------------

fractions_st = st.fractions(
    min_value=Fraction(-10), max_value=Fraction(10), max_denominator=10
)


def exponents_st(dim: int, max_degree: int = 5):
    return st.lists(
        st.integers(min_value=0, max_value=max_degree), min_size=dim, max_size=dim
    ).filter(lambda e: sum(e) <= max_degree)


def polys_st(dim: int, max_degree: int = 5, max_terms: int = 6):
    return st.dictionaries(
        exponents_st(dim, max_degree).map(tuple),
        fractions_st,
        max_size=max_terms,
    ).map(lambda terms: Poly(dim, terms))


def seeded_random_polys(seed: int, count: int, dims=(2, 3, 4), max_degree: int = 6):
    """Deterministic sample used by the oracle-agreement tests."""
    from cubeharm.sampling import random_poly

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        dim = rng.choice(list(dims))
        out.append(random_poly(rng, dim, max_degree=max_degree))
    return out
