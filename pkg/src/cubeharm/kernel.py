"""Bases of harmonic and polyharmonic polynomials via exact nullspaces.

The m-fold Laplacian maps homogeneous degree-d polynomials linearly onto
degree d - 2m, so its kernel is computed degree by degree as the exact
rational nullspace of a small matrix in monomial coordinates.  Pivoting is
deterministic (columns in descending graded-lex order, first nonzero pivot),
and basis vectors are raw pivot-column nullspace vectors with the free
coordinate set to 1; nothing is normalized, so two runs emit byte-identical
bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import (
    DEFAULT_LIMITS,
    Exponent,
    Limits,
    Poly,
    grlex_key,
    iterated_laplacian,
)


@dataclass(frozen=True)
class BasisRequest:
    """Ask for all polynomials of degree <= max_degree annihilated by the
    m-fold Laplacian in dimension n (m = 1 means harmonic)."""

    n: int
    max_degree: int
    m: int = 1

    def validate(self, limits: Limits = DEFAULT_LIMITS) -> None:
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if self.max_degree < 0:
            raise ValueError(f"max_degree must be >= 0, got {self.max_degree}")
        if self.m < 1:
            raise ValueError(f"polyharmonic order must be >= 1, got {self.m}")
        if self.n > limits.max_dim:
            raise ValueError(
                f"dimension {self.n} exceeds the configured limit {limits.max_dim}"
            )
        if self.max_degree > limits.max_degree:
            raise ValueError(
                f"degree {self.max_degree} exceeds the configured limit {limits.max_degree}"
            )


@dataclass(frozen=True)
class BasisSet:
    elements: tuple[Poly, ...]
    request: BasisRequest

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def monomials_of_degree(n: int, d: int) -> list[Exponent]:
    """All exponent tuples of total degree d, descending graded-lex order."""
    out: list[Exponent] = []

    def rec(prefix: list[int], remaining: int, axes_left: int):
        if axes_left == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, axes_left - 1)

    rec([], d, n)
    out.sort(key=grlex_key, reverse=True)
    return out


def _nullspace(matrix: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Nullspace basis vectors of an exact rational matrix.

    Reduced row echelon form with first-nonzero pivoting; one vector per
    free column, free coordinate 1, in ascending free-column order.
    """
    rows = [row[:] for row in matrix]
    nrows = len(rows)
    pivot_cols: list[int] = []
    row = 0
    for col in range(ncols):
        sel = None
        for i in range(row, nrows):
            if rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        rows[row], rows[sel] = rows[sel], rows[row]
        inv = 1 / rows[row][col]
        rows[row] = [v * inv for v in rows[row]]
        for i in range(nrows):
            if i != row and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[row])]
        pivot_cols.append(col)
        row += 1
    pivot_set = set(pivot_cols)
    vectors: list[list[Fraction]] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for rr, pc in enumerate(pivot_cols):
            v[pc] = -rows[rr][free]
        vectors.append(v)
    return vectors


def homogeneous_kernel(n: int, d: int, m: int = 1) -> BasisSet:
    """Basis of homogeneous degree-d polynomials annihilated by the m-fold
    Laplacian."""
    if n < 1 or d < 0 or m < 1:
        raise ValueError(f"invalid kernel request n={n}, d={d}, m={m}")
    req = BasisRequest(n, d, m)
    cols = monomials_of_degree(n, d)
    target_degree = d - 2 * m
    if target_degree < 0:
        elements = tuple(Poly.monomial(n, e) for e in cols)
        return BasisSet(elements, req)
    target = monomials_of_degree(n, target_degree)
    index = {e: i for i, e in enumerate(target)}
    matrix = [[Fraction(0)] * len(cols) for _ in target]
    for j, exps in enumerate(cols):
        image = iterated_laplacian(Poly.monomial(n, exps), m)
        for e, c in image.terms.items():
            matrix[index[e]][j] += c
    vectors = _nullspace(matrix, len(cols))
    elements = tuple(
        Poly(n, {cols[i]: c for i, c in enumerate(v) if c}) for v in vectors
    )
    return BasisSet(elements, req)


def graded_basis(req: BasisRequest, limits: Limits = DEFAULT_LIMITS) -> BasisSet:
    """Concatenation of the homogeneous kernels for d = 0 .. max_degree."""
    req.validate(limits)
    elements: list[Poly] = []
    for d in range(req.max_degree + 1):
        elements.extend(homogeneous_kernel(req.n, d, req.m).elements)
    return BasisSet(tuple(elements), req)


def is_polyharmonic(p: Poly, m: int) -> bool:
    """True iff the m-fold Laplacian of p vanishes identically."""
    if m < 1:
        raise ValueError(f"polyharmonic order must be >= 1, got {m}")
    return iterated_laplacian(p, m).is_zero
