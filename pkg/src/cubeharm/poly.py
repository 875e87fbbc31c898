"""Sparse multivariate polynomial arithmetic over exact rationals.

A polynomial in n variables is stored as a mapping from exponent tuples to
Fraction coefficients:

    x1^2 * x2  in dim 2  ->  {(2, 1): Fraction(1)}

Zero coefficients are never stored, so equality of the term maps is equality
of polynomials.  All arithmetic is exact; no floats enter this module.

Terms are ordered graded-lexicographically (total degree first, then
lexicographic with x1 strongest).  Serialization walks terms in descending
graded-lex order, which makes the text form canonical: equal polynomials
serialize to byte-identical strings.

Variables are addressed 1-based (axis 1 is x1), matching the surface syntax
used by the parser and the CLI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]
RationalLike = Fraction | int | str


class DimensionMismatchError(ValueError):
    """Operands or arguments live in different ambient dimensions."""


@dataclass(frozen=True)
class Limits:
    """Desk-scale guardrails for user-supplied inputs.

    These are enforced at input boundaries (parser, basis requests), not
    inside arithmetic, so internal products may exceed them freely.  Pass a
    custom instance to lift them.
    """

    max_dim: int = 8
    max_degree: int = 16


DEFAULT_LIMITS = Limits()


def grlex_key(exps: Exponent) -> tuple[int, Exponent]:
    """Sort key realizing graded-lexicographic order (ascending)."""
    return (sum(exps), exps)


def rational_to_text(q: Fraction) -> str:
    """Render a rational as "p/q" with the sign on the numerator."""
    return f"{q.numerator}/{q.denominator}"


class Poly:
    """Immutable sparse polynomial over Fraction coefficients."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[Exponent, RationalLike] | None = None):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        clean: dict[Exponent, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != dim:
                raise DimensionMismatchError(
                    f"exponent tuple {exps} has length {len(exps)}, expected {dim}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = Fraction(coeff)
            if c:
                clean[tuple(exps)] = c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "Poly":
        return cls(dim, {})

    @classmethod
    def const(cls, dim: int, value: RationalLike) -> "Poly":
        return cls(dim, {(0,) * dim: Fraction(value)})

    @classmethod
    def variable(cls, dim: int, axis: int) -> "Poly":
        """The polynomial x_axis (1-based axis index)."""
        if not 1 <= axis <= dim:
            raise ValueError(f"axis {axis} out of range for dimension {dim}")
        exps = [0] * dim
        exps[axis - 1] = 1
        return cls(dim, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, dim: int, exps: Sequence[int], coeff: RationalLike = 1) -> "Poly":
        return cls(dim, {tuple(exps): Fraction(coeff)})

    # -- inspection ----------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def total_degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order (leading term first)."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self._terms, key=grlex_key)
        return exps, self._terms[exps]

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same_dim(other)
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return Poly(self.dim, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.dim, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check_same_dim(other)
            out: dict[Exponent, Fraction] = {}
            for ea, ca in self._terms.items():
                for eb, cb in other._terms.items():
                    key = tuple(a + b for a, b in zip(ea, eb))
                    out[key] = out.get(key, Fraction(0)) + ca * cb
            return Poly(self.dim, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.dim, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, c: RationalLike) -> "Poly":
        c = Fraction(c)
        return Poly(self.dim, {e: c * v for e, v in self._terms.items()})

    def _check_same_dim(self, other: "Poly") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"dimension mismatch: {self.dim} vs {other.dim}"
            )

    # -- equality ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.dim == other.dim
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.dim}, {poly_to_text(self)!r})"


def evaluate(p: Poly, point: Sequence[RationalLike]) -> Fraction:
    """Exact evaluation of p at a rational point."""
    if len(point) != p.dim:
        raise DimensionMismatchError(
            f"point has {len(point)} coordinates, polynomial has dimension {p.dim}"
        )
    vals = [Fraction(v) for v in point]
    total = Fraction(0)
    for exps, coeff in p.terms.items():
        term = coeff
        for v, e in zip(vals, exps):
            if e:
                term *= v**e
        total += term
    return total


def partial(p: Poly, axis: int) -> Poly:
    """Exact partial derivative with respect to x_axis (1-based)."""
    if not 1 <= axis <= p.dim:
        raise ValueError(f"axis {axis} out of range for dimension {p.dim}")
    i = axis - 1
    out: dict[Exponent, Fraction] = {}
    for exps, coeff in p.terms.items():
        e = exps[i]
        if e == 0:
            continue
        new = list(exps)
        new[i] = e - 1
        key = tuple(new)
        out[key] = out.get(key, Fraction(0)) + coeff * e
    return Poly(p.dim, out)


def laplacian(p: Poly) -> Poly:
    """Sum of second partials over all axes."""
    out: dict[Exponent, Fraction] = {}
    for exps, coeff in p.terms.items():
        for i, e in enumerate(exps):
            if e < 2:
                continue
            new = list(exps)
            new[i] = e - 2
            key = tuple(new)
            out[key] = out.get(key, Fraction(0)) + coeff * e * (e - 1)
    return Poly(p.dim, out)


def iterated_laplacian(p: Poly, m: int) -> Poly:
    """m-fold Laplacian, m >= 1."""
    if m < 1:
        raise ValueError(f"iteration count must be >= 1, got {m}")
    out = p
    for _ in range(m):
        out = laplacian(out)
    return out


# -- univariate profiles -----------------------------------------------------


class UniPoly:
    """Univariate polynomial with Fraction coefficients, index = power.

    Used for radial weight profiles in the variable t.  Trailing zero
    coefficients are trimmed so representations are canonical.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls([])

    @classmethod
    def monomial(cls, power: int, coeff: RationalLike = 1) -> "UniPoly":
        return cls([0] * power + [Fraction(coeff)])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def derivative(self, order: int = 1) -> "UniPoly":
        if order < 0:
            raise ValueError("derivative order must be >= 0")
        if order == 0:
            return self
        if order > self.degree:
            return UniPoly.zero()
        # coefficient of t^(i - order) picks up the falling factorial i!/(i-order)!
        out = [
            c * Fraction(math.factorial(i), math.factorial(i - order))
            for i, c in enumerate(self.coeffs)
            if i >= order
        ]
        return UniPoly(out)

    def __call__(self, value: RationalLike) -> Fraction:
        v = Fraction(value)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * v + c
        return total

    def eval_float(self, value: float) -> float:
        total = 0.0
        for c in reversed(self.coeffs):
            total = total * value + float(c)
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({uni_to_text(self)!r})"


# -- text forms ---------------------------------------------------------------


def _term_to_text(exps: Exponent, coeff: Fraction, var: str = "x") -> str:
    parts = [rational_to_text(coeff)]
    for i, e in enumerate(exps):
        if e == 0:
            continue
        name = var if var == "t" else f"{var}{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def poly_to_text(p: Poly) -> str:
    """Canonical text form: descending graded-lex terms, coefficients as "p/q".

    The empty polynomial serializes as "0/1".  parse_poly inverts this
    byte-exactly.
    """
    if p.is_zero:
        return "0/1"
    pieces: list[str] = []
    for exps, coeff in p.sorted_terms():
        if not pieces:
            pieces.append(_term_to_text(exps, coeff))
        elif coeff < 0:
            pieces.append("- " + _term_to_text(exps, -coeff))
        else:
            pieces.append("+ " + _term_to_text(exps, coeff))
    return " ".join(pieces)


def uni_to_text(phi: UniPoly) -> str:
    """Canonical text form of a univariate profile in the variable t."""
    if phi.is_zero:
        return "0/1"
    pieces: list[str] = []
    for power in range(phi.degree, -1, -1):
        c = phi.coeff(power)
        if not c:
            continue
        text = _term_to_text((power,), abs(c), var="t")
        if not pieces:
            pieces.append(text if c > 0 else "-" + text)
        else:
            pieces.append(("+ " if c > 0 else "- ") + text)
    return " ".join(pieces)


# -- generic polynomial algorithms ---------------------------------------------


def divide_exact(p: Poly, divisor: Poly) -> tuple[Poly, Poly]:
    """Single-divisor division: p = quotient * divisor + remainder.

    Uses the graded-lex leading term of the divisor; no monomial of the
    remainder is divisible by it.  remainder == 0 therefore certifies exact
    divisibility (and conversely, a multiple always reduces to remainder 0).
    """
    p._check_same_dim(divisor)
    if divisor.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    lead_e, lead_c = divisor.leading_term()
    quotient = Poly.zero(p.dim)
    remainder = Poly.zero(p.dim)
    work = p
    while not work.is_zero:
        exps, coeff = work.leading_term()
        diff = tuple(a - b for a, b in zip(exps, lead_e))
        if all(d >= 0 for d in diff):
            term = Poly.monomial(p.dim, diff, coeff / lead_c)
            quotient = quotient + term
            work = work - term * divisor
        else:
            term = Poly.monomial(p.dim, exps, coeff)
            remainder = remainder + term
            work = work - term
    return quotient, remainder


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        return None
    return Fraction(num, den)


def poly_sqrt(p: Poly) -> Poly | None:
    """Exact square root of a polynomial, or None when p is not a square.

    Recovers candidate terms of the root in descending graded-lex order and
    verifies root*root == p before returning, so a non-None result is a
    sound certificate.
    """
    if p.is_zero:
        return Poly.zero(p.dim)
    lead_e, lead_c = p.leading_term()
    if any(e % 2 for e in lead_e):
        return None
    root_c = _fraction_sqrt(lead_c)
    if root_c is None:
        return None
    root_e = tuple(e // 2 for e in lead_e)
    root = Poly.monomial(p.dim, root_e, root_c)
    guard = 2 * len(p.terms) + 4
    for _ in range(guard):
        residue = p - root * root
        if residue.is_zero:
            return root
        exps, coeff = residue.leading_term()
        diff = tuple(a - b for a, b in zip(exps, root_e))
        if any(d < 0 for d in diff):
            return None
        root = root + Poly.monomial(p.dim, diff, coeff / (2 * root_c))
    return None
