"""Exact residuals for the mean-value and quadrature identities on the cube.

Each residual is the left side minus the right side of one identity,
computed exactly; an identity holds for an input precisely when its residual
is the rational zero.  Reports keep the raw residuals because nonzero values
are the interesting diagnostic for negative controls and regressions.

Identities (h harmonic, g annihilated by the m-fold Laplacian, M = max |x_i|):

  surface mean     mean of h over the boundary == mean of h over the diagonal set
  volume mean      weighted mean over the cube (power weight k)
                   == weighted mean over the diagonal set (power weight k+1)
  weighted         int_cube phi''(r-M) h  ==  2 int_diag phi'(r-M) h,
  quadrature       for profiles with phi(0) = phi'(0) = 0
  pizzetti         int_cube phi^(2m)(r-M) g
                   ==  2 sum_{s<m} int_diag phi^(2s+1)(r-M) Lap^(m-1-s) g,
                   for profiles vanishing to order 2m at 0

Preconditions are hard errors: the identities are simply false without them
and a silent pass would poison every report downstream.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .integrate import CubeDomain, Region, Weight, integrate_boundary, integrate_cube, integrate_diagonal, measure
from .kernel import BasisRequest, BasisSet, graded_basis, is_polyharmonic
from .poly import Poly, UniPoly, laplacian, rational_to_text, uni_to_text


class WeightConditionError(ValueError):
    """The weight profile violates a required vanishing condition at 0."""


class NotPolyharmonicError(ValueError):
    """The input polynomial is not annihilated by the requested Laplacian power."""


class Identity(enum.Enum):
    SURFACE_MEAN = "surface_mean"
    VOLUME_MEAN = "volume_mean"
    WEIGHTED_QUADRATURE = "weighted_quadrature"
    PIZZETTI = "pizzetti"


def residual_surface_mean(h: Poly, d: CubeDomain) -> Fraction:
    """Boundary mean minus diagonal mean (both unweighted)."""
    boundary = integrate_boundary(h, d) / measure(d, Region.BOUNDARY, 0)
    diagonal = integrate_diagonal(h, d, Weight.power(0)) / measure(d, Region.DIAGONAL, 0)
    return boundary - diagonal


def residual_volume_mean(h: Poly, d: CubeDomain, k: int = 0) -> Fraction:
    """Weighted cube mean (power k) minus weighted diagonal mean (power k+1)."""
    cube = integrate_cube(h, d, Weight.power(k)) / measure(d, Region.CUBE, k)
    diagonal = integrate_diagonal(h, d, Weight.power(k + 1)) / measure(
        d, Region.DIAGONAL, k + 1
    )
    return cube - diagonal


def _require_vanishing(phi: UniPoly, order: int) -> None:
    names = {0: "phi(0)", 1: "phi'(0)"}
    for j in range(order):
        if phi.coeff(j) != 0:
            name = names.get(j, f"phi^({j})(0)")
            raise WeightConditionError(
                f"weight profile must satisfy {name} = 0, got {phi.coeff(j)}"
            )


def residual_weighted_quadrature(h: Poly, d: CubeDomain, phi: UniPoly) -> Fraction:
    """int_cube phi''(r-M) h  -  2 int_diag phi'(r-M) h.

    Requires phi(0) = phi'(0) = 0, checked symbolically on the coefficients.
    """
    _require_vanishing(phi, 2)
    cube = integrate_cube(h, d, Weight.from_profile(phi.derivative(2)))
    diag = integrate_diagonal(h, d, Weight.from_profile(phi.derivative(1)))
    return cube - 2 * diag


def residual_pizzetti(g: Poly, d: CubeDomain, m: int, phi: UniPoly) -> Fraction:
    """Pizzetti-type residual for an m-polyharmonic polynomial.

    int_cube phi^(2m)(r-M) g  -  2 sum_{s=0}^{m-1} int_diag phi^(2s+1)(r-M)
    applied to the (m-1-s)-fold Laplacian of g.  Requires the profile to
    vanish to order 2m at 0 and g to be m-polyharmonic; the two failures
    raise distinct errors.
    """
    if m < 1:
        raise ValueError(f"polyharmonic order must be >= 1, got {m}")
    if not is_polyharmonic(g, m):
        raise NotPolyharmonicError(
            f"input is not {m}-polyharmonic: Laplacian^{m} != 0"
        )
    _require_vanishing(phi, 2 * m)
    cube = integrate_cube(g, d, Weight.from_profile(phi.derivative(2 * m)))
    diag = Fraction(0)
    power = g  # Laplacian^(m-1-s) of g, starting at s = m-1
    terms = []
    for s in range(m - 1, -1, -1):
        terms.append((s, power))
        power = laplacian(power)
    for s, gg in sorted(terms):
        diag += integrate_diagonal(gg, d, Weight.from_profile(phi.derivative(2 * s + 1)))
    return cube - 2 * diag


# -- suite runner --------------------------------------------------------------


def default_quadrature_profiles() -> tuple[UniPoly, ...]:
    """t^j / j! for j = 2..6."""
    import math

    return tuple(
        UniPoly.monomial(j, Fraction(1, math.factorial(j))) for j in range(2, 7)
    )


def default_pizzetti_profiles(m: int) -> tuple[UniPoly, ...]:
    """t^(2m+j) / (2m+j)! for j = 0..2."""
    import math

    return tuple(
        UniPoly.monomial(2 * m + j, Fraction(1, math.factorial(2 * m + j)))
        for j in range(3)
    )


@dataclass(frozen=True)
class SuiteConfig:
    """Parameter grid for a verification run."""

    ks: tuple[int, ...] = (0, 1, 2, 3)
    m: int = 1
    phis: tuple[UniPoly, ...] | None = None


@dataclass(frozen=True)
class ReportEntry:
    identity: str
    n: int
    r: str
    k_or_phi: str
    m: int
    element_label: str
    residual: str
    passed: bool

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "n": self.n,
            "r": self.r,
            "k_or_phi": self.k_or_phi,
            "m": self.m,
            "element_label": self.element_label,
            "residual": self.residual,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class IdentityReport:
    entries: tuple[ReportEntry, ...]

    @property
    def all_pass(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_json(self) -> str:
        payload = {
            "all_pass": self.all_pass,
            "entry_count": len(self.entries),
            "entries": [e.to_dict() for e in self.entries],
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["identity", "n", "r", "k_or_phi", "m", "element_label", "residual", "pass"]
        )
        for e in self.entries:
            writer.writerow(
                [
                    e.identity,
                    e.n,
                    e.r,
                    e.k_or_phi,
                    e.m,
                    e.element_label,
                    e.residual,
                    "true" if e.passed else "false",
                ]
            )
        return buf.getvalue()


def _labelled_elements(
    basis: BasisSet | Sequence[tuple[str, Poly]],
) -> list[tuple[str, Poly]]:
    if isinstance(basis, BasisSet):
        out = []
        counters: dict[int, int] = {}
        for p in basis.elements:
            deg = p.total_degree
            idx = counters.get(deg, 0)
            counters[deg] = idx + 1
            out.append((f"deg{deg}[{idx}]", p))
        return out
    return list(basis)


def _suite_jobs(
    elements: list[tuple[str, Poly]],
    d: CubeDomain,
    identities: Sequence[Identity],
    config: SuiteConfig,
) -> list[tuple[Identity, str, str, Poly, Callable[[], Fraction]]]:
    jobs = []
    for identity in identities:
        if identity is Identity.SURFACE_MEAN:
            for label, p in elements:
                jobs.append(
                    (identity, "", label, p, lambda p=p: residual_surface_mean(p, d))
                )
        elif identity is Identity.VOLUME_MEAN:
            for k in config.ks:
                for label, p in elements:
                    jobs.append(
                        (
                            identity,
                            str(k),
                            label,
                            p,
                            lambda p=p, k=k: residual_volume_mean(p, d, k),
                        )
                    )
        elif identity is Identity.WEIGHTED_QUADRATURE:
            phis = config.phis or default_quadrature_profiles()
            for phi in phis:
                for label, p in elements:
                    jobs.append(
                        (
                            identity,
                            uni_to_text(phi),
                            label,
                            p,
                            lambda p=p, phi=phi: residual_weighted_quadrature(p, d, phi),
                        )
                    )
        elif identity is Identity.PIZZETTI:
            phis = config.phis or default_pizzetti_profiles(config.m)
            for phi in phis:
                for label, p in elements:
                    jobs.append(
                        (
                            identity,
                            uni_to_text(phi),
                            label,
                            p,
                            lambda p=p, phi=phi: residual_pizzetti(p, d, config.m, phi),
                        )
                    )
        else:
            raise ValueError(f"unknown identity {identity!r}")
    return jobs


def run_suite(
    basis: BasisSet | BasisRequest | Sequence[tuple[str, Poly]],
    d: CubeDomain,
    identities: Sequence[Identity],
    config: SuiteConfig = SuiteConfig(),
) -> IdentityReport:
    """Evaluate the selected residuals on every element; exact pass/fail.

    Elements may be a generated basis, a request for one, or explicit
    (label, polynomial) pairs.  Evaluation order, and therefore report
    order, is fixed: identities in the order given, then parameter, then
    element.  Set CUBEHARM_THREADS to fan the (pure, exact) residual
    evaluations out over a thread pool; results are collected in submission
    order so the report is identical either way.
    """
    if isinstance(basis, BasisRequest):
        basis = graded_basis(basis)
    elements = _labelled_elements(basis)
    jobs = _suite_jobs(elements, d, identities, config)

    def evaluate(job) -> Fraction:
        identity, _k_or_phi, label, _p, fn = job
        try:
            return fn()
        except ValueError as exc:
            raise type(exc)(f"{identity.value} on {label}: {exc}") from exc

    workers = int(os.environ.get("CUBEHARM_THREADS", "1"))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            residuals = list(pool.map(evaluate, jobs))
    else:
        residuals = [evaluate(job) for job in jobs]
    entries = []
    for (identity, k_or_phi, label, _p, _fn), value in zip(jobs, residuals):
        m = config.m if identity is Identity.PIZZETTI else 1
        entries.append(
            ReportEntry(
                identity=identity.value,
                n=d.n,
                r=rational_to_text(d.r),
                k_or_phi=k_or_phi,
                m=m,
                element_label=label,
                residual=rational_to_text(value),
                passed=(value == 0),
            )
        )
    return IdentityReport(tuple(entries))
