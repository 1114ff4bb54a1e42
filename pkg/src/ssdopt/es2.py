"""Exact E(s^2) evaluation, the sharp lower bound, and optimality verdicts.

E(s^2) is the average of the squared off-diagonal entries of X^T X. It is
computed two ways that must agree exactly: directly from column inner
products, and through the J-characteristics of the starting array (each
nonzero J_3 and J_4 value appears six times in X^T X for a full
augmentation, with family-specific corrections otherwise).

The lower bound applies to balanced designs with n = 0 (mod 4) and m =
a(n-1) +/- r columns, a >= 1 and 0 <= r <= n/2:

    n^2 (m-n+1) / ((n-1)(m-1)) + n/(m(m-1)) * (D(n,r) - r^2/(n-1))

with D(n, r) piecewise in r mod 4. When two decompositions of m exist the
larger bound value is used; both are valid.

All values are exact rationals; "optimal" means the gap is exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .builder import (
    FULL,
    INTERACTIONS_ONLY,
    MINUS_ONE,
    SINGLE_PARENT,
    SsdBuild,
    SsdFamily,
)
from .core import AliasedPair, ColumnLabel, SignMatrix, aliasing_report
from .spectral import sum_j_squared, sum_j_squared_filtered


def es2_direct(design: SignMatrix) -> Fraction:
    """Average squared off-diagonal entry of X^T X, as an exact rational."""
    m = design.cols
    if m < 2:
        raise ValueError("E(s^2) needs at least two columns")
    g = design.gram()
    off_diagonal_sq = int(np.sum(g * g)) - int(np.sum(np.diagonal(g) ** 2))
    return Fraction(off_diagonal_sq, m * (m - 1))


def es2_via_j(build: SsdBuild) -> Fraction:
    """E(s^2) recomputed from the starting array's J-characteristics.

    Independent of :func:`es2_direct`; the two must agree exactly for every
    build, which the verdict enforces.
    """
    start = build.start
    family = build.family
    m = build.design.cols
    if family.kind == FULL:
        numerator = 6 * sum_j_squared(start, 3) + 6 * sum_j_squared(start, 4)
    elif family.kind == INTERACTIONS_ONLY:
        numerator = 6 * sum_j_squared(start, 4)
    elif family.kind == SINGLE_PARENT:
        numerator = 4 * sum_j_squared_filtered(start, 3, [family.parent])
    else:
        numerator = 6 * sum_j_squared(start, 3) + 6 * sum_j_squared(start, 4)
        deleted = family.deleted
        if deleted.is_interaction:
            pa = start.label_position(ColumnLabel.main(deleted.i))
            pb = start.label_position(ColumnLabel.main(deleted.j))
            numerator -= 2 * sum_j_squared_filtered(start, 3, [pa, pb])
            numerator -= 2 * sum_j_squared_filtered(start, 4, [pa, pb])
        else:
            pos = start.label_position(deleted)
            numerator -= 2 * sum_j_squared_filtered(start, 3, [pos])
    return Fraction(numerator, m * (m - 1))


def es2_closed_form(
    family: SsdFamily, n: int, q: int, d: int | None = None
) -> Fraction:
    """The exact E(s^2) value of a covered (family, n, q) cell.

    Only q = n-1, n-2, n-3 cells are covered (q = n-3 is excluded for the
    minus-one family); the single-parent value at q = n-3 additionally needs
    the build's d.
    """
    deficit = n - q
    if family.kind == FULL:
        if deficit == 1:
            return Fraction(n * n, n + 1)
        if deficit == 2:
            return Fraction(n * (n - 4), n - 3)
        if deficit == 3:
            return Fraction(n * n * (n - 5), (n - 3) * (n - 1))
    elif family.kind == MINUS_ONE:
        if deficit == 1:
            return Fraction(n * n, n + 1)
        if deficit == 2:
            return Fraction(n * (n - 4), n - 3)
    elif family.kind == INTERACTIONS_ONLY:
        if deficit == 1:
            return Fraction(n * (n - 4), n - 3)
        if deficit == 2:
            return Fraction(n * n * (n - 5), (n - 1) * (n - 3))
        if deficit == 3:
            return Fraction(n * n * (n - 6), (n - 2) * (n - 3))
    elif family.kind == SINGLE_PARENT:
        if deficit == 1:
            return Fraction(n * n, 2 * n - 3)
        if deficit == 2:
            return Fraction(n * n * (n - 4), (2 * n - 5) * (n - 3))
        if deficit == 3:
            if d is None:
                raise ValueError("single-parent at q = n - 3 needs d")
            return Fraction(
                n**3 - 4 * n**2 - 32 * n * d + 128 * d * d,
                (2 * n - 7) * (n - 4),
            )
    raise ValueError(f"no closed form for family {family.kind!r} at q = n - {deficit}")


def D_of(n: int, r: int) -> int:
    """Piecewise constant of the lower bound, by the residue of r mod 4."""
    if not 0 <= r <= n // 2:
        raise ValueError(f"r must be in 0..{n // 2}, got {r}")
    residue = r % 4
    if residue == 0:
        return 4 * r
    if residue == 1:
        return n + 2 * r - 3
    if residue == 2:
        return 2 * n - 4
    return n + 2 * r + 1


@dataclass(frozen=True)
class Decomposition:
    """One way of writing m = a(n-1) + sign*r with a >= 1 and 0 <= r <= n/2."""

    a: int
    r: int
    sign: int
    D: int

    @property
    def r_mod4(self) -> int:
        return self.r % 4


def decompose_m(n: int, m: int) -> list[Decomposition]:
    """All decompositions m = a(n-1) +/- r, smaller r first.

    At most two exist; r = 0 is reported once with positive sign.
    """
    if n % 4 != 0 or n < 4:
        raise ValueError(f"n must be a positive multiple of 4, got {n}")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    half = n // 2
    a_low = max(1, -((half - m) // (n - 1)))  # ceil((m - half) / (n - 1))
    a_high = (m + half) // (n - 1)
    found = []
    for a in range(a_low, a_high + 1):
        r = m - a * (n - 1)
        if r == 0:
            found.append(Decomposition(a, 0, 1, D_of(n, 0)))
        elif 0 < r <= half:
            found.append(Decomposition(a, r, 1, D_of(n, r)))
        elif 0 < -r <= half:
            found.append(Decomposition(a, -r, -1, D_of(n, -r)))
    found.sort(key=lambda dec: dec.r)
    return found


def _bound_value(n: int, m: int, dec: Decomposition) -> Fraction:
    lead = Fraction(n * n * (m - n + 1), (n - 1) * (m - 1))
    correction = Fraction(n, m * (m - 1)) * (dec.D - Fraction(dec.r * dec.r, n - 1))
    return lead + correction


def bound_details(
    n: int, m: int
) -> tuple[tuple[Decomposition, ...], Decomposition, Fraction]:
    """All decompositions of m, the one giving the tightest bound, and its value."""
    if m < 2:
        raise ValueError("the bound needs at least two columns")
    decs = decompose_m(n, m)
    if not decs:
        raise ValueError(
            f"no decomposition m = a(n-1) +/- r with a >= 1 exists for n={n}, m={m}"
        )
    best = max(decs, key=lambda dec: _bound_value(n, m, dec))
    return tuple(decs), best, _bound_value(n, m, best)


def lower_bound(n: int, m: int) -> Fraction:
    """Sharp lower bound on E(s^2) for balanced n x m designs, n = 0 (mod 4)."""
    return bound_details(n, m)[2]


@dataclass(frozen=True, eq=False)
class OptimalityReport:
    """Everything the verdict knows about one build."""

    n: int
    m: int
    family: SsdFamily
    decompositions: tuple[Decomposition, ...]
    chosen: Decomposition
    lower_bound: Fraction
    es2: Fraction
    gap: Fraction
    optimal: bool
    aliased: tuple[AliasedPair, ...]
    d: int | None
    notes: str


def verdict(build: SsdBuild) -> OptimalityReport:
    """Evaluate a build: exact E(s^2), bound, gap, aliasing, optimal flag.

    Internal cross-checks are enforced, not assumed: the direct and J-route
    E(s^2) must agree, the closed form must agree whenever its cell is
    covered, and the bound must not exceed the achieved value.
    """
    design = build.design
    n, m = design.rows, design.cols
    es2 = es2_direct(design)
    via_j = es2_via_j(build)
    if es2 != via_j:
        raise ArithmeticError(
            f"inner-product and J-characteristic routes disagree: {es2} vs {via_j}"
        )
    try:
        closed = es2_closed_form(build.family, n, build.start.cols, build.d)
    except ValueError:
        closed = None
    notes = []
    if closed is not None and closed != es2:
        raise ArithmeticError(
            f"closed form {closed} disagrees with computed E(s^2) {es2}"
        )
    if closed is None:
        notes.append("no closed form covers this cell")
    decs, chosen, lb = bound_details(n, m)
    gap = es2 - lb
    if gap < 0:
        raise ArithmeticError(f"E(s^2) {es2} fell below the bound {lb}")
    aliased = tuple(aliasing_report(design))
    if aliased:
        notes.append(
            f"{len(aliased)} fully aliased column pair(s) present; "
            "the construction preconditions exclude these"
        )
    else:
        notes.append("all column pairs partially aliased")
    return OptimalityReport(
        n=n,
        m=m,
        family=build.family,
        decompositions=decs,
        chosen=chosen,
        lower_bound=lb,
        es2=es2,
        gap=gap,
        optimal=gap == 0,
        aliased=aliased,
        d=build.d,
        notes="; ".join(notes),
    )
