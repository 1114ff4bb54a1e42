"""Brute-force verification of the closed-form J sums and theorem cells.

The exhaustive J enumeration is the oracle of record; every closed form is a
claim under test, never the oracle. Each check compares one enumeration
against one closed form (or one verdict against its claimed value) and
records the outcome.

Iteration over deletion sets and column choices is lexicographic; ``cap``
bounds the number of checks per item (0 or None means exhaustive), so a
capped run is a documented deterministic prefix of the exhaustive one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .builder import (
    SsdFamily,
    build_full,
    build_interactions_only,
    build_minus_one,
    build_single_parent,
)
from .core import SignMatrix, drop_columns, hadamard_design
from .es2 import es2_closed_form, verdict
from .spectral import d_parameter, sum_j_squared, sum_j_squared_filtered


@dataclass(frozen=True)
class CheckResult:
    name: str
    n: int
    context: str
    expected: str
    actual: str
    ok: bool


def _result(name: str, n: int, context: str, expected, actual) -> CheckResult:
    return CheckResult(name, n, context, str(expected), str(actual), expected == actual)


def _capped(iterable: Iterable, cap: int | None) -> Iterator:
    if cap is None or cap <= 0:
        return iter(iterable)
    return itertools.islice(iterable, cap)


def _u(n: int, d: int) -> int:
    return 16 * d * (n - 4 * d)


def _lemma1_expected(n: int, deficit: int, s: int, d: int | None = None) -> Fraction:
    if s == 3:
        if deficit == 1:
            return Fraction(n * n * (n - 1) * (n - 2), 6)
        if deficit == 2:
            return Fraction(n * n * (n - 2) * (n - 4), 6)
        if deficit == 3:
            return Fraction(n * n * (n - 4) * (n - 5), 6)
        if deficit == 4:
            return Fraction(n * n * (n - 4) * (n - 8), 6) + _u(n, d)
    if s == 4:
        if deficit == 1:
            return Fraction(n * n * (n - 1) * (n - 2) * (n - 4), 24)
        if deficit == 2:
            return Fraction(n * n * (n - 2) * (n - 4) * (n - 5), 24)
        if deficit == 3:
            return Fraction(n * n * (n - 4) * (n - 5) * (n - 6), 24)
        if deficit == 4:
            return Fraction(n * n * (n - 4) * (n * n - 15 * n + 62), 24) - _u(n, d)
    raise ValueError(f"no closed form for s={s}, deficit={deficit}")


def verify_lemma1(
    n: int, construction: str = "auto", cap: int | None = 500
) -> list[CheckResult]:
    """Items 1-8: exhaustive J sums of orders 3 and 4 against the closed forms,
    over deletion sets of size 0 to 3 (lexicographic, capped per size)."""
    saturated = hadamard_design(n, construction)
    results = [
        _result(
            "lemma1.item1", n, "no deletion",
            _lemma1_expected(n, 1, 3), sum_j_squared(saturated, 3),
        ),
        _result(
            "lemma1.item5", n, "no deletion",
            _lemma1_expected(n, 1, 4), sum_j_squared(saturated, 4),
        ),
    ]
    names = {1: ("lemma1.item2", "lemma1.item6"),
             2: ("lemma1.item3", "lemma1.item7"),
             3: ("lemma1.item4", "lemma1.item8")}
    for size, (name3, name4) in names.items():
        combos = itertools.combinations(range(saturated.cols), size)
        for combo in _capped(combos, cap):
            child, removed = drop_columns(saturated, combo)
            d = None
            if size == 3:
                d = d_parameter(
                    removed.column(0), removed.column(1), removed.column(2)
                )
            context = "deleted=" + ",".join(str(lb) for lb in removed.labels)
            if d is not None:
                context += f" d={d}"
            results.append(
                _result(name3, n, context,
                        _lemma1_expected(n, size + 1, 3, d), sum_j_squared(child, 3))
            )
            results.append(
                _result(name4, n, context,
                        _lemma1_expected(n, size + 1, 4, d), sum_j_squared(child, 4))
            )
    return results


def verify_lemma2(
    n: int, construction: str = "auto", cap: int | None = 500
) -> list[CheckResult]:
    """Items 1-10: filtered J sums against the closed forms, for every
    admissible (deletion set, specific column) combination up to the cap.

    d follows the removed-columns-first convention: the defining triple is
    the removed columns extended by the specific columns until it has size 3.
    """
    saturated = hadamard_design(n, construction)
    q = saturated.cols
    results = []

    for i0 in _capped(range(q), cap):
        context = f"i0={saturated.labels[i0]}"
        results.append(
            _result("lemma2.item1", n, context,
                    Fraction(n * n * (n - 2), 2),
                    sum_j_squared_filtered(saturated, 3, [i0]))
        )
        results.append(
            _result("lemma2.item6", n, context,
                    Fraction(n * n * (n - 2) * (n - 4), 6),
                    sum_j_squared_filtered(saturated, 4, [i0]))
        )
    for i0, j0 in _capped(itertools.combinations(range(q), 2), cap):
        context = f"i0={saturated.labels[i0]} j0={saturated.labels[j0]}"
        results.append(
            _result("lemma2.item4", n, context,
                    n * n, sum_j_squared_filtered(saturated, 3, [i0, j0]))
        )
        results.append(
            _result("lemma2.item9", n, context,
                    Fraction(n * n * (n - 4), 2),
                    sum_j_squared_filtered(saturated, 4, [i0, j0]))
        )

    singles = ((r1, i0) for r1 in range(q) for i0 in range(q - 1))
    for r1, i0 in _capped(singles, cap):
        child, removed = drop_columns(saturated, [r1])
        context = f"deleted={removed.labels[0]} i0={child.labels[i0]}"
        results.append(
            _result("lemma2.item2", n, context,
                    Fraction(n * n * (n - 4), 2),
                    sum_j_squared_filtered(child, 3, [i0]))
        )
        results.append(
            _result("lemma2.item7", n, context,
                    Fraction(n * n * (n - 4) * (n - 5), 6),
                    sum_j_squared_filtered(child, 4, [i0]))
        )
    pairs = (
        (r1, i0, j0)
        for r1 in range(q)
        for i0, j0 in itertools.combinations(range(q - 1), 2)
    )
    for r1, i0, j0 in _capped(pairs, cap):
        child, removed = drop_columns(saturated, [r1])
        d = d_parameter(removed.column(0), child.column(i0), child.column(j0))
        context = (
            f"deleted={removed.labels[0]} i0={child.labels[i0]} "
            f"j0={child.labels[j0]} d={d}"
        )
        results.append(
            _result("lemma2.item5", n, context,
                    _u(n, d), sum_j_squared_filtered(child, 3, [i0, j0]))
        )
        results.append(
            _result("lemma2.item10", n, context,
                    Fraction(n * n * (n - 4), 2) - _u(n, d),
                    sum_j_squared_filtered(child, 4, [i0, j0]))
        )

    doubles = (
        (pair, i0)
        for pair in itertools.combinations(range(q), 2)
        for i0 in range(q - 2)
    )
    for pair, i0 in _capped(doubles, cap):
        child, removed = drop_columns(saturated, pair)
        d = d_parameter(removed.column(0), removed.column(1), child.column(i0))
        context = (
            "deleted=" + ",".join(str(lb) for lb in removed.labels)
            + f" i0={child.labels[i0]} d={d}"
        )
        results.append(
            _result("lemma2.item3", n, context,
                    Fraction(n * n * (n - 4), 2) - _u(n, d),
                    sum_j_squared_filtered(child, 3, [i0]))
        )
        results.append(
            _result("lemma2.item8", n, context,
                    Fraction(n * n * (n - 4) * (n - 8), 6) + _u(n, d),
                    sum_j_squared_filtered(child, 4, [i0]))
        )
    return results


def expected_lower_bound(kind: str, n: int, deficit: int) -> Fraction:
    """The bound value each theorem case displays for its column count."""
    if kind in ("full", "minus-one"):
        if deficit == 1:
            return Fraction(n * n, n + 1)
        if deficit == 2:
            return Fraction(n * (n - 4), n - 3)
        if deficit == 3 and kind == "full":
            return Fraction(n * n * (n - 5), (n - 3) * (n - 1))
    if kind == "interactions-only":
        if deficit == 1:
            return Fraction(n * (n - 4), n - 3)
        if deficit == 2:
            return Fraction(n * n * (n - 5), (n - 1) * (n - 3))
        if deficit == 3:
            return Fraction(
                n * (n**3 - 13 * n**2 + 48 * n - 32),
                (n - 3) * (n - 4) * (n - 5),
            )
    if kind == "single-parent":
        if deficit == 1:
            return Fraction(n * n, 2 * n - 3)
        if deficit == 2:
            return Fraction(n * (n**2 - 5 * n + 8), (2 * n - 5) * (n - 3))
        if deficit == 3:
            return Fraction(n * (n - 4), 2 * n - 7)
    raise ValueError(f"no displayed bound for {kind!r} at deficit {deficit}")


def expected_gap(kind: str, n: int, deficit: int, d: int | None = None) -> Fraction:
    """Displayed E(s^2) - bound gap of the non-optimal cells (0 elsewhere)."""
    if kind == "interactions-only" and deficit == 3:
        return Fraction(
            8 * n * (n - 8), (n - 2) * (n - 3) * (n - 4) * (n - 5)
        )
    if kind == "single-parent" and deficit == 2:
        return Fraction(n * n - 8 * n, (2 * n - 5) * (n - 3))
    if kind == "single-parent" and deficit == 3:
        return Fraction(
            4 * n * n + 128 * d * d - 32 * n * d - 16 * n,
            (n - 4) * (2 * n - 7),
        )
    return Fraction(0)


def _check_cell(
    results: list[CheckResult],
    name: str,
    n: int,
    context: str,
    report,
    expected_es2: Fraction,
    expected_lb: Fraction,
    expected_gap_value: Fraction,
) -> None:
    results.append(_result(f"{name}.es2", n, context, expected_es2, report.es2))
    results.append(_result(f"{name}.lb", n, context, expected_lb, report.lower_bound))
    results.append(_result(f"{name}.gap", n, context, expected_gap_value, report.gap))
    results.append(
        _result(f"{name}.optimal", n, context, expected_gap_value == 0, report.optimal)
    )


def verify_theorems(
    n: int, construction: str = "auto", cap: int | None = 500
) -> list[CheckResult]:
    """Every covered (family, q, choice) cell against its claimed values.

    Starting arrays are the saturated design with the highest-index columns
    dropped. Theorem choice iteration (deleted column, parent factor) is
    exhaustive up to the cap.
    """
    saturated = hadamard_design(n, construction)
    results: list[CheckResult] = []
    for deficit in (1, 2, 3):
        q = n - deficit
        start, removed = drop_columns(saturated, list(range(q, n - 1)))
        context = f"q=n-{deficit}"

        full_report = verdict(build_full(start))
        _check_cell(
            results, "theorem1", n, context, full_report,
            es2_closed_form(SsdFamily.full(), n, q),
            expected_lower_bound("full", n, deficit),
            Fraction(0),
        )

        if deficit <= 2:
            target = es2_closed_form(SsdFamily.full(), n, q)
            labels = list(build_full(start).design.labels)
            for delete in _capped(labels, cap):
                rep = verdict(build_minus_one(start, delete, removed))
                _check_cell(
                    results, "theorem2", n, f"{context} delete={delete}", rep,
                    target,
                    expected_lower_bound("minus-one", n, deficit),
                    Fraction(0),
                )

        rep = verdict(build_interactions_only(start))
        _check_cell(
            results, "theorem3", n, context, rep,
            es2_closed_form(SsdFamily.interactions_only(), n, q),
            expected_lower_bound("interactions-only", n, deficit),
            expected_gap("interactions-only", n, deficit),
        )

        for parent in _capped(range(start.cols), cap):
            build = build_single_parent(start, parent, removed)
            rep = verdict(build)
            parent_context = f"{context} parent={start.labels[parent]}"
            _check_cell(
                results, "theorem4", n, parent_context, rep,
                es2_closed_form(SsdFamily.single_parent(parent), n, q, build.d),
                expected_lower_bound("single-parent", n, deficit),
                expected_gap("single-parent", n, deficit, build.d),
            )
    return results
