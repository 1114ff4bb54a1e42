"""J-characteristics, distance distributions, and the Krawtchouk transform.

Two independent routes to the same aliasing summary live here: exhaustive
enumeration of J values over column subsets (the oracle of record) and the
Krawtchouk transform of the distance distribution. Their agreement, order by
order, is the identity n^2 * A_s = sum of J_s^2 over all s-subsets.

J sums are exact integers; distributions and wordlength patterns are exact
rationals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import SignMatrix, drop_columns


def krawtchouk(i: int, j: int, q: int) -> int:
    """Binary Krawtchouk polynomial P_i(j; q).

    P_i(j;q) = sum_k (-1)^k C(j,k) C(q-j, i-k) for k = 0..i.
    """
    if not 0 <= i <= q:
        raise ValueError(f"degree i must satisfy 0 <= i <= q, got i={i}, q={q}")
    if not 0 <= j <= q:
        raise ValueError(f"point j must satisfy 0 <= j <= q, got j={j}, q={q}")
    return sum(
        (-1) ** k * math.comb(j, k) * math.comb(q - j, i - k) for k in range(i + 1)
    )


@dataclass(frozen=True)
class DistanceDistribution:
    """Normalized counts E_0 ... E_q of ordered row pairs by Hamming distance."""

    n: int
    q: int
    E: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.E) != self.q + 1:
            raise ValueError(f"expected {self.q + 1} entries, got {len(self.E)}")
        if any(e < 0 for e in self.E):
            raise ValueError("distance counts cannot be negative")
        if self.E[0] < 1:
            raise ValueError("E_0 must be at least 1")
        if sum(self.E) != self.n:
            raise ValueError("distance distribution must sum to the run count")


def distance_distribution(design: SignMatrix) -> DistanceDistribution:
    """Exact distance distribution of a sign matrix.

    E_j = (# ordered row pairs at Hamming distance j) / n, each row paired
    with itself included at distance 0.
    """
    n, q = design.rows, design.cols
    wide = design.entries.astype(np.int64)
    gram_rows = wide @ wide.T
    hamming = (q - gram_rows) // 2
    counts = np.bincount(hamming.ravel(), minlength=q + 1)
    return DistanceDistribution(
        n, q, tuple(Fraction(int(c), n) for c in counts[: q + 1])
    )


@dataclass(frozen=True)
class GwpVector:
    """Generalized wordlength pattern A_1 ... A_q as exact rationals.

    Indexing is by order: ``gwp[3]`` is A_3.
    """

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if any(v < 0 for v in self.values):
            raise ValueError("wordlength pattern entries cannot be negative")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, order: int) -> Fraction:
        if not 1 <= order <= len(self.values):
            raise IndexError(f"order must be in 1..{len(self.values)}, got {order}")
        return self.values[order - 1]


def gwp_via_krawtchouk(design: SignMatrix) -> GwpVector:
    """GWP from the distance distribution: A_i = (1/n) sum_j P_i(j;q) E_j."""
    n, q = design.rows, design.cols
    dist = distance_distribution(design)
    values = []
    for i in range(1, q + 1):
        acc = sum(
            (Fraction(krawtchouk(i, j, q)) * dist.E[j] for j in range(q + 1)),
            start=Fraction(0),
        )
        values.append(acc / n)
    return GwpVector(tuple(values))


def _check_subset(design: SignMatrix, cols: Sequence[int]) -> tuple[int, ...]:
    subset = tuple(cols)
    if not subset:
        raise ValueError("column subset must be non-empty")
    if len(set(subset)) != len(subset):
        raise ValueError("column subset must have distinct entries")
    for c in subset:
        if not 0 <= c < design.cols:
            raise ValueError(f"column index {c} out of range for {design.cols} columns")
    return subset


def j_characteristic(design: SignMatrix, cols: Iterable[int]) -> int:
    """J_s(S): sum over runs of the entrywise product of the columns in S."""
    subset = _check_subset(design, tuple(cols))
    acc = 0
    for c in subset:
        acc ^= design.neg_masks[c]
    return design.rows - 2 * acc.bit_count()


def _sum3(masks: Sequence[int], n: int) -> int:
    total = 0
    q = len(masks)
    for a in range(q - 2):
        ma = masks[a]
        for b in range(a + 1, q - 1):
            mab = ma ^ masks[b]
            for c in range(b + 1, q):
                j = n - 2 * (mab ^ masks[c]).bit_count()
                total += j * j
    return total


def _sum4(masks: Sequence[int], n: int) -> int:
    total = 0
    q = len(masks)
    for a in range(q - 3):
        ma = masks[a]
        for b in range(a + 1, q - 2):
            mab = ma ^ masks[b]
            for c in range(b + 1, q - 1):
                mabc = mab ^ masks[c]
                for d in range(c + 1, q):
                    j = n - 2 * (mabc ^ masks[d]).bit_count()
                    total += j * j
    return total


def _sum_over_extensions(masks: Sequence[int], base: int, n: int, k: int) -> int:
    """Sum of squared J over all k-subsets of ``masks`` XOR-ed onto ``base``."""
    total = 0
    q = len(masks)
    if k == 0:
        j = n - 2 * base.bit_count()
        return j * j
    if k == 1:
        for m in masks:
            j = n - 2 * (base ^ m).bit_count()
            total += j * j
        return total
    if k == 2:
        for a in range(q - 1):
            mba = base ^ masks[a]
            for b in range(a + 1, q):
                j = n - 2 * (mba ^ masks[b]).bit_count()
                total += j * j
        return total
    if k == 3:
        for a in range(q - 2):
            mba = base ^ masks[a]
            for b in range(a + 1, q - 1):
                mbab = mba ^ masks[b]
                for c in range(b + 1, q):
                    j = n - 2 * (mbab ^ masks[c]).bit_count()
                    total += j * j
        return total
    for combo in itertools.combinations(masks, k):
        acc = base
        for m in combo:
            acc ^= m
        j = n - 2 * acc.bit_count()
        total += j * j
    return total


def sum_j_squared(design: SignMatrix, s: int) -> int:
    """Exhaustive sum of J_s(S)^2 over all C(q, s) column subsets.

    Returns 0 when s exceeds the column count (no subsets exist).
    """
    if s < 1:
        raise ValueError(f"order s must be at least 1, got {s}")
    if s > design.cols:
        return 0
    masks, n = design.neg_masks, design.rows
    if s == 3:
        return _sum3(masks, n)
    if s == 4:
        return _sum4(masks, n)
    return _sum_over_extensions(masks, 0, n, s)


def sum_j_squared_filtered(
    design: SignMatrix, s: int, fixed: Iterable[int]
) -> int:
    """Sum of J_s(S)^2 over the s-subsets that contain all ``fixed`` columns."""
    anchor = _check_subset(design, tuple(fixed))
    if len(anchor) not in (1, 2):
        raise ValueError(f"fixed set must have 1 or 2 columns, got {len(anchor)}")
    if s <= len(anchor):
        raise ValueError(f"order s must exceed the fixed set size, got s={s}")
    base = 0
    for c in anchor:
        base ^= design.neg_masks[c]
    rest = [design.neg_masks[c] for c in range(design.cols) if c not in set(anchor)]
    k = s - len(anchor)
    if k > len(rest):
        return 0
    return _sum_over_extensions(rest, base, design.rows, k)


@dataclass(frozen=True)
class JSummary:
    """Squared-J total of one order, optionally with every per-subset value."""

    s: int
    total_sq: int
    per_subset: dict[tuple[int, ...], int] | None = None

    def __post_init__(self) -> None:
        if self.total_sq < 0:
            raise ValueError("total_sq cannot be negative")
        if self.per_subset is not None:
            recomputed = sum(v * v for v in self.per_subset.values())
            if recomputed != self.total_sq:
                raise ValueError("per-subset values do not reproduce total_sq")


def j_summary(design: SignMatrix, s: int, keep_subsets: bool = False) -> JSummary:
    """Summarize all J values of order s.

    With ``keep_subsets`` the map is ordered lexicographically over column
    positions, so it is reproducible across runs.
    """
    if not keep_subsets:
        return JSummary(s, sum_j_squared(design, s))
    if s < 1:
        raise ValueError(f"order s must be at least 1, got {s}")
    per: dict[tuple[int, ...], int] = {}
    total = 0
    for combo in itertools.combinations(range(design.cols), s):
        value = j_characteristic(design, combo)
        per[combo] = value
        total += value * value
    return JSummary(s, total, per)


def d_parameter(t1, t2, t3) -> int:
    """Half-fraction multiplicity of a column triple.

    Three +-1 columns removed from a saturated strength-2 array always split
    their rows into d replicates of the half fraction with all-positive
    triple products and n/4 - d replicates of the opposite one, which gives
    d = (n + J_3) / 8. A non-integral value means the triple does not arise
    that way, and is reported as an error.
    """
    cols = [np.asarray(t).ravel() for t in (t1, t2, t3)]
    n = cols[0].shape[0]
    if any(c.shape[0] != n for c in cols):
        raise ValueError("the three columns must have equal length")
    if n % 4 != 0:
        raise ValueError(f"column length must be a multiple of 4, got {n}")
    if any(not np.all((c == 1) | (c == -1)) for c in cols):
        raise ValueError("columns must have entries +1 or -1")
    j3 = int(np.sum(cols[0] * cols[1] * cols[2]))
    if (n + j3) % 8 != 0:
        raise ValueError(
            "triple does not decompose into half-fraction replicates "
            f"(J3 = {j3} with n = {n})"
        )
    d = (n + j3) // 8
    if not 0 <= d <= n // 4:
        raise ValueError(f"d = {d} outside 0..{n // 4}")
    return d


def verify_recursions(parent: SignMatrix, removed: Iterable[int]) -> bool:
    """Check the four subset-partition identities behind the filtered sums.

    For distinguished columns i0 (and j0) of the parent array H(n, q):

        S3(q) = S3(q minus i0) + F3(q; i0)
        S3(q) = S3(q minus i0) + F3(q; i0, j0) + F3(q minus j0; i0)

    plus the two order-4 versions. ``removed`` names the distinguished
    columns by position; with a single column given, j0 defaults to the
    lowest other position (the identities hold for any choice). Vacuously
    true when ``removed`` is empty.
    """
    chosen = tuple(removed)
    if not chosen:
        return True
    _check_subset(parent, chosen)
    if parent.cols < 5:
        raise ValueError("parent needs at least 5 columns for the order-4 identities")
    i0 = chosen[0]
    j0 = chosen[1] if len(chosen) > 1 else next(
        c for c in range(parent.cols) if c != i0
    )
    minus_i0, _ = drop_columns(parent, [i0])
    minus_j0, _ = drop_columns(parent, [j0])
    i0_in_minus_j0 = i0 - 1 if j0 < i0 else i0
    for s in (3, 4):
        total = sum_j_squared(parent, s)
        without = sum_j_squared(minus_i0, s)
        if total != without + sum_j_squared_filtered(parent, s, [i0]):
            return False
        both = sum_j_squared_filtered(parent, s, [i0, j0])
        shifted = sum_j_squared_filtered(minus_j0, s, [i0_in_minus_j0])
        if total != without + both + shifted:
            return False
    return True
