"""Sign matrices, Hadamard constructions, and orthogonal-array checks.

Every design is carried by a :class:`SignMatrix`: an immutable n x q array
with entries +1/-1 and one distinct :class:`ColumnLabel` per column. All
arithmetic in this module is exact integer arithmetic; there is no floating
point anywhere.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

#: Largest Hadamard order the constructions will emit by default. Keeps the
#: exhaustive subset enumerations downstream (O(q^4) and worse) instant.
DEFAULT_MAX_ORDER = 64

_LABEL_RE = re.compile(r"^c([0-9]+)(?:\*c([0-9]+))?$")


@dataclass(frozen=True)
class ColumnLabel:
    """Name of a design column: a starting factor ``ci`` or a product ``ci*cj``."""

    i: int
    j: int | None = None

    def __post_init__(self) -> None:
        if self.i < 1:
            raise ValueError(f"column index must be positive, got {self.i}")
        if self.j is not None and self.j <= self.i:
            raise ValueError(
                f"interaction indices must satisfy i < j, got ({self.i}, {self.j})"
            )

    @classmethod
    def main(cls, i: int) -> "ColumnLabel":
        return cls(i)

    @classmethod
    def interaction(cls, i: int, j: int) -> "ColumnLabel":
        if i == j:
            raise ValueError("an interaction needs two distinct factors")
        if i > j:
            i, j = j, i
        return cls(i, j)

    @classmethod
    def parse(cls, text: str) -> "ColumnLabel":
        """Parse the textual form used in CSV headers: ``c3`` or ``c1*c2``."""
        m = _LABEL_RE.match(text.strip())
        if m is None:
            raise ValueError(f"not a column label: {text!r}")
        if m.group(2) is None:
            return cls.main(int(m.group(1)))
        return cls.interaction(int(m.group(1)), int(m.group(2)))

    @property
    def is_interaction(self) -> bool:
        return self.j is not None

    def __str__(self) -> str:
        return f"c{self.i}" if self.j is None else f"c{self.i}*c{self.j}"


@dataclass(frozen=True, eq=False)
class SignMatrix:
    """Immutable two-level design matrix with labeled columns."""

    entries: np.ndarray
    labels: tuple[ColumnLabel, ...]

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ValueError("entries must be a 2-D array with at least one row")
        if not np.all((arr == 1) | (arr == -1)):
            raise ValueError("entries must be exactly +1 or -1")
        labels = tuple(self.labels)
        if len(labels) != arr.shape[1]:
            raise ValueError(f"{arr.shape[1]} columns but {len(labels)} labels")
        if len(set(labels)) != len(labels):
            raise ValueError("column labels must be pairwise distinct")
        frozen = arr.astype(np.int8)
        frozen.flags.writeable = False
        object.__setattr__(self, "entries", frozen)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def with_main_labels(cls, entries) -> "SignMatrix":
        """Wrap an array, labeling its columns c1, c2, ... in order."""
        arr = np.asarray(entries)
        q = arr.shape[1] if arr.ndim == 2 else 0
        return cls(arr, tuple(ColumnLabel.main(i) for i in range(1, q + 1)))

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])

    def column(self, pos: int) -> np.ndarray:
        return self.entries[:, pos]

    def label_position(self, label: ColumnLabel) -> int:
        """Position of the column carrying ``label``; ValueError if absent."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"no column labeled {label}") from None

    def gram(self) -> np.ndarray:
        """X^T X in exact 64-bit integer arithmetic."""
        wide = self.entries.astype(np.int64)
        return wide.T @ wide

    @cached_property
    def neg_masks(self) -> tuple[int, ...]:
        """Per-column bitmask with bit r set when entry (r, c) equals -1.

        The entrywise product of a column subset then corresponds to the XOR
        of their masks, which makes exhaustive J enumeration cheap.
        """
        out = []
        for c in range(self.cols):
            mask = 0
            for r in np.nonzero(self.entries[:, c] < 0)[0]:
                mask |= 1 << int(r)
            out.append(mask)
        return tuple(out)

    def same_entries(self, other: "SignMatrix") -> bool:
        return self.entries.shape == other.entries.shape and bool(
            np.array_equal(self.entries, other.entries)
        )


@dataclass(frozen=True)
class AliasedPair:
    """Two columns equal up to sign: |inner product| equals the run count."""

    i: int
    j: int
    label_i: ColumnLabel
    label_j: ColumnLabel
    inner: int


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for f in range(2, math.isqrt(p) + 1):
        if p % f == 0:
            return False
    return True


def _is_hadamard(entries: np.ndarray) -> bool:
    n = entries.shape[0]
    if entries.shape != (n, n):
        return False
    wide = entries.astype(np.int64)
    return bool(np.array_equal(wide @ wide.T, n * np.eye(n, dtype=np.int64)))


def _main_labels(q: int) -> tuple[ColumnLabel, ...]:
    return tuple(ColumnLabel.main(i) for i in range(1, q + 1))


def sylvester_hadamard(k: int, max_order: int = DEFAULT_MAX_ORDER) -> SignMatrix:
    """Normalized Hadamard matrix of order 2**k by repeated doubling."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    n = 2**k
    if n > max_order:
        raise ValueError(f"order {n} exceeds the configured maximum {max_order}")
    cell = np.array([[1, 1], [1, -1]], dtype=np.int8)
    out = cell
    for _ in range(k - 1):
        out = np.kron(out, cell)
    return SignMatrix(out, _main_labels(n))


def _quadratic_character(p: int) -> np.ndarray:
    residues = {(x * x) % p for x in range(1, p)}
    return np.array(
        [0] + [1 if a in residues else -1 for a in range(1, p)], dtype=np.int8
    )


def paley_hadamard(p: int, max_order: int = DEFAULT_MAX_ORDER) -> SignMatrix:
    """Normalized Hadamard matrix from the quadratic residues modulo a prime.

    For p = 3 (mod 4) the order is p + 1 (type I); for p = 1 (mod 4) it is
    2(p + 1) (type II). Composite p is rejected: prime-power fields are out
    of scope, and all desk sizes are reachable with primes.
    """
    if p < 3 or p % 2 == 0 or not _is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    n = p + 1 if p % 4 == 3 else 2 * (p + 1)
    if n > max_order:
        raise ValueError(f"order {n} exceeds the configured maximum {max_order}")
    chi = _quadratic_character(p)
    jacobsthal = chi[(np.arange(p)[:, None] - np.arange(p)[None, :]) % p]
    if p % 4 == 3:
        h = np.empty((n, n), dtype=np.int8)
        h[0, 0] = 1
        h[0, 1:] = 1
        h[1:, 0] = -1
        h[1:, 1:] = jacobsthal + np.eye(p, dtype=np.int8)
    else:
        s = np.zeros((p + 1, p + 1), dtype=np.int8)
        s[0, 1:] = 1
        s[1:, 0] = 1
        s[1:, 1:] = jacobsthal
        h = np.kron(s, np.array([[1, 1], [1, -1]], dtype=np.int8)) + np.kron(
            np.eye(p + 1, dtype=np.int8), np.array([[1, -1], [-1, -1]], dtype=np.int8)
        )
    return normalize(SignMatrix(h, _main_labels(n)))


def normalize(matrix: SignMatrix) -> SignMatrix:
    """Equivalent Hadamard matrix whose first row and column are all +1.

    Only negates rows and columns, so the result stays Hadamard. Idempotent.
    """
    if not _is_hadamard(matrix.entries):
        raise ValueError("input is not a Hadamard matrix")
    e = matrix.entries.astype(np.int8).copy()
    e[:, e[0] < 0] *= -1
    e[e[:, 0] < 0, :] *= -1
    return SignMatrix(e, matrix.labels)


def to_hadamard_design(matrix: SignMatrix) -> SignMatrix:
    """Drop the leading all-ones column of a normalized Hadamard matrix.

    The result is a saturated OA(n, n-1, 2, 2) with columns labeled
    c1 ... c(n-1).
    """
    if not _is_hadamard(matrix.entries):
        raise ValueError("input is not a Hadamard matrix")
    if not np.all(matrix.entries[:, 0] == 1):
        raise ValueError("first column is not all +1; normalize the matrix first")
    return SignMatrix(matrix.entries[:, 1:], _main_labels(matrix.cols - 1))


def hadamard_matrix(
    n: int, construction: str = "auto", max_order: int = DEFAULT_MAX_ORDER
) -> SignMatrix:
    """Normalized Hadamard matrix of order n via Paley or Sylvester.

    ``auto`` prefers the quadratic-residue route and falls back to doubling
    when n is a power of two.
    """
    if n < 4 or n % 4 != 0:
        raise ValueError(f"n must be a positive multiple of 4, got {n}")
    if n > max_order:
        raise ValueError(f"order {n} exceeds the configured maximum {max_order}")
    paley_p = None
    if _is_prime(n - 1) and (n - 1) % 4 == 3:
        paley_p = n - 1
    elif n % 2 == 0 and _is_prime(n // 2 - 1) and (n // 2 - 1) % 4 == 1:
        paley_p = n // 2 - 1
    if construction == "paley":
        if paley_p is None:
            raise ValueError(f"no Paley construction reaches order {n}")
        return paley_hadamard(paley_p, max_order)
    if construction == "sylvester":
        k = n.bit_length() - 1
        if 2**k != n:
            raise ValueError(f"order {n} is not a power of two")
        return normalize(sylvester_hadamard(k, max_order))
    if construction != "auto":
        raise ValueError(f"unknown construction {construction!r}")
    if paley_p is not None:
        return paley_hadamard(paley_p, max_order)
    if 2 ** (n.bit_length() - 1) == n:
        return normalize(sylvester_hadamard(n.bit_length() - 1, max_order))
    raise ValueError(f"no implemented construction reaches order {n}")


def hadamard_design(
    n: int, construction: str = "auto", max_order: int = DEFAULT_MAX_ORDER
) -> SignMatrix:
    """Saturated OA(n, n-1, 2, 2): a normalized order-n Hadamard matrix minus
    its all-ones column."""
    return to_hadamard_design(hadamard_matrix(n, construction, max_order))


def drop_columns(
    design: SignMatrix, indices: Iterable[int]
) -> tuple[SignMatrix, SignMatrix]:
    """Remove columns by position, returning (kept, removed).

    The removed columns keep their labels and original order; downstream
    d-parameter computations need them, so provenance must survive deletion.
    """
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise ValueError("column indices must be distinct")
    for i in idx:
        if not 0 <= i < design.cols:
            raise ValueError(f"column index {i} out of range for {design.cols} columns")
    dropped = sorted(idx)
    keep = [c for c in range(design.cols) if c not in set(dropped)]
    kept = SignMatrix(design.entries[:, keep], tuple(design.labels[c] for c in keep))
    removed = SignMatrix(
        design.entries[:, dropped], tuple(design.labels[c] for c in dropped)
    )
    return kept, removed


def interaction_column(
    design: SignMatrix, i: int, j: int
) -> tuple[np.ndarray, ColumnLabel]:
    """Entrywise product of two distinct factor columns, with its label.

    Symmetric in (i, j). Both columns must carry main-effect labels; the
    product is labeled by the sorted pair of their factor indices.
    """
    if i == j:
        raise ValueError("an interaction needs two distinct columns")
    for pos in (i, j):
        if not 0 <= pos < design.cols:
            raise ValueError(f"column index {pos} out of range")
    li, lj = design.labels[i], design.labels[j]
    if li.is_interaction or lj.is_interaction:
        raise ValueError("interactions of interaction columns are not supported")
    product = design.entries[:, i] * design.entries[:, j]
    return product, ColumnLabel.interaction(li.i, lj.i)


def verify_oa_strength2(design: SignMatrix) -> bool:
    """True iff every ordered column pair hits each sign combination n/4 times.

    This is the literal strength-2 condition, counted exhaustively; any
    violation (including an unbalanced column) makes some pair fail.
    """
    n = design.rows
    if design.cols < 2:
        return True
    if n % 4 != 0:
        return False
    target = n // 4
    e = design.entries
    for i in range(design.cols):
        plus_i = e[:, i] == 1
        for j in range(i + 1, design.cols):
            plus_j = e[:, j] == 1
            pp = int(np.count_nonzero(plus_i & plus_j))
            pm = int(np.count_nonzero(plus_i & ~plus_j))
            mp = int(np.count_nonzero(~plus_i & plus_j))
            mm = n - pp - pm - mp
            if pp != target or pm != target or mp != target or mm != target:
                return False
    return True


def aliasing_report(design: SignMatrix) -> list[AliasedPair]:
    """All unordered column pairs that are equal up to sign.

    An empty list certifies that every pair is only partially aliased.
    """
    g = design.gram()
    n = design.rows
    hits = np.triu(np.abs(g) == n, k=1)
    report = []
    for i, j in zip(*np.nonzero(hits)):
        i, j = int(i), int(j)
        report.append(
            AliasedPair(i, j, design.labels[i], design.labels[j], int(g[i, j]))
        )
    return report
