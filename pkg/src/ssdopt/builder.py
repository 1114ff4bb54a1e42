"""Assembly of supersaturated designs from a strength-2 starting array.

Four families are supported, each a different selection from the starting
array's main-effect columns and two-column interactions:

* ``full``: all q mains plus all C(q, 2) interactions, m = q(q+1)/2
* ``minus-one``: the full set with one named column removed, m = q(q+1)/2 - 1
* ``interactions-only``: the C(q, 2) interactions alone, m = q(q-1)/2
* ``single-parent``: all mains plus the q - 1 interactions of one parent
  factor, m = 2q - 1

Column order is always mains first, then interactions lexicographically by
column-position pair, so rebuilding with the same inputs is byte-identical.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import ColumnLabel, SignMatrix, interaction_column, verify_oa_strength2
from .spectral import d_parameter

FULL = "full"
MINUS_ONE = "minus-one"
INTERACTIONS_ONLY = "interactions-only"
SINGLE_PARENT = "single-parent"

_KINDS = (FULL, MINUS_ONE, INTERACTIONS_ONLY, SINGLE_PARENT)


@dataclass(frozen=True)
class SsdFamily:
    """Which selection of mains and interactions a build used."""

    kind: str
    deleted: ColumnLabel | None = None
    parent: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if (self.kind == MINUS_ONE) != (self.deleted is not None):
            raise ValueError("'minus-one' requires a deleted label, others forbid it")
        if (self.kind == SINGLE_PARENT) != (self.parent is not None):
            raise ValueError("'single-parent' requires a parent index, others forbid it")

    @classmethod
    def full(cls) -> "SsdFamily":
        return cls(FULL)

    @classmethod
    def minus_one(cls, deleted: ColumnLabel) -> "SsdFamily":
        return cls(MINUS_ONE, deleted=deleted)

    @classmethod
    def interactions_only(cls) -> "SsdFamily":
        return cls(INTERACTIONS_ONLY)

    @classmethod
    def single_parent(cls, parent: int) -> "SsdFamily":
        return cls(SINGLE_PARENT, parent=parent)


@dataclass(frozen=True, eq=False)
class SsdBuild:
    """A constructed supersaturated design together with its provenance.

    ``d`` is the half-fraction multiplicity consumed by the evaluation
    formulas that depend on which columns were dropped from the saturated
    parent; it is resolved at build time when those columns are supplied.
    """

    design: SignMatrix
    start: SignMatrix
    family: SsdFamily
    d: int | None = None


def _require_start(start: SignMatrix, deficits: tuple[int, ...], what: str) -> None:
    n, q = start.rows, start.cols
    if n - q not in deficits:
        allowed = ", ".join(f"n-{k}" for k in deficits)
        raise ValueError(f"{what} needs q in {{{allowed}}}, got n={n}, q={q}")
    if not verify_oa_strength2(start):
        raise ValueError("starting array is not an orthogonal array of strength 2")


def _interaction_block(
    start: SignMatrix, pairs: list[tuple[int, int]]
) -> tuple[np.ndarray, list[ColumnLabel]]:
    columns = []
    labels = []
    for u, v in pairs:
        vec, label = interaction_column(start, u, v)
        columns.append(vec)
        labels.append(label)
    block = np.column_stack(columns) if columns else np.empty((start.rows, 0), np.int8)
    return block, labels


def _full_columns(start: SignMatrix) -> tuple[np.ndarray, list[ColumnLabel]]:
    pairs = list(itertools.combinations(range(start.cols), 2))
    block, labels = _interaction_block(start, pairs)
    entries = np.hstack([start.entries, block])
    return entries, list(start.labels) + labels


def build_full(start: SignMatrix) -> SsdBuild:
    """Augment the starting array with all of its two-column interactions."""
    _require_start(start, (1, 2, 3), "full augmentation")
    q = start.cols
    if start.rows > q + math.comb(q, 2):
        raise ValueError("design would not be supersaturated: n > q + C(q, 2)")
    entries, labels = _full_columns(start)
    design = SignMatrix(entries, tuple(labels))
    return SsdBuild(design, start, SsdFamily.full())


def build_minus_one(
    start: SignMatrix, delete: ColumnLabel, removed: SignMatrix | None = None
) -> SsdBuild:
    """Full augmentation minus one named main or interaction column.

    ``removed`` carries the columns dropped from the saturated parent on the
    way to ``start``; with a one-column ``removed`` and an interaction
    deletion at q = n - 2 it determines the d recorded on the build.
    """
    _require_start(start, (1, 2), "minus-one augmentation")
    entries, labels = _full_columns(start)
    try:
        pos = labels.index(delete)
    except ValueError:
        raise ValueError(f"{delete} is not a column of the full augmentation") from None
    keep = [c for c in range(len(labels)) if c != pos]
    design = SignMatrix(entries[:, keep], tuple(labels[c] for c in keep))
    d = None
    if (
        delete.is_interaction
        and start.rows - start.cols == 2
        and removed is not None
        and removed.cols == 1
    ):
        pa = start.label_position(ColumnLabel.main(delete.i))
        pb = start.label_position(ColumnLabel.main(delete.j))
        d = d_parameter(removed.column(0), start.column(pa), start.column(pb))
    return SsdBuild(design, start, SsdFamily.minus_one(delete), d)


def build_interactions_only(start: SignMatrix) -> SsdBuild:
    """Keep only the C(q, 2) two-column interactions of the starting array."""
    _require_start(start, (1, 2, 3), "interactions-only construction")
    pairs = list(itertools.combinations(range(start.cols), 2))
    block, labels = _interaction_block(start, pairs)
    design = SignMatrix(block, tuple(labels))
    return SsdBuild(design, start, SsdFamily.interactions_only())


def build_single_parent(
    start: SignMatrix, parent: int, removed: SignMatrix | None = None
) -> SsdBuild:
    """All mains plus the q - 1 interactions involving one parent column.

    At q = n - 3 the evaluation formula depends on d; it is computed from the
    two ``removed`` columns and the parent column when provided.
    """
    _require_start(start, (1, 2, 3), "single-parent augmentation")
    if not 0 <= parent < start.cols:
        raise ValueError(f"parent index {parent} out of range")
    pairs = sorted(
        (min(parent, v), max(parent, v)) for v in range(start.cols) if v != parent
    )
    block, labels = _interaction_block(start, pairs)
    entries = np.hstack([start.entries, block])
    design = SignMatrix(entries, tuple(start.labels) + tuple(labels))
    d = None
    if start.rows - start.cols == 3 and removed is not None and removed.cols == 2:
        d = d_parameter(removed.column(0), removed.column(1), start.column(parent))
    return SsdBuild(design, start, SsdFamily.single_parent(parent), d)
