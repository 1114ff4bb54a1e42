"""Design CSV format and JSON report serialization.

The CSV format is bit-exact: one design row per line, entries "+1" or "-1"
comma-separated, with an optional first header line of column labels such as
"c3" or "c1*c2". Readers accept files with or without the header; writers
always emit it. Tokens other than "+1"/"-1" in data rows are rejected with
the offending line and column.

Rationals render in JSON as {"num", "den", "decimal"} where "decimal" is a
12-significant-digit display string; equality semantics always use num/den.
"""

from __future__ import annotations

import decimal
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .builder import SsdBuild
from .core import (
    AliasedPair,
    ColumnLabel,
    SignMatrix,
    aliasing_report,
    verify_oa_strength2,
)
from .es2 import Decomposition, OptimalityReport, bound_details, es2_direct
from .spectral import gwp_via_krawtchouk


class CsvFormatError(ValueError):
    """Malformed design CSV; carries the 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        location = ""
        if line is not None:
            location = f" (line {line}" + (f", column {column})" if column else ")")
        super().__init__(message + location)
        self.line = line
        self.column = column


def design_csv_text(design: SignMatrix) -> str:
    """Serialize a design to CSV text, header included."""
    lines = [",".join(str(label) for label in design.labels)]
    for row in design.entries:
        lines.append(",".join("+1" if v > 0 else "-1" for v in row))
    return "\n".join(lines) + "\n"


def _parse_labels(tokens: list[str]) -> tuple[ColumnLabel, ...]:
    labels = []
    for col, token in enumerate(tokens, start=1):
        try:
            labels.append(ColumnLabel.parse(token))
        except ValueError:
            raise CsvFormatError(f"bad column label {token!r}", line=1, column=col)
    return tuple(labels)


def parse_design_csv(text: str) -> SignMatrix:
    """Parse design CSV text; header optional, tokens strictly "+1"/"-1"."""
    raw_lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if not raw_lines:
        raise CsvFormatError("empty design file")
    first_tokens = [t.strip() for t in raw_lines[0].split(",")]
    has_header = any(t not in ("+1", "-1") for t in first_tokens)
    labels = _parse_labels(first_tokens) if has_header else None
    data_lines = raw_lines[1:] if has_header else raw_lines
    if not data_lines:
        raise CsvFormatError("no data rows", line=1)
    width = None
    rows = []
    for offset, line in enumerate(data_lines):
        line_no = offset + (2 if has_header else 1)
        tokens = [t.strip() for t in line.split(",")]
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise CsvFormatError(
                f"expected {width} entries, found {len(tokens)}", line=line_no
            )
        row = []
        for col, token in enumerate(tokens, start=1):
            if token == "+1":
                row.append(1)
            elif token == "-1":
                row.append(-1)
            else:
                raise CsvFormatError(
                    f"invalid entry {token!r}, expected \"+1\" or \"-1\"",
                    line=line_no,
                    column=col,
                )
        rows.append(row)
    entries = np.array(rows, dtype=np.int8)
    if labels is None:
        return SignMatrix.with_main_labels(entries)
    if len(labels) != entries.shape[1]:
        raise CsvFormatError(
            f"header has {len(labels)} labels but rows have {entries.shape[1]} entries",
            line=1,
        )
    return SignMatrix(entries, labels)


def write_design_csv(path: str | Path, design: SignMatrix) -> None:
    Path(path).write_text(design_csv_text(design), encoding="utf-8")


def read_design_csv(path: str | Path) -> SignMatrix:
    return parse_design_csv(Path(path).read_text(encoding="utf-8"))


def decimal_str(value: Fraction, digits: int = 12) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        quotient = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
    return str(quotient)


def fraction_json(value: Fraction) -> dict:
    return {
        "num": value.numerator,
        "den": value.denominator,
        "decimal": decimal_str(value),
    }


def _aliased_json(pairs: tuple[AliasedPair, ...] | list[AliasedPair]) -> list[dict]:
    return [
        {
            "i": p.i,
            "j": p.j,
            "label_i": str(p.label_i),
            "label_j": str(p.label_j),
            "inner": p.inner,
        }
        for p in pairs
    ]


def _core_json(
    n: int,
    m: int,
    chosen: Decomposition,
    lb: Fraction,
    es2: Fraction,
    gap: Fraction,
    optimal: bool,
    aliased,
) -> dict:
    """Numeric core shared by generate reports and evaluate reports.

    Shared structure guarantees the round-trip test can compare the two
    bit for bit.
    """
    return {
        "n": n,
        "m": m,
        "a": chosen.a,
        "r": chosen.r,
        "sign": chosen.sign,
        "D": chosen.D,
        "lb": fraction_json(lb),
        "es2": fraction_json(es2),
        "gap": fraction_json(gap),
        "optimal": optimal,
        "aliased_pairs": _aliased_json(aliased),
    }


def _family_json(family) -> dict:
    return {
        "kind": family.kind,
        "deleted": str(family.deleted) if family.deleted is not None else None,
        "parent": family.parent,
    }


def report_json(report: OptimalityReport) -> dict:
    """Full verdict report, numeric core plus provenance."""
    out = _core_json(
        report.n,
        report.m,
        report.chosen,
        report.lower_bound,
        report.es2,
        report.gap,
        report.optimal,
        report.aliased,
    )
    out["family"] = _family_json(report.family)
    out["d"] = report.d
    out["notes"] = report.notes
    return out


def sidecar_json(build: SsdBuild, report: OptimalityReport) -> dict:
    """Build provenance written next to a generated design CSV."""
    return {
        "family": _family_json(build.family),
        "start": {
            "rows": build.start.rows,
            "cols": build.start.cols,
            "labels": [str(label) for label in build.start.labels],
        },
        "design": {"rows": build.design.rows, "cols": build.design.cols},
        "d": build.d,
        "report": report_json(report),
    }


def evaluate_report(design: SignMatrix) -> dict:
    """Analysis report for an arbitrary design file.

    Always contains dimensions, balance and strength flags, the GWP vector,
    and the aliasing list. The E(s^2)-versus-bound core is present whenever
    the bound applies (balanced, n = 0 mod 4, at least two columns, and m
    admits a decomposition); otherwise it is null with a reason.
    """
    n, m = design.rows, design.cols
    balanced = bool(np.all(design.entries.sum(axis=0) == 0))
    gwp = gwp_via_krawtchouk(design)
    aliased = aliasing_report(design)
    out = {
        "rows": n,
        "cols": m,
        "balanced": balanced,
        "oa_strength_2": verify_oa_strength2(design),
        "gwp": [fraction_json(gwp[s]) for s in range(1, m + 1)],
        "aliased_pairs": _aliased_json(aliased),
        "es2_report": None,
    }
    if m < 2:
        out["es2_report_skipped"] = "fewer than two columns"
        return out
    es2 = es2_direct(design)
    out["es2"] = fraction_json(es2)
    if not balanced or n % 4 != 0:
        out["es2_report_skipped"] = "bound applies to balanced designs with n = 0 (mod 4)"
        return out
    try:
        _, chosen, lb = bound_details(n, m)
    except ValueError as exc:
        out["es2_report_skipped"] = str(exc)
        return out
    gap = es2 - lb
    out["es2_report"] = _core_json(n, m, chosen, lb, es2, gap, gap == 0, aliased)
    return out


def dump_json(payload: dict, path: str | Path) -> None:
    """Deterministic JSON file: sorted keys, two-space indent, one trailing newline."""
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
