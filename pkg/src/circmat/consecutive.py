"""Consecutive-ones and circular-ones recognition with least-failing-prefix
reporting, plus forbidden-submatrix certificates for the circular case.

The circular property reduces to the consecutive one: complement every row
with a 1 in a fixed cut column; a consecutive-ones order of the result is a
circular-ones order of the original, prefix by prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .catalog import classify_forbrow_with_embedding
from .certificates import NegCertificate
from .matrix import BinMatrix, Embedding, compose_embeddings
from .pqtree import PQTree


@dataclass(frozen=True)
class PrefixResult:
    """Either an order for all rows or the least prefix length that fails."""

    order: Optional[tuple[int, ...]] = None
    fail_index: Optional[int] = None

    def __post_init__(self):
        if (self.order is None) == (self.fail_index is None):
            raise ValueError("exactly one of order / fail_index must be set")

    @property
    def ok(self) -> bool:
        return self.order is not None


def consecutive_ones(m: BinMatrix) -> PrefixResult:
    """A consecutive-ones order of m, or the least i with rows 1..i failing."""
    tree = PQTree(m.n_cols)
    for i, row in enumerate(m.rows, start=1):
        if not tree.reduce(row):
            return PrefixResult(fail_index=i)
    order = tuple(tree.frontier()) if m.n_cols else ()
    return PrefixResult(order=order)


def _cut_column(m: BinMatrix) -> int:
    counts = [0] * (m.n_cols + 1)
    for row in m.rows:
        for c in row:
            counts[c] += 1
    return min(range(1, m.n_cols + 1), key=lambda c: (counts[c], c))


def circular_ones(m: BinMatrix) -> PrefixResult:
    """A circular-ones order of m, or the least failing prefix length.

    Rows holding a 1 at the lightest column get complemented; the reduced
    matrix is solved for consecutive ones and the resulting order is already
    a circular-ones order of m.
    """
    if m.n_cols == 0:
        return PrefixResult(order=())
    cut = _cut_column(m)
    full = frozenset(range(1, m.n_cols + 1))
    tree = PQTree(m.n_cols)
    for i, row in enumerate(m.rows, start=1):
        cells = row if cut not in row else (full - set(row))
        if not tree.reduce(cells):
            return PrefixResult(fail_index=i)
    return PrefixResult(order=tuple(tree.frontier()))


def _property_fails(rows: list[tuple[int, ...]], n_cols: int, circular: bool) -> bool:
    sub = BinMatrix(n_cols, rows)
    res = circular_ones(sub) if circular else consecutive_ones(sub)
    return not res.ok


def minimal_forbidden_submatrix(
    m: BinMatrix, circular: bool = True
) -> tuple[list[int], list[int]]:
    """Row and column index sets of a minimal submatrix without the property.

    Greedy single deletions (rows first, then columns) iterated to a fixed
    point; by heredity the result is a minimal forbidden submatrix.
    """
    res = circular_ones(m) if circular else consecutive_ones(m)
    if res.ok:
        raise ValueError("matrix has the property; nothing to minimize")
    rows = list(range(1, res.fail_index + 1))
    cols = list(range(1, m.n_cols + 1))

    def build(rs, cs):
        remap = {c: i + 1 for i, c in enumerate(cs)}
        return [tuple(remap[c] for c in m.rows[r - 1] if c in remap) for r in rs]

    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(rows):
            trial = rows[:i] + rows[i + 1 :]
            if _property_fails(build(trial, cols), len(cols), circular):
                rows = trial
                changed = True
            else:
                i += 1
        j = 0
        while j < len(cols):
            trial = cols[:j] + cols[j + 1 :]
            if _property_fails(build(rows, trial), len(trial), circular):
                cols = trial
                changed = True
            else:
                j += 1
    return rows, cols


def circular_ones_certificate(m: BinMatrix) -> NegCertificate:
    """A ForbRow member embedded in m, witnessing that circular ones fails."""
    rows, cols = minimal_forbidden_submatrix(m, circular=True)
    remap = {c: i + 1 for i, c in enumerate(cols)}
    core = BinMatrix(len(cols), [
        tuple(remap[c] for c in m.rows[r - 1] if c in remap) for r in rows
    ])
    hit = classify_forbrow_with_embedding(core)
    if hit is None:
        raise RuntimeError(
            "minimal forbidden submatrix not recognized as a ForbRow member"
        )
    cid, inner = hit
    outer = Embedding(tuple(rows), tuple(cols))
    return NegCertificate(cid, compose_embeddings(outer, inner))
