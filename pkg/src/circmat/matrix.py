"""Binary matrix value type and structural operators.

Rows are identified with their sets of 1-columns and stored as strictly
increasing tuples of 1-based column indices.  All operators are pure; no
function mutates its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class BinMatrix:
    """Immutable binary matrix, rows stored as sorted column-index tuples."""

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, n_cols: int, rows: Iterable[Iterable[int]]):
        if n_cols < 0:
            raise ValueError("n_cols must be nonnegative")
        packed = []
        for r in rows:
            row = tuple(sorted(set(r)))
            if row and (row[0] < 1 or row[-1] > n_cols):
                raise ValueError(f"column index out of range [1, {n_cols}]: {row}")
            packed.append(row)
        object.__setattr__(self, "n_cols", n_cols)
        object.__setattr__(self, "rows", tuple(packed))
        object.__setattr__(self, "n_rows", len(packed))

    def __setattr__(self, name, value):
        raise AttributeError("BinMatrix is immutable")

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]], n_cols: Optional[int] = None) -> "BinMatrix":
        """Build from a list of 0/1 lists (n_cols needed only for 0-row matrices)."""
        if entries:
            widths = {len(r) for r in entries}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            n_cols = widths.pop()
            if any(v not in (0, 1) for r in entries for v in r):
                raise ValueError("entries must be 0 or 1")
        elif n_cols is None:
            n_cols = 0
        return cls(n_cols, [[j + 1 for j, v in enumerate(r) if v] for r in entries])

    def to_dense(self) -> list[list[int]]:
        out = []
        for r in self.rows:
            dense = [0] * self.n_cols
            for c in r:
                dense[c - 1] = 1
            out.append(dense)
        return out

    def entry(self, i: int, j: int) -> int:
        """(i, j) entry, 1-based."""
        if not (1 <= i <= self.n_rows and 1 <= j <= self.n_cols):
            raise ValueError(f"entry ({i}, {j}) out of range")
        return 1 if j in set(self.rows[i - 1]) else 0

    def row_set(self, i: int) -> frozenset[int]:
        return frozenset(self.rows[i - 1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def is_trivial_row(self, i: int) -> bool:
        """True for an empty row or a row equal to the set of all columns."""
        n = len(self.rows[i - 1])
        return n == 0 or n == self.n_cols

    def ones(self) -> int:
        return sum(len(r) for r in self.rows)

    def size(self) -> int:
        """Rows + columns + number of ones."""
        return self.n_rows + self.n_cols + self.ones()

    def __eq__(self, other):
        return (
            isinstance(other, BinMatrix)
            and self.n_cols == other.n_cols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n_cols, self.rows))

    def __repr__(self):
        if self.n_rows <= 8 and self.n_cols <= 12:
            body = "; ".join("".join(str(v) for v in r) for r in self.to_dense())
            return f"BinMatrix({self.n_rows}x{self.n_cols}: {body})"
        return f"BinMatrix({self.n_rows}x{self.n_cols}, {self.ones()} ones)"


@dataclass(frozen=True)
class Embedding:
    """Injective row map rho and column map sigma into a host matrix."""

    rho: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.rho)) != len(self.rho) or len(set(self.sigma)) != len(self.sigma):
            raise ValueError("row and column maps must be injective")


# A column order is the permutation of [1..n_cols] listing columns in
# ascending order of the linear order it represents.
ColumnOrder = tuple[int, ...]


@dataclass(frozen=True)
class Biorder:
    """A row order paired with a column order, both as ascending listings."""

    row_order: tuple[int, ...]
    col_order: tuple[int, ...]


@dataclass(frozen=True)
class CircInterval:
    """A row rendered as circular interval of a column order: empty, full, or arc."""

    kind: str  # "empty" | "full" | "arc"
    left: Optional[int] = None  # column index, not rank
    right: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("empty", "full", "arc"):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.kind == "arc" and (self.left is None or self.right is None):
            raise ValueError("arc needs endpoints")


def validate_column_order(order: Sequence[int], n_cols: int) -> None:
    if sorted(order) != list(range(1, n_cols + 1)):
        raise ValueError(f"not a permutation of [1, {n_cols}]: {order}")


def complement(m: BinMatrix) -> BinMatrix:
    """Entrywise complement."""
    full = range(1, m.n_cols + 1)
    return BinMatrix(m.n_cols, [set(full) - set(r) for r in m.rows])


def transpose(m: BinMatrix) -> BinMatrix:
    cols: list[list[int]] = [[] for _ in range(m.n_cols)]
    for i, r in enumerate(m.rows, start=1):
        for c in r:
            cols[c - 1].append(i)
    return BinMatrix(m.n_rows, cols)


def row_complement(mask: Sequence[int] | str, m: BinMatrix) -> BinMatrix:
    """a⊙M: complement exactly the rows i with mask[i] = 1."""
    bits = [int(b) for b in mask]
    if len(bits) != m.n_rows or any(b not in (0, 1) for b in bits):
        raise ValueError("mask must be a binary sequence of length n_rows")
    full = set(range(1, m.n_cols + 1))
    return BinMatrix(
        m.n_cols,
        [full - set(r) if b else r for b, r in zip(bits, m.rows)],
    )


def star(m: BinMatrix) -> BinMatrix:
    """M*: append one all-zero column."""
    return BinMatrix(m.n_cols + 1, m.rows)


def pad_trivial(m: BinMatrix, u: int) -> BinMatrix:
    """M^[u]: append a column with a 1-u entry exactly on the all-u rows.

    Requires at least one all-u row; the result has no trivial rows.
    """
    if u not in (0, 1):
        raise ValueError("u must be 0 or 1")
    is_all_u = [
        (len(r) == 0 if u == 0 else len(r) == m.n_cols) for r in m.rows
    ]
    if not any(is_all_u):
        raise ValueError(f"no all-{u} row to pad away")
    new_col = m.n_cols + 1
    rows = []
    for r, hit in zip(m.rows, is_all_u):
        gets_one = hit if u == 0 else not hit
        rows.append(r + (new_col,) if gets_one else r)
    return BinMatrix(new_col, rows)


def submatrix(m: BinMatrix, e: Embedding) -> BinMatrix:
    """M_{rho,sigma}: (i, j) entry is the (rho(i), sigma(j)) entry of M."""
    for i in e.rho:
        if not 1 <= i <= m.n_rows:
            raise ValueError(f"row index {i} out of range")
    for j in e.sigma:
        if not 1 <= j <= m.n_cols:
            raise ValueError(f"column index {j} out of range")
    col_of = {c: jj + 1 for jj, c in enumerate(e.sigma)}
    rows = []
    for i in e.rho:
        src = set(m.rows[i - 1])
        rows.append([col_of[c] for c in e.sigma if c in src])
    return BinMatrix(len(e.sigma), rows)


def compose_embeddings(outer: Embedding, inner: Embedding) -> Embedding:
    """Embedding of F into M given F into S = submatrix(M, outer) via inner."""
    return Embedding(
        tuple(outer.rho[i - 1] for i in inner.rho),
        tuple(outer.sigma[j - 1] for j in inner.sigma),
    )


def identity_embedding(m: BinMatrix) -> Embedding:
    return Embedding(tuple(range(1, m.n_rows + 1)), tuple(range(1, m.n_cols + 1)))


def _row_masks(m: BinMatrix) -> list[int]:
    return [sum(1 << (c - 1) for c in r) for r in m.rows]


def find_configuration(m: BinMatrix, f: BinMatrix) -> Optional[Embedding]:
    """Search for F inside M as a configuration.

    Returns the embedding with lexicographically least rho (then least sigma)
    such that submatrix(m, e) == f, or None.  Backtracking over target rows
    with column-pattern count pruning; meant for small patterns.
    """
    kf, lf = f.shape
    km, lm = m.shape
    if kf > km or lf > lm:
        return None

    # Column bitmasks over rows: bit (i-1) set iff entry (i, j) = 1.
    fcols = [0] * lf
    for i, r in enumerate(f.rows):
        for c in r:
            fcols[c - 1] |= 1 << i
    mcols = [0] * lm
    for i, r in enumerate(m.rows):
        for c in r:
            mcols[c - 1] |= 1 << i

    f_counts = [len(r) for r in f.rows]
    m_counts = [len(r) for r in m.rows]
    m_zeros = [lm - c for c in m_counts]

    rho: list[int] = []
    used = [False] * (km + 1)
    # Per-target-column / per-host-column pattern over the rows chosen so far.
    fpat = [0] * lf
    mpat = [0] * lm

    def feasible() -> bool:
        need: dict[int, int] = {}
        for p in fpat:
            need[p] = need.get(p, 0) + 1
        have: dict[int, int] = {}
        for p in mpat:
            if p in need:
                have[p] = have.get(p, 0) + 1
        return all(have.get(p, 0) >= n for p, n in need.items())

    def assign_sigma() -> Optional[tuple[int, ...]]:
        pools: dict[int, list[int]] = {}
        for j in range(lm - 1, -1, -1):
            pools.setdefault(mpat[j], []).append(j + 1)
        sigma = []
        for j in range(lf):
            pool = pools.get(fpat[j])
            if not pool:
                return None
            sigma.append(pool.pop())
        return tuple(sigma)

    def extend(t: int) -> Optional[Embedding]:
        if t == kf:
            sigma = assign_sigma()
            if sigma is None:
                return None
            return Embedding(tuple(rho), sigma)
        bit = 1 << t
        for r in range(1, km + 1):
            if used[r] or m_counts[r - 1] < f_counts[t] or m_zeros[r - 1] < lf - f_counts[t]:
                continue
            used[r] = True
            rho.append(r)
            rbit = 1 << (r - 1)
            for j in range(lf):
                if fcols[j] & bit:
                    fpat[j] |= bit
            for j in range(lm):
                if mcols[j] & rbit:
                    mpat[j] |= bit
            if feasible():
                res = extend(t + 1)
                if res is not None:
                    return res
            for j in range(lf):
                fpat[j] &= ~bit
            for j in range(lm):
                mpat[j] &= ~bit
            rho.pop()
            used[r] = False
        return None

    return extend(0)


def contains_configuration(m: BinMatrix, f: BinMatrix) -> bool:
    return find_configuration(m, f) is not None


def same_configuration(a: BinMatrix, b: BinMatrix) -> bool:
    """True iff a and b are equal up to row and column permutations."""
    return a.shape == b.shape and contains_configuration(a, b)


def rows_as_circular_intervals(
    m: BinMatrix, order: Sequence[int]
) -> list[CircInterval] | int:
    """Render every row as a circular interval of the order.

    Returns the interval list, or the 1-based index of the first row that is
    not a circular interval of the order.
    """
    validate_column_order(order, m.n_cols)
    rank = {c: p for p, c in enumerate(order)}  # 0-based ranks
    n = m.n_cols
    out: list[CircInterval] = []
    for i, r in enumerate(m.rows, start=1):
        if not r:
            out.append(CircInterval("empty"))
            continue
        if len(r) == n:
            out.append(CircInterval("full"))
            continue
        ranks = sorted(rank[c] for c in r)
        if len(ranks) == 1:
            c = order[ranks[0]]
            out.append(CircInterval("arc", c, c))
            continue
        # A nontrivial circular interval has exactly one cyclic gap.
        gap_positions = [
            j for j in range(len(ranks))
            if (ranks[(j + 1) % len(ranks)] - ranks[j]) % n > 1
        ]
        if len(gap_positions) != 1:
            return i
        g = gap_positions[0]
        right = order[ranks[g]]
        left = order[ranks[(g + 1) % len(ranks)]]
        out.append(CircInterval("arc", left, right))
    return out


def interval_columns(ci: CircInterval, order: Sequence[int]) -> frozenset[int]:
    """Expand a circular interval back to its column set under the order."""
    if ci.kind == "empty":
        return frozenset()
    if ci.kind == "full":
        return frozenset(order)
    rank = {c: p for p, c in enumerate(order)}
    n = len(order)
    a, b = rank[ci.left], rank[ci.right]
    if a <= b:
        return frozenset(order[a : b + 1])
    return frozenset(order[a:]) | frozenset(order[: b + 1])
