"""Independent brute-force deciders and witness checkers.

Everything here goes straight to the definitions: column orders (and row
orders, for the biorder property) are enumerated outright, with bitmask
interval tests.  Factorial cost is acceptable; hard size guards protect
against accidental blowups.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence

from .catalog import generate, is_family_member
from .certificates import NegCertificate, certificate_matrix_ok
from .matrix import BinMatrix, Biorder, validate_column_order

BRUTE_MAX_COLS = 9
BRUTE_CCO_MAX = 7

PROPERTIES = ("consecutive_ones", "circular_ones", "d_interval", "d_circular")


@dataclass(frozen=True)
class OracleVerdict:
    holds: bool
    witness: Optional[object] = None  # column order or Biorder


def _rot1(mask: int, n: int) -> int:
    return (mask >> 1) | ((mask & 1) << (n - 1))


def _is_circ(mask: int, n: int, full: int) -> bool:
    if mask == 0 or mask == full:
        return True
    return bin(mask ^ _rot1(mask, n)).count("1") == 2


def _is_lin(mask: int, n: int, full: int) -> bool:
    if mask == 0 or mask == full:
        return True
    if bin(mask ^ _rot1(mask, n)).count("1") != 2:
        return False
    return not (mask & 1 and mask >> (n - 1) & 1)


def _order_masks(m: BinMatrix, order: Sequence[int]) -> list[int]:
    rank = {c: p for p, c in enumerate(order)}
    return [sum(1 << rank[c] for c in row) for row in m.rows]


def _order_ok(masks: list[int], n: int, circular: bool, with_diffs: bool) -> bool:
    full = (1 << n) - 1
    test = _is_circ if circular else _is_lin
    for a in masks:
        if not test(a, n, full):
            return False
    if not with_diffs:
        return True
    for s in masks:
        for r in masks:
            if not test(s & ~r, n, full):
                return False
    return True


def order_satisfies(m: BinMatrix, order: Sequence[int], prop: str) -> bool:
    """Direct definitional check of one column order for one property."""
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    if m.n_cols == 0:
        return True
    validate_column_order(order, m.n_cols)
    circular = prop in ("circular_ones", "d_circular")
    with_diffs = prop in ("d_interval", "d_circular")
    return _order_ok(_order_masks(m, order), m.n_cols, circular, with_diffs)


def brute_property(m: BinMatrix, prop: str) -> OracleVerdict:
    """Try every column order; witness is the first (lexicographic) success."""
    if m.n_cols > BRUTE_MAX_COLS:
        raise ValueError(f"brute_property guard: n_cols > {BRUTE_MAX_COLS}")
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}")
    if m.n_cols == 0:
        return OracleVerdict(True, ())
    circular = prop in ("circular_ones", "d_circular")
    with_diffs = prop in ("d_interval", "d_circular")
    n = m.n_cols
    full = (1 << n) - 1
    test = _is_circ if circular else _is_lin
    for order in permutations(range(1, n + 1)):
        masks = _order_masks(m, order)
        ok = True
        for a in masks:
            if not test(a, n, full):
                ok = False
                break
        if ok and with_diffs:
            for s in masks:
                for r in masks:
                    if not test(s & ~r, n, full):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            return OracleVerdict(True, tuple(order))
    return OracleVerdict(False)


def verify_circular_ones_order(m: BinMatrix, order: Sequence[int]) -> bool:
    return order_satisfies(m, order, "circular_ones")


def verify_consecutive_ones_order(m: BinMatrix, order: Sequence[int]) -> bool:
    return order_satisfies(m, order, "consecutive_ones")


def verify_d_circular_order(m: BinMatrix, order: Sequence[int]) -> bool:
    """Every row and every pairwise difference is a circular interval."""
    return order_satisfies(m, order, "d_circular")


def verify_d_interval_order(m: BinMatrix, order: Sequence[int]) -> bool:
    return order_satisfies(m, order, "d_interval")


def circularly_monotone(seq: Sequence[int]) -> bool:
    """At most one cyclic descent; empty and singleton are vacuously monotone."""
    k = len(seq)
    if k <= 1:
        return True
    descents = sum(1 for i in range(k) if seq[i] > seq[(i + 1) % k])
    return descents <= 1


def _endpoints(mask: int, n: int) -> tuple[int, int]:
    """(left, right) 0-based rank endpoints of a nontrivial circular interval."""
    if mask & 1 and mask >> (n - 1) & 1:  # wraps
        right = 0
        while mask >> (right + 1) & 1:
            right += 1
        left = n - 1
        while mask >> (left - 1) & 1:
            left -= 1
        return left, right
    left = (mask & -mask).bit_length() - 1
    right = mask.bit_length() - 1
    return left, right


def arc_sequence_winds_once(arcs: Sequence[tuple[int, int]], n: int) -> bool:
    """Whether a cyclic sequence of (left_rank, length) arcs marches forward
    around the n-cycle at most once.

    Greedily unwraps: each arc starts at the least position compatible with
    nondecreasing lefts, bumped a revolution when its right end would step
    back.  Accepts iff both unwrapped endpoint sequences are monotone, the
    lefts stay strictly below one revolution and the rights within one.
    """
    if len(arcs) <= 1:
        return True
    left = arcs[0][0]
    right = left + arcs[0][1] - 1
    first_left, first_right = left, right
    for d, ln in arcs[1:]:
        nl = left + ((d - left) % n)
        nr = nl + ln - 1
        if nr < right:
            nl += n
            nr += n
        if nr < right:
            return False
        left, right = nl, nr
    return left < first_left + n and right <= first_right + n


def _nontrivial_arcs(masks: Sequence[int], n: int) -> list[tuple[int, int]]:
    full = (1 << n) - 1
    out = []
    for mask in masks:
        if mask in (0, full):
            continue
        d, _ = _endpoints(mask, n)
        out.append((d, bin(mask).count("1")))
    return out


def _sparse_arc(ranks: list[int], n: int) -> Optional[tuple[int, int]]:
    """(left_rank, length) of a sorted rank set as a circular arc; None when
    the set is not an arc.  Trivial sets are the arc (0, len)."""
    ln = len(ranks)
    if ln == 0 or ln == n:
        return (0, ln)
    if ln == 1:
        return (ranks[0], 1)
    gap = None
    for j in range(ln):
        if (ranks[(j + 1) % ln] - ranks[j]) % n > 1:
            if gap is not None:
                return None
            gap = j
    if gap is None:
        return None
    return (ranks[(gap + 1) % ln], ln)


def verify_cco_biorder(m: BinMatrix, b: Biorder) -> bool:
    """Checker for the circularly compatible ones conditions.

    (i) rows are circular intervals of the column order; (ii) columns are
    circular intervals of the row order; (iii) the nontrivial rows' arcs,
    read in row order, march around the column circle at most once, and
    (iv) symmetrically for the nontrivial columns.  The marching form of
    the endpoint-monotonicity condition is forced by the forbidden-family
    theorems; see the package notes on the endpoint condition.
    """
    k, l = m.shape
    if sorted(b.row_order) != list(range(1, k + 1)):
        return False
    try:
        validate_column_order(b.col_order, l)
    except ValueError:
        return False
    if l == 0 or k == 0:
        return True
    col_rank = {c: p for p, c in enumerate(b.col_order)}
    row_rank = {r: p for p, r in enumerate(b.row_order)}
    col_positions: dict[int, list[int]] = {}
    row_arcs: list[Optional[tuple[int, int]]] = [None] * k
    for i, row in enumerate(m.rows, start=1):
        for c in row:
            col_positions.setdefault(col_rank[c], []).append(row_rank[i])
        arc = _sparse_arc(sorted(col_rank[c] for c in row), l)
        if arc is None:
            return False
        row_arcs[row_rank[i]] = (arc, len(row))
    col_arcs: list[tuple[tuple[int, int], int]] = []
    for crank in range(l):
        pos = sorted(col_positions.get(crank, []))
        arc = _sparse_arc(pos, k)
        if arc is None:
            return False
        col_arcs.append((arc, len(pos)))
    rows_seq = [arc for arc, ln in row_arcs if 0 < ln < l]
    if not arc_sequence_winds_once(rows_seq, l):
        return False
    cols_seq = [arc for arc, ln in col_arcs if 0 < ln < k]
    return arc_sequence_winds_once(cols_seq, k)


def verify_monotone_circular_biorder(m: BinMatrix, b: Biorder) -> bool:
    """Monotone lefts, monotone unwrapped rights, and the alignment condition."""
    k, l = m.shape
    if any(m.is_trivial_row(i) for i in range(1, k + 1)):
        raise ValueError("matrix must have no trivial rows")
    if k == 0:
        return True
    if sorted(b.row_order) != list(range(1, k + 1)):
        return False
    validate_column_order(b.col_order, l)
    col_rank = {c: p for p, c in enumerate(b.col_order)}
    ends = []
    for r in b.row_order:
        row = m.rows[r - 1]
        mask = sum(1 << col_rank[c] for c in row)
        if not _is_circ(mask, l, (1 << l) - 1):
            return False
        d, e = _endpoints(mask, l)
        f = e if d <= e else e + l
        ends.append((d, f))
    lefts = [d for d, _ in ends]
    rights = [f for _, f in ends]
    if any(lefts[i] > lefts[i + 1] for i in range(len(lefts) - 1)):
        return False
    if any(rights[i] > rights[i + 1] for i in range(len(rights) - 1)):
        return False
    f1 = rights[0]
    fp = rights[-1]
    # Alignment: f_1 = e_1^+ (the row wraps), or f_1 = e_1 and f_p <= e_1 + l.
    if f1 >= l:
        return True
    return fp <= f1 + l


def verify_lco_biorder(m: BinMatrix, b: Biorder) -> bool:
    """Linearly compatible ones conditions (the linear analogue of CCO)."""
    k, l = m.shape
    if sorted(b.row_order) != list(range(1, k + 1)):
        return False
    try:
        validate_column_order(b.col_order, l)
    except ValueError:
        return False
    if l == 0 or k == 0:
        return True
    col_rank = {c: p for p, c in enumerate(b.col_order)}
    row_rank = {r: p for p, r in enumerate(b.row_order)}
    full = (1 << l) - 1
    positions_per_col: dict[int, list[int]] = {}
    row_masks = []
    for i, row in enumerate(m.rows, start=1):
        mask = sum(1 << col_rank[c] for c in row)
        row_masks.append(mask)
        if not _is_lin(mask, l, full):
            return False
        for c in row:
            positions_per_col.setdefault(c, []).append(row_rank[i])
    for c in range(1, l + 1):
        pos = sorted(positions_per_col.get(c, []))
        if pos and pos[-1] - pos[0] != len(pos) - 1:
            return False
    lefts, rights = [], []
    for r in b.row_order:
        mask = row_masks[r - 1]
        if mask == 0 or mask == full:
            continue
        d, e = _endpoints(mask, l)
        lefts.append(d)
        rights.append(e)
    return all(lefts[i] <= lefts[i + 1] for i in range(len(lefts) - 1)) and all(
        rights[i] <= rights[i + 1] for i in range(len(rights) - 1)
    )


def brute_cco(m: BinMatrix) -> OracleVerdict:
    """Enumerate biorders and test the CCO conditions directly."""
    k, l = m.shape
    if k > BRUTE_CCO_MAX or l > BRUTE_CCO_MAX:
        raise ValueError(f"brute_cco guard: shape beyond {BRUTE_CCO_MAX}")
    if k == 0 or l == 0:
        b = Biorder(tuple(range(1, k + 1)), tuple(range(1, l + 1)))
        return OracleVerdict(True, b)
    full = (1 << l) - 1
    rows_id = tuple(range(1, k + 1))
    for col_order in permutations(range(1, l + 1)):
        col_rank = {c: p for p, c in enumerate(col_order)}
        masks = [sum(1 << col_rank[c] for c in row) for row in m.rows]
        if not all(_is_circ(a, l, full) for a in masks):
            continue
        for row_order in permutations(rows_id):
            b = Biorder(row_order, tuple(col_order))
            if verify_cco_biorder(m, b):
                return OracleVerdict(True, b)
    return OracleVerdict(False)


def brute_doubly_d_circular(m: BinMatrix) -> OracleVerdict:
    from .matrix import transpose

    a = brute_property(m, "d_circular")
    if not a.holds:
        return OracleVerdict(False)
    bt = brute_property(transpose(m), "d_circular")
    if not bt.holds:
        return OracleVerdict(False)
    return OracleVerdict(True, a.witness)


_FAMILY_OF_PROP = {
    "circular_ones": "ForbRow",
    "d_circular": "F_DCircR_inf",
    "d_interval": "F_DIntR_inf",
    "lco": "F_DIntR_inf",
    "cco": "F_CCO_inf",
    "pcab": "F_CCO_inf",
    "pib": "F_DIntR_inf",
}


def verify_certificate(host, cert, prop: str) -> bool:
    """Embedding round-trip, family membership, and (within size guards) an
    oracle confirmation that the named matrix does fail the property."""
    if prop not in _FAMILY_OF_PROP:
        raise ValueError(f"unknown property {prop!r}")
    family_name = _FAMILY_OF_PROP[prop]
    if isinstance(host, BinMatrix):
        if not isinstance(cert, NegCertificate):
            return False
        if not certificate_matrix_ok(host, cert):
            return False
        if not is_family_member(cert.id, family_name):
            return False
        return _member_fails(cert.id, prop)
    from .bigraph import Bigraph, SubgraphCertificate, induced_matches  # lazy: avoids cycle

    if isinstance(host, Bigraph) and isinstance(cert, SubgraphCertificate):
        if not induced_matches(host, cert):
            return False
        if not is_family_member(cert.matrix_id, family_name):
            return False
        return _member_fails(cert.matrix_id, prop)
    return False


def _member_fails(cid, prop: str) -> bool:
    mat = generate(cid)
    if prop in ("circular_ones", "d_circular", "d_interval", "lco", "pib"):
        key = {"lco": "d_interval", "pib": "d_interval"}.get(prop, prop)
        if mat.n_cols > BRUTE_MAX_COLS:
            return True  # beyond the guard; membership already established
        return not brute_property(mat, key).holds
    if mat.n_rows > BRUTE_CCO_MAX or mat.n_cols > BRUTE_CCO_MAX:
        return True
    return not brute_cco(mat).holds


def verify_bimodel(g, bm) -> bool:
    from .bigraph import verify_bimodel as _impl  # lazy: avoids cycle

    return _impl(g, bm)
