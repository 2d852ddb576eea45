"""Named forbidden matrices, their families, and the auxiliary constructions.

Every generator reproduces the reference layout exactly; derived members
(star, complement, transpose, row-complement masks) are built from the base
matrices by the corresponding operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .matrix import (
    BinMatrix,
    Embedding,
    complement,
    find_configuration,
    row_complement,
    same_configuration,
    star,
    submatrix,
    transpose,
)


@dataclass(frozen=True)
class CatalogId:
    """Symbolic name of a catalog matrix, with size/mask parameters."""

    family: str
    k: Optional[int] = None
    a: Optional[str] = None

    def __str__(self):
        if self.family == "aM_I*":
            return f"{self.a}(+)M_I*({self.k})"
        if self.family == "aM_I*T":
            return f"({self.a}(+)M_I*({self.k}))T"
        if self.k is not None:
            base = self.family[:-1] if self.family.endswith("T") else self.family
            tail = "T" if self.family.endswith("T") else ""
            return f"{base}({self.k}){tail}"
        return self.family


_FIXED = {
    "M_IV": [
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 1, 1],
        [0, 1, 0, 1, 0, 1],
    ],
    "M_V": [
        [1, 1, 0, 0, 0],
        [1, 1, 1, 1, 0],
        [0, 0, 1, 1, 0],
        [1, 0, 0, 1, 1],
    ],
    "Z1": [[1, 1, 1], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "Z2": [[1, 0, 0], [1, 1, 0], [1, 1, 1], [0, 1, 0]],
    "Z3": [[1, 0, 0], [1, 1, 0], [1, 1, 1], [1, 0, 1]],
    "Z4": [[1, 1, 1, 0], [0, 1, 1, 1], [0, 0, 1, 0]],
    "Z5": [[1, 0, 0, 1], [1, 1, 0, 0], [1, 1, 1, 0], [0, 1, 0, 0]],
    "Z6": [[1, 1, 1, 0], [1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]],
    "Z7": [[1, 1, 1, 0], [1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 0]],
    "Z8": [[1, 1, 1, 0, 1], [0, 1, 1, 1, 1], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1]],
}

_STARRED = {"Z1*": "Z1", "Z2*": "Z2", "Z3*": "Z3", "Z4*": "Z4", "M_V*": "M_V"}
_COMPLEMENTED = {
    "coZ1*": "Z1*",
    "coZ2*": "Z2*",
    "coZ4*": "Z4*",
    "coZ6": "Z6",
    "co_M_IV": "M_IV",
    "co_M_V*": "M_V*",
}


def m_i(k: int) -> BinMatrix:
    """M_I(k): the k-cycle edge rows {i, i+1} plus the wrap row {1, k}."""
    if k < 3:
        raise ValueError("M_I(k) needs k >= 3")
    rows = [[i, i + 1] for i in range(1, k)]
    rows.append([1, k])
    return BinMatrix(k, rows)


def generate(cid: CatalogId) -> BinMatrix:
    """The exact matrix named by the id (row/column layout as in the figures)."""
    fam = cid.family
    if fam.endswith("T") and fam not in _FIXED:
        return transpose(generate(CatalogId(fam[:-1], cid.k, cid.a)))
    if fam in _FIXED:
        return BinMatrix.from_dense(_FIXED[fam])
    if fam in _STARRED:
        base = _STARRED[fam]
        return star(BinMatrix.from_dense(_FIXED[base]))
    if fam in _COMPLEMENTED:
        return complement(generate(CatalogId(_COMPLEMENTED[fam])))
    if fam == "M_I":
        return m_i(_need_k(cid))
    if fam == "M_I*":
        return star(m_i(_need_k(cid)))
    if fam == "co_M_I*":
        return complement(star(m_i(_need_k(cid))))
    if fam == "aM_I*":
        k = _need_k(cid)
        if cid.a is None or len(cid.a) != k or any(c not in "01" for c in cid.a):
            raise ValueError(f"aM_I*({k}) needs a binary mask of length {k}")
        in_a_k = cid.a in ("0" * 3, "1" * 3) if k == 3 else canonical_bracelet(cid.a) == cid.a
        if not in_a_k:
            raise ValueError(f"mask {cid.a} is not in A_{k}")
        return row_complement(cid.a, star(m_i(k)))
    raise ValueError(f"unknown catalog family {fam!r}")


def _need_k(cid: CatalogId) -> int:
    if cid.k is None or cid.k < 3:
        raise ValueError(f"{cid.family} needs k >= 3")
    return cid.k


def bracelets(k: int) -> list[str]:
    """All binary bracelets of length k, in ascending lexicographic order.

    A bracelet is the lexicographically smallest member of its equivalence
    class under shifts and reversals.  Brute force over 2^k strings.
    """
    if k < 1:
        raise ValueError("k must be positive")
    seen = set()
    out = []
    for v in range(1 << k):
        s = format(v, f"0{k}b")
        if canonical_bracelet(s) == s and s not in seen:
            seen.add(s)
            out.append(s)
    return out


def canonical_bracelet(s: str) -> str:
    """Least representative of s under shifts and reversals."""
    best = s
    for t in (s, s[::-1]):
        for i in range(len(s)):
            cand = t[i:] + t[:i]
            if cand < best:
                best = cand
    return best


def a_k(k: int) -> list[str]:
    """The mask set A_k: only the constant masks for k = 3, all bracelets after."""
    if k < 3:
        raise ValueError("A_k defined for k >= 3")
    if k == 3:
        return ["000", "111"]
    return bracelets(k)


def senary_complement(seq: str) -> str:
    """Interchange 0<->1, 2<->3, 4<->5 digitwise."""
    table = str.maketrans("012345", "103254")
    if any(c not in "012345" for c in seq):
        raise ValueError("sequence must be senary")
    return seq.translate(table)


def q_matrix(j: int, i: int, k: int) -> BinMatrix:
    """The block Q_j(i, k) on k+1 columns; i+1 is taken modulo k."""
    if k < 3 or not 1 <= i <= k or j not in range(6):
        raise ValueError(f"bad Q parameters j={j}, i={i}, k={k}")
    nxt = i % k + 1
    full = set(range(1, k + 2))
    if j == 0:
        rows = [{i, nxt}]
    elif j == 1:
        rows = [full - {i, nxt}]
    elif j == 2:
        rows = [full - {k + 1}, full - {i, nxt, k + 1}]
    elif j == 3:
        rows = [{k + 1}, {i, nxt, k + 1}]
    elif j == 4:
        rows = [full - {nxt}, {i}]
    else:
        rows = [{nxt}, full - {i}]
    return BinMatrix(k + 1, rows)


def r_of(seq: str) -> BinMatrix:
    """R(lambda): the Q_{lambda_i}(i, k) blocks stacked in order."""
    k = len(seq)
    if k < 3:
        raise ValueError("R(lambda) needs length >= 3")
    rows = []
    for i, ch in enumerate(seq, start=1):
        rows.extend(q_matrix(int(ch), i, k).rows)
    return BinMatrix(k + 1, rows)


def u_matrix(j: int, i: int) -> BinMatrix:
    """The block U_j(i) on the 6 columns of M_IV."""
    m_iv = BinMatrix.from_dense(_FIXED["M_IV"])
    full = set(range(1, 7))

    def r(p):
        return set(m_iv.rows[p - 1])

    def wrap3(p):
        return (p - 1) % 3 + 1

    if j in (0, 1) and 1 <= i <= 4:
        rows = [r(i)] if j == 0 else [full - r(i)]
    elif j in (2, 3) and 1 <= i <= 3:
        first = full - r(wrap3(i + 1))
        second = r(wrap3(i + 2))
        rows = [first, second] if j == 2 else [full - first, full - second]
    elif j in (4, 5) and i == 3:
        u4 = [{1, 2, 3, 4, 5}, {5}]
        rows = u4 if j == 4 else [full - s for s in u4]
    else:
        raise ValueError(f"bad U parameters j={j}, i={i}")
    return BinMatrix(6, rows)


def w_of(seq: str) -> BinMatrix:
    """W(lambda) for a length-4 senary lambda with the positional digit limits."""
    if len(seq) != 4 or any(c not in "012345" for c in seq):
        raise ValueError("W(lambda) needs a senary sequence of length 4")
    d = [int(c) for c in seq]
    if d[0] > 3 or d[1] > 3 or d[3] > 1:
        raise ValueError(f"illegal W digits in {seq}: positions 1,2 allow 0-3 and position 4 allows 0-1")
    rows = []
    for i, j in enumerate(d, start=1):
        rows.extend(u_matrix(j, i).rows)
    return BinMatrix(6, rows)


def x_of(i: int, alpha: str) -> BinMatrix:
    """X_i(alpha): M_IV plus two rows agreeing on the four wrapped columns.

    Row 5 has 1s at columns 2i-1, 2i and row 6 has 0s there; both carry
    alpha_1..alpha_4 at columns 2i+1..2i+4 (modulo 6).
    """
    if not 1 <= i <= 3 or len(alpha) != 4 or any(c not in "01" for c in alpha):
        raise ValueError(f"bad X parameters i={i}, alpha={alpha!r}")
    rows = [list(r) for r in _FIXED["M_IV"]]
    row5 = [0] * 6
    row6 = [0] * 6
    row5[2 * i - 2] = row5[2 * i - 1] = 1
    for t, bit in enumerate(alpha, start=1):
        col = (2 * i + t - 1) % 6  # 0-based position of column 2i+t
        row5[col] = row6[col] = int(bit)
    rows.append(row5)
    rows.append(row6)
    return BinMatrix.from_dense(rows)


def y_of(gamma: str) -> BinMatrix:
    """Y(gamma): M_IV plus the alternating rows carrying gamma at odd columns."""
    if len(gamma) != 3 or any(c not in "01" for c in gamma):
        raise ValueError(f"bad Y parameter gamma={gamma!r}")
    g = [int(c) for c in gamma]
    rows = [list(r) for r in _FIXED["M_IV"]]
    rows.append([g[0], 1, g[1], 1, g[2], 1])
    rows.append([g[0], 0, g[1], 0, g[2], 0])
    return BinMatrix.from_dense(rows)


_F_DCIRC_FIXED = [
    "Z1*", "Z2*", "Z3*", "Z4*", "Z5", "Z5T", "Z6", "Z7", "Z8",
    "coZ1*", "coZ2*", "coZ4*", "coZ6",
]
_F_CCO_FIXED = [
    "Z2*", "Z3*", "Z4*", "Z5", "coZ2*", "coZ4*",
    "Z2*T", "Z3*T", "Z4*T", "Z5T", "coZ2*T", "coZ4*T",
]
_F_DINT_FIXED = ["Z1", "Z2", "Z3", "Z2T", "Z3T"]

FAMILY_NAMES = (
    "ForbRow", "F_DCircR", "F_DCircR_inf", "F_CCO", "F_CCO_inf",
    "F_DIntR", "F_DIntR_inf",
)


def family(name: str, k_max: int = 8) -> list[tuple[CatalogId, BinMatrix]]:
    """All members of a named family with size parameter <= k_max.

    Fixed-size members are always included.  Parametrized members come after
    the fixed ones for F_DCircR_inf/F_CCO_inf/F_DIntR_inf and before them for
    ForbRow, matching the reference listings.
    """
    if k_max < 3:
        raise ValueError("k_max must be >= 3")
    ids: list[CatalogId]
    if name == "ForbRow":
        ids = [
            CatalogId("aM_I*", k, a)
            for k in range(3, k_max + 1)
            for a in a_k(k)
        ]
        ids += [CatalogId(f) for f in ("M_IV", "co_M_IV", "M_V*", "co_M_V*")]
    elif name == "F_DCircR":
        ids = [CatalogId(f) for f in _F_DCIRC_FIXED]
    elif name == "F_DCircR_inf":
        ids = [CatalogId(f) for f in _F_DCIRC_FIXED]
        for k in range(3, k_max + 1):
            ids += [CatalogId("M_I*", k), CatalogId("co_M_I*", k)]
    elif name == "F_CCO":
        ids = [CatalogId(f) for f in _F_CCO_FIXED]
    elif name == "F_CCO_inf":
        ids = [CatalogId(f) for f in _F_CCO_FIXED]
        for k in range(3, k_max + 1):
            ids += [
                CatalogId("M_I*", k), CatalogId("co_M_I*", k),
                CatalogId("M_I*T", k), CatalogId("co_M_I*T", k),
            ]
    elif name == "F_DIntR":
        ids = [CatalogId(f) for f in _F_DINT_FIXED]
    elif name == "F_DIntR_inf":
        ids = [CatalogId(f) for f in _F_DINT_FIXED] + [CatalogId("Z1T")]
        ids += [CatalogId("M_I", k) for k in range(3, k_max + 1)]
    else:
        raise ValueError(f"unknown family {name!r}")
    return [(cid, generate(cid)) for cid in ids]


_FAMILY_FIXED = {
    "ForbRow": ["M_IV", "co_M_IV", "M_V*", "co_M_V*"],
    "F_DCircR": _F_DCIRC_FIXED,
    "F_DCircR_inf": _F_DCIRC_FIXED,
    "F_CCO": _F_CCO_FIXED,
    "F_CCO_inf": _F_CCO_FIXED,
    "F_DIntR": _F_DINT_FIXED,
    "F_DIntR_inf": _F_DINT_FIXED + ["Z1T"],
}


def is_family_member(cid: CatalogId, name: str) -> bool:
    """Membership up to configuration (names may alias, e.g. Z1T vs co_M_I*(3)).

    Structural, so arbitrary-k members are handled without enumerating masks.
    """
    if name not in _FAMILY_FIXED:
        raise ValueError(f"unknown family {name!r}")
    mat = generate(cid)
    k, l = mat.shape
    for fam in _FAMILY_FIXED[name]:
        member = generate(CatalogId(fam))
        if member.shape == (k, l) and same_configuration(mat, member):
            return True
    hit = None
    if l == k + 1 and k >= 3:
        hit = _detect_masked_cycle(mat)
    elif k == l + 1 and l >= 3:
        t = _detect_masked_cycle(transpose(mat))
        if t is not None:
            tid = _canon_mask_id(t[0])
            hit = (CatalogId(tid.family + "T", tid.k, tid.a), Embedding(t[1].sigma, t[1].rho))
    if hit is not None:
        fam = _canon_mask_id(hit[0]).family
        if name == "ForbRow":
            return fam in ("aM_I*", "M_I*", "co_M_I*")
        if name in ("F_DCircR_inf",):
            return fam in ("M_I*", "co_M_I*")
        if name == "F_CCO_inf":
            return fam in ("M_I*", "co_M_I*", "M_I*T", "co_M_I*T")
    if name == "F_DIntR_inf" and k == l and k >= 3:
        return _is_cycle_matrix(mat)
    return False


def _is_cycle_matrix(f: BinMatrix) -> bool:
    """True iff f represents the same configuration as M_I(k)."""
    if f.n_rows != f.n_cols or f.n_rows < 3:
        return False
    if any(len(r) != 2 for r in f.rows):
        return False
    adj: dict[int, list[int]] = {}
    seen = set()
    for r in f.rows:
        e = frozenset(r)
        if e in seen:
            return False
        seen.add(e)
        for v in r:
            adj.setdefault(v, []).append(r[0] if v == r[1] else r[1])
    if len(adj) != f.n_rows or any(len(v) != 2 for v in adj.values()):
        return False
    start = min(adj)
    cycle = [start, min(adj[start])]
    while len(cycle) < f.n_rows:
        prev, cur = cycle[-2], cycle[-1]
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == start:
            break
        cycle.append(nxt)
    return len(cycle) == f.n_rows and cycle[0] in adj[cycle[-1]]


# classify candidates tried in order, filtered by shape.
_CLASSIFY_FIXED = [
    "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8",
    "Z1*", "Z2*", "Z3*", "Z4*", "coZ1*", "coZ2*", "coZ4*", "coZ6",
    "Z5T", "Z1T", "Z2T", "Z3T", "Z2*T", "Z3*T", "Z4*T", "coZ2*T", "coZ4*T",
    "M_IV", "co_M_IV", "M_V", "M_V*", "co_M_V*",
]


def classify_with_embedding(f: BinMatrix) -> Optional[tuple[CatalogId, Embedding]]:
    """Identify f up to configuration and witness the match.

    Returns (id, e) with submatrix(f, e) == generate(id), or None.  Fixed
    members are tried first in a canonical order; the mask family aM_I*(k)
    is then detected structurally, so arbitrary k is fine.
    """
    k, l = f.shape
    for fam in _CLASSIFY_FIXED:
        cid = CatalogId(fam)
        g = generate(cid)
        if g.shape != (k, l):
            continue
        e = find_configuration(f, g)
        if e is not None:
            return cid, e
    if l == k + 1 and k >= 3:
        hit = _detect_masked_cycle(f)
        if hit is not None:
            return _canon_mask_id(hit[0]), hit[1]
    if k == l + 1 and l >= 3:
        hit = _detect_masked_cycle(transpose(f))
        if hit is not None:
            cid, e = hit
            cid = _canon_mask_id(cid)
            return CatalogId(cid.family + "T", cid.k, cid.a), Embedding(e.sigma, e.rho)
    if k == l and k >= 3 and _is_cycle_matrix(f):
        cid = CatalogId("M_I", k)
        e = find_configuration(f, generate(cid))
        if e is not None:
            return cid, e
    return None


def _canon_mask_id(cid: CatalogId) -> CatalogId:
    """Rename constant-mask ids to their M_I*/co_M_I* form."""
    if cid.family == "aM_I*" and cid.a is not None:
        if cid.a == "0" * cid.k:
            return CatalogId("M_I*", cid.k)
        if cid.a == "1" * cid.k:
            return CatalogId("co_M_I*", cid.k)
    return cid


def classify(f: BinMatrix) -> Optional[CatalogId]:
    """A CatalogId whose matrix represents the same configuration as f, if any."""
    hit = classify_with_embedding(f)
    return hit[0] if hit else None


def classify_forbrow_with_embedding(f: BinMatrix) -> Optional[tuple[CatalogId, Embedding]]:
    """Like classify_with_embedding but restricted to ForbRow naming.

    Mask members keep their a(+)M_I*(k) form (constant masks included), so a
    ForbRow certificate never aliases to a Z-name.
    """
    k, l = f.shape
    if l == k + 1 and k >= 3:
        hit = _detect_masked_cycle(f)
        if hit is not None:
            return hit
    if (k, l) == (4, 6):
        for fam in ("M_IV", "co_M_IV", "M_V*", "co_M_V*"):
            cid = CatalogId(fam)
            e = find_configuration(f, generate(cid))
            if e is not None:
                return cid, e
    return None


def _detect_masked_cycle(f: BinMatrix) -> Optional[tuple[CatalogId, Embedding]]:
    """Detect a matrix representing a(+)M_I*(k) and produce an exact embedding.

    Tries each column as the adjoined one; the column then reads off the row
    mask, and un-complementing must leave a single k-cycle of 2-element rows.
    """
    k = f.n_rows
    for c in range(1, f.n_cols + 1):
        mask = "".join(str(f.entry(i, c)) for i in range(1, k + 1))
        b = row_complement(mask, f)
        if any(len(r) != 2 for r in b.rows):
            continue
        adj: dict[int, list[int]] = {}
        edge_row: dict[frozenset[int], int] = {}
        ok = True
        for i, r in enumerate(b.rows, start=1):
            e = frozenset(r)
            if e in edge_row or c in e:
                ok = False
                break
            edge_row[e] = i
            for v in r:
                adj.setdefault(v, []).append(r[0] if v == r[1] else r[1])
        if not ok or len(adj) != k or any(len(v) != 2 for v in adj.values()):
            continue
        # Walk the cycle; it must cover all k non-adjoined columns.
        start = min(adj)
        cycle = [start, min(adj[start])]
        while len(cycle) < k:
            prev, cur = cycle[-2], cycle[-1]
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            if nxt == start:
                break
            cycle.append(nxt)
        if len(cycle) != k or cycle[0] not in adj[cycle[-1]]:
            continue
        hit = _mask_cycle_id(f, c, mask, cycle, edge_row)
        if hit is not None:
            return hit
    return None


def _mask_cycle_id(f, c, mask, cycle, edge_row):
    k = len(cycle)

    def walk_mask(shift, direction):
        cols = [cycle[(shift + direction * t) % k] for t in range(k)]
        bits = "".join(
            mask[edge_row[frozenset((cols[t], cols[(t + 1) % k]))] - 1]
            for t in range(k)
        )
        return cols, bits

    best = None
    for direction in (1, -1):
        for shift in range(k):
            cols, bits = walk_mask(shift, direction)
            if best is None or bits < best[1]:
                best = (cols, bits)
    cols, bits = best
    if k == 3 and bits not in ("000", "111"):
        # 001 and 011 are bracelets but not in A_3; fall back to a direct
        # search against the two admissible masks.
        for a in ("000", "111"):
            cid = CatalogId("aM_I*", 3, a)
            e = find_configuration(f, generate(cid))
            if e is not None:
                return cid, e
        return None
    cid = CatalogId("aM_I*", k, bits)
    sigma = tuple(cols) + (c,)
    rho = tuple(
        edge_row[frozenset((cols[t], cols[(t + 1) % k]))] for t in range(k)
    )
    emb = Embedding(rho, sigma)
    if submatrix(f, emb) != generate(cid):
        return None
    return cid, emb
