"""D-circular recognition: the difference operators, the q-sorted prefix
recognizer, cut-and-antishift iteration, and the full certifying pipeline.

A matrix is D-circular when some column order makes every row and every
pairwise row difference a circular interval.  Recognition adds bounded
difference rows (the E construction) and defers to circular-ones; negative
answers are converted into embedded forbidden-family certificates.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Optional, Sequence

from .catalog import CatalogId, classify_forbrow_with_embedding, family, generate
from .certificates import NegCertificate, lift_certificate
from .consecutive import circular_ones, circular_ones_certificate
from .matrix import (
    BinMatrix,
    Embedding,
    compose_embeddings,
    find_configuration,
    submatrix,
    validate_column_order,
)


@dataclass(frozen=True)
class ExtremalInfo:
    """Minimal/maximal rows and the nested extremal pairs of a clean matrix.

    triple is set when some maximal row properly contains three minimal rows;
    containment_pairs is then only partial (the recognizer aborts early).
    """

    minimal: frozenset[int]
    maximal: frozenset[int]
    containment_pairs: tuple[tuple[int, int], ...]
    triple: Optional[tuple[int, int, int, int]] = None  # (g, f1, f2, f3)


@dataclass(frozen=True)
class EMatrix:
    """The incremental difference matrix with per-row origin annotations."""

    matrix: BinMatrix
    origins: tuple[int, ...]


@dataclass(frozen=True)
class PrefixDCircResult:
    order: Optional[tuple[int, ...]] = None
    cert: Optional[NegCertificate] = None
    fail_index: Optional[int] = None


@dataclass(frozen=True)
class DCircResult:
    order: Optional[tuple[int, ...]] = None
    cert: Optional[NegCertificate] = None

    @property
    def ok(self) -> bool:
        return self.order is not None


def d_operator(m: BinMatrix) -> BinMatrix:
    """D(M): append s - r for every ordered pair of nested nontrivial rows."""
    sets = [set(r) for r in m.rows]
    trivial = [m.is_trivial_row(i) for i in range(1, m.n_rows + 1)]
    extra = []
    for s in range(m.n_rows):
        if trivial[s]:
            continue
        for r in range(m.n_rows):
            if r == s or trivial[r]:
                continue
            if sets[r] < sets[s]:
                extra.append(sorted(sets[s] - sets[r]))
    return BinMatrix(m.n_cols, list(m.rows) + extra)


def _extremal_flags(sets: list[set[int]]) -> tuple[list[bool], list[bool]]:
    """(minimal, maximal) flags by direct pairwise comparison (small inputs)."""
    n = len(sets)
    minimal = [True] * n
    maximal = [True] * n
    for i in range(n):
        for j in range(n):
            if i != j and sets[j] < sets[i]:
                minimal[i] = False
            if i != j and sets[i] < sets[j]:
                maximal[i] = False
    return minimal, maximal


def delta_operator(m: BinMatrix) -> BinMatrix:
    """Delta(M): like D(M) but only over (minimal, maximal) nested pairs."""
    nontrivial = [
        i for i in range(m.n_rows) if not m.is_trivial_row(i + 1)
    ]
    sets = [set(m.rows[i]) for i in nontrivial]
    minimal, maximal = _extremal_flags(sets)
    extra = []
    for gi, g in enumerate(sets):
        if not maximal[gi]:
            continue
        for fi, f in enumerate(sets):
            if minimal[fi] and f < g:
                extra.append(sorted(g - f))
    return BinMatrix(m.n_cols, list(m.rows) + extra)


def _arcs(m: BinMatrix, order: Sequence[int]):
    """(start_rank, length) per row; raises if a row is not a circular arc."""
    rank = {c: p for p, c in enumerate(order)}
    n = m.n_cols
    arcs = []
    for i, row in enumerate(m.rows, start=1):
        if not row or len(row) == n:
            raise ValueError(f"row {i} is trivial")
        ranks = sorted(rank[c] for c in row)
        gap = None
        for j in range(len(ranks)):
            if (ranks[(j + 1) % len(ranks)] - ranks[j]) % n > 1:
                if gap is not None:
                    raise ValueError(f"row {i} is not a circular interval of the order")
                gap = j
        if gap is None and len(ranks) != 1:
            raise ValueError(f"row {i} is not a circular interval of the order")
        start = ranks[(gap + 1) % len(ranks)] if gap is not None else ranks[0]
        arcs.append((start, len(ranks)))
    return arcs


def extremal_rows(m: BinMatrix, order: Sequence[int]) -> ExtremalInfo:
    """Minimal/maximal rows and nested extremal pairs, by endpoint sweeps.

    Requires: every row a circular interval of the order, no trivial rows,
    no duplicate rows.  Pair listing aborts once a maximal row is found to
    properly contain three minimal rows (reported in .triple).
    """
    validate_column_order(order, m.n_cols)
    if len({tuple(r) for r in m.rows}) != m.n_rows:
        raise ValueError("duplicate rows")
    k = m.n_rows
    if k == 0:
        return ExtremalInfo(frozenset(), frozenset(), ())
    arcs = _arcs(m, order)
    n = m.n_cols

    # Row f is properly contained in some row iff a distinct row covers
    # [start_f, end_f] in unwrapped coordinates; symmetric for containing.
    ends = [s + ln for s, ln in arcs]
    copies = sorted(
        [(s - shift, e - shift, i) for i, ((s, _), e) in enumerate(zip(arcs, ends))
         for shift in (0, n)],
        key=lambda t: t[0],
    )
    queries = sorted(range(k), key=lambda i: arcs[i][0])
    maximal = [True] * k
    best1 = best2 = (-(10 * n), -1)  # (end, row)
    ptr = 0
    for i in queries:
        s_f, e_f = arcs[i][0], ends[i]
        while ptr < len(copies) and copies[ptr][0] <= s_f:
            _, e, rid = copies[ptr]
            ptr += 1
            if e > best1[0]:
                if rid != best1[1]:
                    best2 = best1
                best1 = (e, rid)
            elif rid != best1[1] and e > best2[0]:
                best2 = (e, rid)
        cand = best1 if best1[1] != i else best2
        if cand[0] >= e_f:
            maximal[i] = False

    copies_up = sorted(
        [(s + shift, e + shift, i) for i, ((s, _), e) in enumerate(zip(arcs, ends))
         for shift in (0, n)],
        key=lambda t: -t[0],
    )
    queries_desc = sorted(range(k), key=lambda i: -arcs[i][0])
    minimal = [True] * k
    best1 = best2 = (10 * n, -1)  # (end, row), minimizing
    ptr = 0
    for i in queries_desc:
        s_f, e_f = arcs[i][0], ends[i]
        while ptr < len(copies_up) and copies_up[ptr][0] >= s_f:
            _, e, rid = copies_up[ptr]
            ptr += 1
            if e < best1[0]:
                if rid != best1[1]:
                    best2 = best1
                best1 = (e, rid)
            elif rid != best1[1] and e < best2[0]:
                best2 = (e, rid)
        cand = best1 if best1[1] != i else best2
        if cand[0] <= e_f:
            minimal[i] = False

    min_rows = [i for i in range(k) if minimal[i]]
    min_copies = sorted(
        [(arcs[i][0] + shift, ends[i] + shift, i) for i in min_rows for shift in (0, n)]
    )
    starts = [t[0] for t in min_copies]
    pairs = []
    triple = None
    for g in range(k):
        if not maximal[g]:
            continue
        s_g, e_g = arcs[g][0], ends[g]
        lo = bisect_left(starts, s_g)
        hi = bisect_right(starts, e_g - 1)
        inside = sorted(
            rid for s, e, rid in min_copies[lo:hi] if e <= e_g and rid != g
        )
        if len(inside) >= 3:
            triple = (g + 1, inside[0] + 1, inside[1] + 1, inside[2] + 1)
            break
        pairs.extend((f + 1, g + 1) for f in inside)
    pairs.sort(key=lambda t: (t[1], t[0]))
    return ExtremalInfo(
        frozenset(i + 1 for i in min_rows),
        frozenset(i + 1 for i in range(k) if maximal[i]),
        tuple(pairs),
        triple,
    )


def triple_containment_cert(
    m: BinMatrix,
    order: Sequence[int],
    g: int,
    f1: int,
    f2: int,
    f3: int,
) -> NegCertificate:
    """Certificate from one maximal row properly containing three minimal rows.

    Following the constructive proof: rotate so the container starts the
    order; disjoint inner rows give Z1*, overlapping ones give coZ4*.
    """
    arcs = _arcs(m, order)
    n = m.n_cols
    sets = [set(r) for r in m.rows]
    for f in (f1, f2, f3):
        if not sets[f - 1] < sets[g - 1]:
            raise ValueError(f"row {f} is not properly contained in row {g}")
    for x, y in ((f1, f2), (f1, f3), (f2, f3)):
        if sets[x - 1] <= sets[y - 1] or sets[y - 1] <= sets[x - 1]:
            raise ValueError("inner rows must be pairwise incomparable")
    s_g, len_g = arcs[g - 1]
    if len_g >= n:
        raise ValueError("container row is trivial")

    def rot(r):
        return (r - s_g) % n

    def col(p):
        return order[(p + s_g) % n]

    fs = []
    for f in (f1, f2, f3):
        s, ln = arcs[f - 1]
        a = rot(s)
        fs.append((a, a + ln - 1, f))
    fs.sort()
    (a1, b1, r1), (a2, b2, r2), (a3, b3, r3) = fs
    if b1 < a2 and b2 < a3:
        cid = CatalogId("Z1*")
        emb = Embedding((g, r1, r2, r3), (col(a1), col(a2), col(a3), col(n - 1)))
    elif a2 <= b1:
        cid = CatalogId("coZ4*")
        emb = Embedding((r1, r2, g), (col(b2), col(b3), col(n - 1), col(a1), col(b1)))
    else:
        cid = CatalogId("coZ4*")
        emb = Embedding((r3, r2, g), (col(a2), col(a1), col(n - 1), col(b3), col(a3)))
    cert = NegCertificate(cid, emb)
    if submatrix(m, emb) != generate(cid):
        raise RuntimeError("triple containment construction produced a bad embedding")
    return cert


def e_matrix(m: BinMatrix, q: int, ext: ExtremalInfo) -> EMatrix:
    """E_k(M): incremental difference rows, each annotated with its step.

    Requires a deduplicated matrix without trivial rows whose maximal rows
    each properly contain at most two minimal rows.
    """
    if ext.triple is not None:
        raise ValueError("a maximal row properly contains three minimal rows")
    k = m.n_rows
    sets = [set(r) for r in m.rows]
    eligible: dict[int, list[tuple[int, int]]] = {i: [] for i in range(1, k + 1)}

    def add_pair(small: int, big: int) -> None:
        eligible[max(small, big)].append((small, big))

    seen = set()
    for f, g in ext.containment_pairs:
        seen.add((f, g))
        add_pair(f, g)
    for j in range(1, min(q, k) + 1):
        for i in range(1, k + 1):
            if i == j:
                continue
            small, big = None, None
            if sets[j - 1] < sets[i - 1]:
                small, big = j, i
            elif sets[i - 1] < sets[j - 1]:
                small, big = i, j
            else:
                continue
            if (big <= q or big in ext.maximal) and (small <= q or small in ext.minimal):
                if (small, big) not in seen:
                    seen.add((small, big))
                    add_pair(small, big)

    rows = []
    origins = []
    for i in range(1, k + 1):
        rows.append(m.rows[i - 1])
        origins.append(i)
        step = sorted(
            eligible[i],
            key=lambda p: (0, p[0]) if p[1] == i else (1, p[1]),
        )
        for small, big in step:
            rows.append(sorted(sets[big - 1] - sets[small - 1]))
            origins.append(i)
    return EMatrix(BinMatrix(m.n_cols, rows), tuple(origins))


def _clean(m: BinMatrix) -> tuple[BinMatrix, list[int]]:
    """Drop trivial rows and non-topmost duplicates; map back via kept list."""
    kept: list[int] = []
    seen = set()
    for i in range(1, m.n_rows + 1):
        if m.is_trivial_row(i):
            continue
        key = m.rows[i - 1]
        if key in seen:
            continue
        seen.add(key)
        kept.append(i)
    return BinMatrix(m.n_cols, [m.rows[i - 1] for i in kept]), kept


def _extremal_positions(m: BinMatrix, order=None) -> list[bool]:
    """Extremality per original row (duplicates share their class's flags).

    A known circular-ones order speeds up large inputs; extremality itself
    is order-independent.
    """
    clean, kept = _clean(m)
    if clean.n_rows <= 60 and order is None:
        minimal, maximal = _extremal_flags([set(r) for r in clean.rows])
        flags_clean = {
            kept[i]: minimal[i] or maximal[i] for i in range(clean.n_rows)
        }
    else:
        if order is None:
            res = circular_ones(clean)
            if not res.ok:
                raise ValueError("matrix lacks the circular-ones property")
            order = res.order
        ext = extremal_rows(clean, order)
        flags_clean = {
            kept[i]: (i + 1 in ext.minimal) or (i + 1 in ext.maximal)
            for i in range(clean.n_rows)
        }
    by_set = {}
    for i in kept:
        by_set[m.rows[i - 1]] = flags_clean[i]
    return [
        (not m.is_trivial_row(i)) and by_set[m.rows[i - 1]]
        for i in range(1, m.n_rows + 1)
    ]


def _is_q_sorted(m: BinMatrix, q: int, order=None) -> bool:
    flags = _extremal_positions(m, order)
    last_extremal = max((i for i, f in enumerate(flags, start=1) if f), default=0)
    return all(
        f or i <= q or i > last_extremal for i, f in enumerate(flags, start=1)
    )


def recognize_prefix_d_circular(m: BinMatrix, q: int) -> PrefixDCircResult:
    """One pass of the q-sorted prefix recognizer.

    Input must be q-sorted with the circular-ones property.  Output is a
    D-circular order, an embedded forbidden matrix, or the least i whose
    prefix fails, always in the input matrix's own row/column indices.
    """
    res = circular_ones(m)
    if not res.ok:
        raise ValueError("matrix lacks the circular-ones property")
    order = res.order
    if not _is_q_sorted(m, q, order):
        raise ValueError(f"matrix is not {q}-sorted")
    clean, kept = _clean(m)
    if clean.n_rows == 0:
        return PrefixDCircResult(order=order)
    ext = extremal_rows(clean, order)
    if ext.triple is not None:
        g, f1, f2, f3 = ext.triple
        cert = triple_containment_cert(clean, order, g, f1, f2, f3)
        row_map = {i + 1: kept[i] for i in range(clean.n_rows)}
        return PrefixDCircResult(cert=lift_certificate(cert, row_map=row_map))
    em = e_matrix(clean, q, ext)
    res2 = circular_ones(em.matrix)
    if res2.ok:
        return PrefixDCircResult(order=res2.order)
    step = em.origins[res2.fail_index - 1]
    return PrefixDCircResult(fail_index=kept[step - 1])


def cut_and_antishift(m: BinMatrix, i: int) -> BinMatrix:
    """Move row i to the top and discard all rows after it."""
    if not 1 <= i <= m.n_rows:
        raise ValueError(f"row {i} out of range")
    return BinMatrix(m.n_cols, (m.rows[i - 1],) + m.rows[: i - 1])


def _zero_sort(m: BinMatrix, order=None) -> tuple[BinMatrix, list[int]]:
    flags = _extremal_positions(m, order)
    perm = [i for i in range(1, m.n_rows + 1) if flags[i - 1]]
    perm += [i for i in range(1, m.n_rows + 1) if not flags[i - 1]]
    return BinMatrix(m.n_cols, [m.rows[i - 1] for i in perm]), perm


_ITER_Q = 4


def d_circular(m: BinMatrix) -> DCircResult:
    """A D-circular order of m or an embedded forbidden-family certificate."""
    if m.n_cols == 0 or m.n_rows == 0:
        return DCircResult(order=tuple(range(1, m.n_cols + 1)))
    res = circular_ones(m)
    if not res.ok:
        forb = circular_ones_certificate(m)
        return DCircResult(cert=forbrow_to_dcirc_cert(m, forb))
    m0, perm = _zero_sort(m, res.order)
    row_back = {pos: orig for pos, orig in enumerate(perm, start=1)}
    first = recognize_prefix_d_circular(m0, 0)
    if first.order is not None:
        return DCircResult(order=first.order)
    if first.cert is not None:
        return DCircResult(cert=lift_certificate(first.cert, row_map=row_back))
    cur = cut_and_antishift(m0, first.fail_index)
    src = [first.fail_index] + list(range(1, first.fail_index))
    for _ in range(_ITER_Q):
        step = recognize_prefix_d_circular(cur, _ITER_Q)
        if step.order is not None:
            raise RuntimeError("iterated matrix unexpectedly became D-circular")
        if step.cert is not None:
            row_map = {i + 1: row_back[src[i]] for i in range(cur.n_rows)}
            return DCircResult(cert=lift_certificate(step.cert, row_map=row_map))
        i = step.fail_index
        cur = cut_and_antishift(cur, i)
        src = [src[i - 1]] + src[: i - 1]
    if cur.n_rows > _ITER_Q:
        raise RuntimeError("cut-and-antishift left more rows than its bound allows")
    cert = _small_matrix_cert(cur)
    row_map = {i + 1: row_back[src[i]] for i in range(cur.n_rows)}
    return DCircResult(cert=lift_certificate(cert, row_map=row_map))


def _small_matrix_cert(m: BinMatrix) -> NegCertificate:
    """Search a <= 4-row circular-ones matrix for its F_DCircR member."""
    pattern_to_col = {}
    for j in range(1, m.n_cols + 1):
        pat = tuple(m.entry(i, j) for i in range(1, m.n_rows + 1))
        pattern_to_col.setdefault(pat, j)
    cols = sorted(pattern_to_col.values())
    remap = {c: t + 1 for t, c in enumerate(cols)}
    dedup = BinMatrix(
        len(cols), [[remap[c] for c in row if c in remap] for row in m.rows]
    )
    for cid, mat in family("F_DCircR_inf", 3):
        if mat.n_rows > dedup.n_rows or mat.n_cols > dedup.n_cols:
            continue
        e = find_configuration(dedup, mat)
        if e is not None:
            emb = Embedding(e.rho, tuple(cols[j - 1] for j in e.sigma))
            return NegCertificate(cid, emb)
    raise RuntimeError("no forbidden member found in the reduced matrix")


_FORBROW_FIXED_MAP = {
    "M_IV": ("Z6", (4, 1, 2, 3), (2, 4, 6, 1)),
    "co_M_IV": ("coZ6", (4, 1, 2, 3), (2, 4, 6, 1)),
    "M_V*": ("Z2*", (1, 2, 4, 3), (1, 4, 5, 6)),
    "co_M_V*": ("coZ2*", (1, 2, 4, 3), (1, 4, 5, 6)),
}


def forbrow_to_dcirc_cert(host: BinMatrix, cert: NegCertificate) -> NegCertificate:
    """Convert a ForbRow certificate into an F_DCircR_inf one (same host)."""
    fam = cert.id.family
    if fam in _FORBROW_FIXED_MAP:
        target, rho, sigma = _FORBROW_FIXED_MAP[fam]
        inner = Embedding(rho, sigma)
        out = NegCertificate(
            CatalogId(target), compose_embeddings(cert.emb, inner)
        )
        if submatrix(host, out.emb) != generate(out.id):
            raise RuntimeError("fixed ForbRow translation failed")
        return out
    if fam != "aM_I*":
        raise ValueError(f"not a ForbRow certificate: {cert.id}")
    a = cert.id.a
    k = cert.id.k
    if a == "0" * k:
        return NegCertificate(CatalogId("M_I*", k), cert.emb)
    if a == "1" * k:
        return NegCertificate(CatalogId("co_M_I*", k), cert.emb)

    def w(x):
        return (x - 1) % k + 1

    window = next(
        (i for i in range(1, k + 1) if a[i - 1] != a[(i + 2) % k]), None
    )
    if window is not None:
        i = window
        inner = Embedding(
            (w(i), w(i + 1), w(i + 2), w(i + 3)),
            (w(i + 1), w(i + 2), w(i + 3), k + 1),
        )
    else:
        # a has period 3, so 01001 or 10110 occurs circularly.
        doubled = a + a
        i = next(
            i
            for i in range(1, k + 1)
            if doubled[i - 1 : i + 4] in ("01001", "10110")
        )
        inner = Embedding(
            (w(i), w(i + 1), w(i + 2), w(i + 4)),
            (w(i + 1), w(i + 2), w(i + 4), k + 1),
        )
    mid = compose_embeddings(cert.emb, inner)
    g = submatrix(host, mid)
    for cid, mat in family("F_DCircR", 3):
        if mat.n_rows > g.n_rows or mat.n_cols > g.n_cols:
            continue
        e = find_configuration(g, mat)
        if e is not None:
            return NegCertificate(cid, compose_embeddings(mid, e))
    raise RuntimeError("window of a masked cycle contained no F_DCircR member")
