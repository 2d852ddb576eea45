"""D-interval / linearly compatible ones and circularly compatible ones
recognition, built on the D-circular recognizer.

The linear property runs D-circular on M* (one appended zero column) and cuts
the circle there; the circular biorder property pads trivial rows away via
M^[u], takes a D-circular order, and sorts rows into a monotone circular
biorder.  Negative answers are translated through the same reductions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from .catalog import CatalogId, classify_with_embedding, family, generate
from .certificates import NegCertificate, refine_certificate
from .dcircular import DCircResult, d_circular
from .matrix import (
    BinMatrix,
    Biorder,
    Embedding,
    complement,
    compose_embeddings,
    find_configuration,
    pad_trivial,
    star,
    submatrix,
    transpose,
)
from .oracle import (
    verify_cco_biorder,
    verify_lco_biorder,
    verify_monotone_circular_biorder,
)

logger = logging.getLogger(__name__)

# Rotations needed to meet the alignment condition; expected to stay 0.
alignment_repairs = 0


@dataclass(frozen=True)
class LCOResult:
    biorder: Optional[Biorder] = None
    cert: Optional[NegCertificate] = None

    @property
    def ok(self) -> bool:
        return self.biorder is not None


@dataclass(frozen=True)
class CCOResult:
    biorder: Optional[Biorder] = None
    cert: Optional[NegCertificate] = None

    @property
    def ok(self) -> bool:
        return self.biorder is not None


@dataclass(frozen=True)
class DoublyDCircResult:
    ok: bool
    cert: Optional[NegCertificate] = None


def d_interval(m: BinMatrix) -> DCircResult:
    """A D-interval order of m or a certificate from F_DIntR_inf."""
    if m.n_cols == 0 or m.n_rows == 0:
        return DCircResult(order=tuple(range(1, m.n_cols + 1)))
    starred = star(m)
    res = d_circular(starred)
    added = m.n_cols + 1
    if res.ok:
        t = res.order.index(added)
        linear = res.order[t + 1 :] + res.order[:t]
        return DCircResult(order=linear)
    cert = res.cert
    if added not in cert.emb.sigma:
        return DCircResult(cert=_dint_cert_within(m, cert))
    return DCircResult(cert=_dint_cert_through_added(m, cert))


def _dint_cert_within(m: BinMatrix, cert: NegCertificate) -> NegCertificate:
    """The F_DCircR_inf certificate avoids the zero column, so it sits in m;
    extract a D-interval forbidden member inside it."""
    fam = cert.id.family
    if fam == "M_I*":
        k = cert.id.k
        inner = Embedding(tuple(range(1, k + 1)), tuple(range(1, k + 1)))
        return NegCertificate(
            CatalogId("M_I", k), compose_embeddings(cert.emb, inner)
        )
    if fam == "co_M_I*":
        k = cert.id.k
        if k == 3:
            return refine_certificate(m, cert, CatalogId("Z1T"))
        inner = Embedding((1, 2, 3, k), (k + 1, 1, 2))
        out = NegCertificate(CatalogId("Z3"), compose_embeddings(cert.emb, inner))
        if submatrix(m, out.emb) != generate(out.id):
            raise RuntimeError("co_M_I* to Z3 translation failed")
        return out
    sub = generate(cert.id)
    for cid, mat in family("F_DIntR_inf", 4):
        if mat.n_rows > sub.n_rows or mat.n_cols > sub.n_cols:
            continue
        e = find_configuration(sub, mat)
        if e is not None:
            return NegCertificate(cid, compose_embeddings(cert.emb, e))
    raise RuntimeError(f"{cert.id} contains no F_DIntR_inf member")


_STAR_DROP = {
    # family -> (zero column, D-interval target)
    "Z1*": (4, "Z1"),
    "Z2*": (4, "Z2"),
    "Z3*": (4, "Z3"),
    "Z4*": (5, "Z2T"),
    "coZ4*": (3, "Z3T"),
}


def _dint_cert_through_added(m: BinMatrix, cert: NegCertificate) -> NegCertificate:
    """The certificate uses M*'s zero column; drop the matching empty column
    of the forbidden matrix and rename per the case table."""
    added = m.n_cols + 1
    p = cert.emb.sigma.index(added) + 1
    fam = cert.id.family
    if fam == "M_I*":
        j, target = cert.id.k + 1, CatalogId("M_I", cert.id.k)
    elif fam in _STAR_DROP:
        j, name = _STAR_DROP[fam][0], _STAR_DROP[fam][1]
        target = CatalogId(name)
    else:
        raise RuntimeError(f"{cert.id} cannot use the appended zero column")
    if p != j:
        raise RuntimeError(f"{cert.id} zero column mismatch: {p} != {j}")
    sigma = tuple(c for c in cert.emb.sigma if c != added)
    outer = Embedding(cert.emb.rho, sigma)
    dropped = submatrix(m, outer)
    inner = find_configuration(dropped, generate(target))
    if inner is None:
        raise RuntimeError(f"{target} not found after dropping the zero column")
    return NegCertificate(target, compose_embeddings(outer, inner))


def lco(m: BinMatrix) -> LCOResult:
    """A linearly compatible ones biorder, or the D-interval certificate."""
    res = d_interval(m)
    if not res.ok:
        return LCOResult(cert=res.cert)
    order = res.order
    rank = {c: p for p, c in enumerate(order)}
    keyed = []
    empties = []
    for i, row in enumerate(m.rows, start=1):
        if not row:
            empties.append(i)
            continue
        ranks = sorted(rank[c] for c in row)
        keyed.append((ranks[0], ranks[-1], i))
    row_order = tuple(i for _, _, i in sorted(keyed)) + tuple(empties)
    b = Biorder(row_order, order)
    if not verify_lco_biorder(m, b):
        raise RuntimeError("constructed biorder failed the LCO checker")
    return LCOResult(biorder=b)


def _left_endpoint_row_sort(m: BinMatrix, order) -> tuple[int, ...]:
    """Rows sorted by (left endpoint rank, containment) under the order."""
    l = m.n_cols
    rank = {c: p for p, c in enumerate(order)}
    keyed = []
    for i, row in enumerate(m.rows, start=1):
        ranks = sorted(rank[c] for c in row)
        gap = [
            j for j in range(len(ranks))
            if (ranks[(j + 1) % len(ranks)] - ranks[j]) % l > 1
        ]
        start = ranks[(gap[0] + 1) % len(ranks)] if gap else ranks[0]
        keyed.append((start, len(ranks), i))
    return tuple(i for _, _, i in sorted(keyed))


def monotone_circular_biorder(m: BinMatrix, order) -> Biorder:
    """Sort rows by (left endpoint, containment) under a D-circular order.

    The construction is expected to satisfy the alignment condition as-is;
    if it ever does not, the column order is rotated until it does and the
    repair is counted (see alignment_repairs).
    """
    global alignment_repairs
    k, l = m.shape
    if any(m.is_trivial_row(i) for i in range(1, k + 1)):
        raise ValueError("matrix must have no trivial rows")
    for shift in range(max(l, 1)):
        rotated = tuple(order[shift:]) + tuple(order[:shift])
        b = Biorder(_left_endpoint_row_sort(m, rotated), rotated)
        if verify_monotone_circular_biorder(m, b):
            if shift:
                alignment_repairs += 1
                logger.info("alignment repair: rotated column order by %d", shift)
            return b
    raise RuntimeError("no rotation yields a monotone circular biorder")


def pad_for_cco(m: BinMatrix) -> tuple[BinMatrix, Optional[int]]:
    """Pad trivial rows away; returns (matrix, u) with u=None when unpadded.

    One padding suffices for both kinds of trivial row: the appended column
    holds u on every row that is not all-u, so all-(1-u) rows become
    nontrivial too.
    """
    has_zero = any(len(r) == 0 for r in m.rows)
    has_one = any(len(r) == m.n_cols for r in m.rows)
    if not has_zero and not has_one:
        return m, None
    u = 0 if has_zero else 1
    return pad_trivial(m, u), u


def cco(m: BinMatrix) -> CCOResult:
    """A circularly compatible ones biorder of m or an F_CCO_inf certificate."""
    k, l = m.shape
    if k == 0 or l == 0:
        return CCOResult(
            biorder=Biorder(tuple(range(1, k + 1)), tuple(range(1, l + 1)))
        )
    padded, u = pad_for_cco(m)
    res = d_circular(padded)
    if res.ok:
        return CCOResult(biorder=_biorder_from_order(m, padded, u, res.order))
    cert = res.cert
    if u is not None and (l + 1) in cert.emb.sigma:
        cert = _translate_padded_cert(m, u, cert)
    cert = _to_fcco(m, cert)
    return CCOResult(cert=cert)


def _biorder_from_order(m: BinMatrix, padded: BinMatrix, u, order) -> Biorder:
    """A CCO biorder of m from a D-circular order of the padded matrix.

    The left-endpoint row sort pins the row side; the cut point of the
    column order is not pinned by the construction lemma, so rotations are
    tried until the full checker accepts (counted as alignment repairs).
    """
    global alignment_repairs
    l = m.n_cols
    lp = padded.n_cols
    for shift in range(lp):
        rotated = tuple(order[shift:]) + tuple(order[:shift])
        row_order = _left_endpoint_row_sort(padded, rotated)
        restricted = Biorder(row_order, tuple(c for c in rotated if c <= l))
        if verify_cco_biorder(m, restricted):
            if shift:
                alignment_repairs += 1
                logger.info("cut repair: rotated column order by %d", shift)
            return restricted
    raise RuntimeError("no rotation of the D-circular order yields a CCO biorder")


_PAD_DROP = {
    # family -> (zero column, F_CCO_inf target after re-adding a zero row)
    "Z1*": (4, CatalogId("co_M_I*T", 3)),
    "Z2*": (4, CatalogId("Z4*T")),
    "Z3*": (4, CatalogId("coZ4*T")),
    "Z4*": (5, CatalogId("Z2*T")),
    "coZ4*": (3, CatalogId("Z3*T")),
}


def _translate_padded_cert(m: BinMatrix, u: int, cert: NegCertificate) -> NegCertificate:
    """Map a certificate of M^[u] that uses the appended column into M."""
    if u == 1:
        mc = complement(m)
        cert_c = _complement_cert(complement(pad_trivial(m, 1)), cert)
        inner = _translate_padded_cert(mc, 0, cert_c)
        return _complement_cert(m, inner)
    added = m.n_cols + 1
    p = cert.emb.sigma.index(added) + 1
    fam = cert.id.family
    if fam == "M_I*":
        k = cert.id.k
        j, target = k + 1, CatalogId("M_I*T", k)
    elif fam in _PAD_DROP:
        j, target = _PAD_DROP[fam]
    else:
        raise RuntimeError(f"{cert.id} cannot use the padded column")
    if p != j:
        raise RuntimeError(f"{cert.id} padded column mismatch: {p} != {j}")
    zero_row = next(i for i in range(1, m.n_rows + 1) if not m.rows[i - 1])
    sigma = tuple(c for c in cert.emb.sigma if c != added)
    rho = cert.emb.rho + (zero_row,)
    outer = Embedding(rho, sigma)
    core = submatrix(m, outer)
    if fam == "M_I*":
        k = cert.id.k
        inner = Embedding((k,) + tuple(range(1, k)) + (k + 1,), tuple(range(1, k + 1)))
    else:
        inner = find_configuration(core, generate(target))
        if inner is None:
            raise RuntimeError(f"{target} not found after dropping the padded column")
    out = NegCertificate(target, compose_embeddings(outer, inner))
    if submatrix(m, out.emb) != generate(out.id):
        raise RuntimeError("padded-column translation produced a bad embedding")
    return out


def _complement_cert(host: BinMatrix, cert: NegCertificate) -> NegCertificate:
    """Re-express a certificate of complement(host) as one of host."""
    sub = complement(generate(cert.id))
    hit = classify_with_embedding(sub)
    if hit is None:
        raise RuntimeError(f"complement of {cert.id} is not in the catalog")
    cid, e = hit
    out = NegCertificate(cid, compose_embeddings(cert.emb, e))
    if submatrix(host, out.emb) != generate(cid):
        raise RuntimeError("complement translation produced a bad embedding")
    return out


_TO_FCCO = {
    "Z1*": CatalogId("co_M_I*T", 3),
    "Z6": CatalogId("co_M_I*T", 3),
    "Z7": CatalogId("co_M_I*T", 3),
    "Z8": CatalogId("Z2*T"),
    "coZ1*": CatalogId("M_I*T", 3),
    "coZ6": CatalogId("M_I*T", 3),
}


def _to_fcco(m: BinMatrix, cert: NegCertificate) -> NegCertificate:
    """Replace F_DCircR_inf members outside F_CCO_inf by members inside it."""
    target = _TO_FCCO.get(cert.id.family)
    if target is None:
        return cert
    return refine_certificate(m, cert, target)


def doubly_d_circular(m: BinMatrix) -> DoublyDCircResult:
    """D-circularity of both m and its transpose, certificates in m's frame."""
    res = d_circular(m)
    if not res.ok:
        return DoublyDCircResult(False, res.cert)
    res_t = d_circular(transpose(m))
    if res_t.ok:
        return DoublyDCircResult(True)
    cert = res_t.cert
    fam = cert.id.family
    tid = CatalogId(fam[:-1], cert.id.k, cert.id.a) if fam.endswith("T") else CatalogId(
        fam + "T", cert.id.k, cert.id.a
    )
    out = NegCertificate(tid, Embedding(cert.emb.sigma, cert.emb.rho))
    if submatrix(m, out.emb) != generate(tid):
        raise RuntimeError("transposed certificate failed the round trip")
    return DoublyDCircResult(False, out)
