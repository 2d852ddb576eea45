"""Negative certificates: a named forbidden matrix plus its embedding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .catalog import CatalogId, generate
from .matrix import BinMatrix, Embedding, compose_embeddings, find_configuration, submatrix


@dataclass(frozen=True)
class NegCertificate:
    """A catalog member embedded in a host matrix as a configuration."""

    id: CatalogId
    emb: Embedding
    note: Optional[str] = None


def certificate_matrix_ok(host: BinMatrix, cert: NegCertificate) -> bool:
    """Round-trip check: the embedded submatrix equals the named matrix."""
    try:
        return submatrix(host, cert.emb) == generate(cert.id)
    except ValueError:
        return False


def refine_certificate(
    host: BinMatrix, cert: NegCertificate, target: CatalogId, note: Optional[str] = None
) -> NegCertificate:
    """Replace a certificate by one for a target matrix found inside it."""
    sub = submatrix(host, cert.emb)
    inner = find_configuration(sub, generate(target))
    if inner is None:
        raise RuntimeError(f"{target} not found inside {cert.id}; translation table broken")
    return NegCertificate(target, compose_embeddings(cert.emb, inner), note)


def lift_certificate(
    cert: NegCertificate,
    row_map: Optional[dict[int, int]] = None,
    col_map: Optional[dict[int, int]] = None,
    note: Optional[str] = None,
) -> NegCertificate:
    """Re-express a certificate through row/column index translations."""
    rho = tuple(row_map[i] for i in cert.emb.rho) if row_map else cert.emb.rho
    sigma = tuple(col_map[j] for j in cert.emb.sigma) if col_map else cert.emb.sigma
    return NegCertificate(cert.id, Embedding(rho, sigma), note or cert.note)
