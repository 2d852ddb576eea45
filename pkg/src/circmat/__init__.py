"""circmat: certifying recognition of circular-ones-style matrix properties
and of proper circular-arc / proper interval bigraphs.

Every recognizer returns either a positive witness (column order, biorder,
arc bimodel) or a negative certificate naming a minimal forbidden submatrix
or induced subgraph together with its embedding.
"""

from .matrix import (
    BinMatrix,
    Biorder,
    CircInterval,
    ColumnOrder,
    Embedding,
    complement,
    find_configuration,
    pad_trivial,
    row_complement,
    rows_as_circular_intervals,
    star,
    submatrix,
    transpose,
)
from .catalog import CatalogId, bracelets, classify, family, generate
from .certificates import NegCertificate
from .consecutive import PrefixResult, circular_ones, circular_ones_certificate, consecutive_ones
from .dcircular import DCircResult, d_circular, d_operator, delta_operator
from .compatible import CCOResult, cco, d_interval, doubly_d_circular, lco
from .bigraph import Bigraph, Bimodel, SubgraphCertificate, bigraph_of, recognize_pcab, recognize_pib
from .oracle import OracleVerdict, brute_cco, brute_property, verify_certificate

__all__ = [
    "BinMatrix", "Biorder", "CircInterval", "ColumnOrder", "Embedding",
    "complement", "transpose", "row_complement", "star", "pad_trivial",
    "submatrix", "find_configuration", "rows_as_circular_intervals",
    "CatalogId", "generate", "bracelets", "family", "classify",
    "NegCertificate", "PrefixResult",
    "consecutive_ones", "circular_ones", "circular_ones_certificate",
    "DCircResult", "d_circular", "d_operator", "delta_operator",
    "CCOResult", "cco", "d_interval", "lco", "doubly_d_circular",
    "Bigraph", "Bimodel", "SubgraphCertificate", "bigraph_of",
    "recognize_pcab", "recognize_pib",
    "OracleVerdict", "brute_property", "brute_cco", "verify_certificate",
]
