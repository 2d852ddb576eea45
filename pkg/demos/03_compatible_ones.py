"""Circularly and linearly compatible ones: biorders and their checkers.

A biorder orders rows and columns simultaneously; the compatible-ones
conditions make the rows march around the column circle in step with the
row order.  Trivial rows are padded away through one extra column and the
answer is restricted back.
"""

from circmat import BinMatrix
from circmat.catalog import CatalogId, generate
from circmat.compatible import cco, lco, pad_for_cco
from circmat.oracle import verify_cco_biorder, verify_lco_biorder

print("=== a positive instance with a trivial row ===")
m = BinMatrix.from_dense([
    [0, 0, 0],
    [1, 1, 0],
    [0, 1, 1],
])
padded, u = pad_for_cco(m)
print("padded for u =", u, "->", padded.to_dense())
res = cco(m)
print("row order:", res.biorder.row_order)
print("col order:", res.biorder.col_order)
print("passes the checker:", verify_cco_biorder(m, res.biorder))

print("\n=== a forbidden member, certificate translated through the pad ===")
host = BinMatrix(3, list(generate(CatalogId("M_I", 3)).rows) + [()])
res = cco(host)
print("M_I(3) plus an empty row ->", res.cert.id)
print("rows", res.cert.emb.rho, "cols", res.cert.emb.sigma)

print("\n=== linearly compatible ones coincides with D-interval ===")
stair = BinMatrix.from_dense([[1, 0, 0], [1, 1, 1], [0, 0, 1]])
res = lco(stair)
print("rows:", res.biorder.row_order, "cols:", res.biorder.col_order)
print("checker:", verify_lco_biorder(stair, res.biorder))
res = lco(generate(CatalogId("M_I", 3)))
print("M_I(3) ->", res.cert.id, "(no wraparound allowed on a line)")
