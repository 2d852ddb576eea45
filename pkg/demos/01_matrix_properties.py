"""Walk through the basic matrix recognizers.

Every recognizer answers with a machine-checkable object: a column order
when the property holds, or a named forbidden submatrix with its embedding
when it does not.
"""

from circmat import BinMatrix, circular_ones, circular_ones_certificate, consecutive_ones
from circmat.catalog import CatalogId, generate
from circmat.compatible import d_interval
from circmat.dcircular import d_circular
from circmat.matrix import submatrix
from circmat.oracle import verify_certificate, verify_d_circular_order


def show(title):
    print(f"\n=== {title} ===")


show("consecutive ones")
stair = BinMatrix.from_dense([
    [1, 1, 0, 0, 0],
    [0, 1, 1, 1, 0],
    [0, 0, 0, 1, 1],
])
res = consecutive_ones(stair)
print("staircase matrix ->", "order", res.order)

tucker = generate(CatalogId("M_I", 3))
print("M_I(3)          -> least failing prefix", consecutive_ones(tucker).fail_index)

show("circular ones")
print("M_I(3)  ->", circular_ones(tucker).order, "(the cycle closes up)")
bad = generate(CatalogId("M_I*", 3))
res = circular_ones(bad)
print("M_I*(3) -> fails at prefix", res.fail_index)
cert = circular_ones_certificate(bad)
print("certificate:", cert.id, "rows", cert.emb.rho, "cols", cert.emb.sigma)
print("embedded submatrix equals the named matrix:",
      submatrix(bad, cert.emb) == generate(cert.id))

show("D-circular: rows AND their differences must be arcs")
m = BinMatrix.from_dense([
    [1, 1, 0, 0],
    [1, 1, 1, 0],
    [0, 1, 1, 1],
])
r = d_circular(m)
print("nested arcs ->", "order", r.order, "| verified:",
      verify_d_circular_order(m, r.order))

z2s = generate(CatalogId("Z2*"))
r = d_circular(z2s)
print("Z2* -> certificate", r.cert.id,
      "| verified:", verify_certificate(z2s, r.cert, "d_circular"))

show("D-interval (the linear variant)")
r = d_interval(generate(CatalogId("Z1")))
print("Z1 (the claw's biadjacency) -> certificate", r.cert.id)
r = d_interval(stair)
print("staircase -> order", r.order)
