"""Tour of the forbidden-family catalog.

The families are generated, never hard-coded beyond the base figures:
stars add an empty column, complements flip entries, masks complement
selected rows of the cycle matrix.
"""

from circmat.catalog import (
    CatalogId,
    a_k,
    bracelets,
    classify,
    family,
    generate,
)
from circmat.matrix import complement, row_complement, same_configuration, transpose


def dump(m):
    for row in m.to_dense():
        print("   ", "".join(str(v) for v in row))


print("=== the thirteen fixed members forbidden for D-circularity ===")
for cid, mat in family("F_DCircR"):
    print(f"{cid}: {mat.n_rows}x{mat.n_cols}")

print("\n=== masked cycles: ForbRow with k = 4 ===")
for cid, mat in family("ForbRow", 4):
    if cid.family == "aM_I*" and cid.k == 4:
        print(cid)
        dump(mat)

print("\n=== bracelets (lexicographic class representatives) ===")
print("length 4:", bracelets(4))
print("A_3 is special:", a_k(3), " (001 and 011 are bracelets but excluded)")

print("\n=== classification up to configuration ===")
print("transpose(Z2) is", classify(transpose(generate(CatalogId("Z2")))))
shuffled = row_complement("0010", generate(CatalogId("M_IV")))
print("0010-masked M_IV is", classify(shuffled))
print("Z1T and co_M_I*(3) are the same configuration:",
      same_configuration(generate(CatalogId("Z1T")), generate(CatalogId("co_M_I*", 3))))

print("\n=== self-complementary members ===")
for name in ("Z3*", "Z5", "Z7", "Z8"):
    mat = generate(CatalogId(name))
    print(name, "~ its complement:", same_configuration(mat, complement(mat)))
