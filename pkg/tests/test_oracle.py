import random

import pytest

from circmat.catalog import CatalogId, generate
from circmat.certificates import NegCertificate
from circmat.compatible import cco
from circmat.matrix import BinMatrix, Biorder, Embedding
from circmat.oracle import (
    BRUTE_MAX_COLS,
    arc_sequence_winds_once,
    brute_cco,
    brute_doubly_d_circular,
    brute_property,
    circularly_monotone,
    order_satisfies,
    verify_cco_biorder,
    verify_certificate,
    verify_d_circular_order,
    verify_monotone_circular_biorder,
)

FOOTNOTE = BinMatrix.from_dense(
    [[1, 0, 0, 0], [1, 1, 1, 0], [0, 0, 1, 1], [1, 1, 0, 1]]
)


def test_brute_property_examples():
    assert not brute_property(generate(CatalogId("M_I*", 3)), "d_circular").holds
    one_row = BinMatrix(5, [[2, 4]])
    v = brute_property(one_row, "d_circular")
    assert v.holds and verify_d_circular_order(one_row, v.witness)
    assert not brute_property(generate(CatalogId("Z2")), "d_interval").holds


def test_brute_property_guard():
    with pytest.raises(ValueError):
        brute_property(BinMatrix(BRUTE_MAX_COLS + 1, [[1]]), "circular_ones")
    with pytest.raises(ValueError):
        brute_property(BinMatrix(2, [[1]]), "nope")


def test_brute_cco_examples():
    v = brute_cco(generate(CatalogId("M_I", 3)))
    assert v.holds and verify_cco_biorder(generate(CatalogId("M_I", 3)), v.witness)
    assert not brute_cco(generate(CatalogId("Z5"))).holds
    zeros = BinMatrix.from_dense([[0, 0], [0, 0]])
    assert brute_cco(zeros).holds
    with pytest.raises(ValueError):
        brute_cco(BinMatrix(8, [[1]]))


def test_verify_order_examples():
    m3 = generate(CatalogId("M_I", 3))
    assert order_satisfies(m3, (1, 2, 3), "circular_ones")
    assert verify_d_circular_order(m3, (1, 2, 3))
    bad = generate(CatalogId("M_I*", 3))
    import itertools

    assert not any(
        order_satisfies(bad, p, "circular_ones")
        for p in itertools.permutations((1, 2, 3, 4))
    )
    empty = BinMatrix(0, [])
    assert verify_d_circular_order(empty, ())


def test_circularly_monotone():
    assert circularly_monotone([])
    assert circularly_monotone([5])
    assert circularly_monotone([1, 2, 3])
    assert circularly_monotone([2, 3, 1])
    assert not circularly_monotone([2, 1, 3, 1])
    assert circularly_monotone([1, 1, 1])


def test_arc_sequence_winding():
    # M_I(3)'s arcs march exactly once around.
    assert arc_sequence_winds_once([(0, 2), (1, 2), (2, 2)], 3)
    # Lefts lapping a full revolution is rejected.
    assert not arc_sequence_winds_once([(3, 3), (1, 3), (3, 1)], 4)
    assert arc_sequence_winds_once([], 3)
    assert arc_sequence_winds_once([(2, 1)], 3)


def test_verify_cco_biorder_footnote_matrix():
    # The canonical biorder fails: columns are not circular intervals of it.
    b = Biorder((1, 2, 3, 4), (1, 2, 3, 4))
    assert not verify_cco_biorder(FOOTNOTE, b)
    all_ones = BinMatrix.from_dense([[1, 1], [1, 1]])
    assert verify_cco_biorder(all_ones, Biorder((1, 2), (1, 2)))
    out = cco(generate(CatalogId("M_I", 3)))
    assert verify_cco_biorder(generate(CatalogId("M_I", 3)), out.biorder)


def test_verify_monotone_circular_biorder():
    nested = BinMatrix(3, [[1], [1, 2]])
    assert verify_monotone_circular_biorder(nested, Biorder((1, 2), (1, 2, 3)))
    # The footnote matrix satisfies lefts+rights monotonicity canonically but
    # violates the alignment condition.
    assert not verify_monotone_circular_biorder(FOOTNOTE, Biorder((1, 2, 3, 4), (1, 2, 3, 4)))
    single = BinMatrix(3, [[2]])
    assert verify_monotone_circular_biorder(single, Biorder((1,), (1, 2, 3)))
    with pytest.raises(ValueError):
        verify_monotone_circular_biorder(BinMatrix(2, [[]]), Biorder((1,), (1, 2)))


def test_footnote_matrix_monotone_except_alignment():
    # Lefts are monotone and unwrapped rights are monotone; only the
    # alignment bound fails.
    rank = {c: p for p, c in enumerate((1, 2, 3, 4))}
    arcs = []
    for row in FOOTNOTE.rows:
        ranks = sorted(rank[c] for c in row)
        gap = [
            j for j in range(len(ranks))
            if (ranks[(j + 1) % len(ranks)] - ranks[j]) % 4 > 1
        ]
        d = ranks[(gap[0] + 1) % len(ranks)] if gap else ranks[0]
        f = d + len(ranks) - 1
        arcs.append((d, f))
    lefts = [d for d, _ in arcs]
    rights = [f for _, f in arcs]
    assert lefts == sorted(lefts) and rights == sorted(rights)
    assert rights[-1] > (rights[0] % 4) + 4  # alignment violated


def test_brute_doubly():
    assert brute_doubly_d_circular(BinMatrix.from_dense([[1, 0], [0, 1]])).holds
    assert not brute_doubly_d_circular(generate(CatalogId("Z8"))).holds


def test_verify_certificate_soundness_and_tampering():
    host = generate(CatalogId("Z2*"))
    good = NegCertificate(CatalogId("Z2*"), Embedding((1, 2, 3, 4), (1, 2, 3, 4)))
    assert verify_certificate(host, good, "d_circular")
    shifted = NegCertificate(CatalogId("Z2*"), Embedding((1, 2, 4, 3), (1, 2, 3, 4)))
    assert not verify_certificate(host, shifted, "d_circular")
    wrong_family = NegCertificate(CatalogId("Z2*"), Embedding((1, 2, 3, 4), (1, 2, 3, 4)))
    assert not verify_certificate(host, wrong_family, "circular_ones")
    with pytest.raises(ValueError):
        verify_certificate(host, good, "bogus")
