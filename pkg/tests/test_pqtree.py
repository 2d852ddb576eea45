"""PQ-tree engine validated exhaustively against order enumeration."""

import random
from itertools import permutations, product

import pytest

from circmat.matrix import BinMatrix
from circmat.oracle import order_satisfies
from circmat.pqtree import PQTree, enumerate_frontiers


def all_valid_orders(m, prop="consecutive_ones"):
    return {
        order
        for order in permutations(range(1, m.n_cols + 1))
        if order_satisfies(m, order, prop)
    }


def run_tree(m):
    tree = PQTree(m.n_cols)
    for i, row in enumerate(m.rows, start=1):
        if not tree.reduce(row):
            return tree, i
        tree.check()
    return tree, None


def brute_least_failing_prefix(m):
    for i in range(1, m.n_rows + 1):
        prefix = BinMatrix(m.n_cols, m.rows[:i])
        if not all_valid_orders(prefix):
            return i
    return None


def all_matrices(k, l):
    cols = list(range(1, l + 1))
    subsets = [
        [c for c, bit in zip(cols, bits) if bit] for bits in product((0, 1), repeat=l)
    ]
    for rows in product(subsets, repeat=k):
        yield BinMatrix(l, rows)


@pytest.mark.parametrize("k,l", [(1, 3), (2, 3), (3, 3), (2, 4), (3, 4)])
def test_exhaustive_against_brute(k, l):
    for m in all_matrices(k, l):
        tree, fail = run_tree(m)
        expected = brute_least_failing_prefix(m)
        assert fail == expected, f"{m}: got prefix {fail}, want {expected}"
        if fail is None:
            frontiers = enumerate_frontiers(tree)
            assert frontiers == all_valid_orders(m), m


def test_random_larger_against_brute():
    rng = random.Random(42)
    for _ in range(300):
        k = rng.randint(1, 7)
        l = rng.randint(1, 6)
        m = BinMatrix(l, [
            [c for c in range(1, l + 1) if rng.random() < rng.choice((0.3, 0.5, 0.7))]
            for _ in range(k)
        ])
        tree, fail = run_tree(m)
        assert fail == brute_least_failing_prefix(m), m
        if fail is None:
            assert enumerate_frontiers(tree) == all_valid_orders(m), m


def test_wide_consecutive_instance():
    # Overlapping intervals on 60 columns force one long Q node.
    n = 60
    m = BinMatrix(n, [list(range(i, i + 4)) for i in range(1, n - 2)])
    tree, fail = run_tree(m)
    assert fail is None
    front = tree.frontier()
    assert front == list(range(1, n + 1)) or front == list(range(n, 0, -1))


def test_trivial_rows_never_fail():
    m = BinMatrix(4, [[], [1, 2, 3, 4], [2, 3]])
    tree, fail = run_tree(m)
    assert fail is None
