"""Random and planted instance generators for tests, demos and the CLI."""

from __future__ import annotations

import random

from .matrix import BinMatrix


def random_matrix(n_rows: int, n_cols: int, density: float = 0.5, seed: int = 0) -> BinMatrix:
    """Independent Bernoulli entries."""
    rng = random.Random(seed)
    return BinMatrix(n_cols, [
        [c for c in range(1, n_cols + 1) if rng.random() < density]
        for _ in range(n_rows)
    ])


def random_circular(n_rows: int, n_cols: int, seed: int = 0) -> BinMatrix:
    """Rows are random circular intervals of a hidden column order, so the
    matrix always has the circular-ones property (D-circularity may fail)."""
    rng = random.Random(seed)
    perm = list(range(1, n_cols + 1))
    rng.shuffle(perm)
    rows = []
    for _ in range(n_rows):
        ln = rng.randint(1, max(1, n_cols - 1))
        start = rng.randrange(n_cols)
        rows.append([perm[(start + t) % n_cols] for t in range(ln)])
    return BinMatrix(n_cols, rows)


def planted_d_circular(n_rows: int, n_cols: int, seed: int = 0, width: int = 8) -> BinMatrix:
    """A matrix that provably has the D-circular property.

    Pairs of arcs share a left endpoint: a long arc of the given width and a
    short one exactly one column shorter.  With that width gap no arc nests
    strictly inside another, so every pairwise difference is a single arc
    and the hidden order is D-circular.  Starts avoid the last column, which
    keeps one column empty (a free cut for the circular-ones reduction).
    """
    rng = random.Random(seed)
    w = max(2, min(width, n_cols - 2))
    hi = n_cols - w - 1
    if hi < 1:
        raise ValueError("n_cols too small for the requested width")
    rows = []
    for _ in range((n_rows + 1) // 2):
        s = rng.randint(1, hi)
        rows.append(list(range(s, s + w + 1)))
        if len(rows) < n_rows:
            rows.append(list(range(s, s + w)))
    return BinMatrix(n_cols, rows[:n_rows])


def planted_by_size(target_size: int, seed: int = 0, width: int = 24) -> BinMatrix:
    """A planted D-circular instance with size(M) ≈ target_size."""
    # Each start contributes 2 rows and 2*width+1 ones; columns ≈ starts/2.
    per_start = 2 + (2 * width + 1)
    n_starts = max(4, target_size // (per_start + 1))
    n_cols = max(n_starts, width + 3)
    return planted_d_circular(2 * n_starts, n_cols, seed=seed, width=width)
