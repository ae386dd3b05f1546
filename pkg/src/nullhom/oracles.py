"""Slow, independent reference computations used by the acceptance checks and tests.

Nothing here shares code with the constructions it is compared against.
"""

from __future__ import annotations

import itertools


def naive_pushout(f_table, g_table, nb: int, nc: int):
    """Pushout of ``B <-f- A -g-> C`` by closing a relation on ``B + C`` until it stops growing.

    Returns ``(apex, leg_B, leg_C)`` as plain tuples, with classes numbered in
    order of their smallest member (``B`` before ``C``).
    """
    n = nb + nc
    rel = [[i == j for j in range(n)] for i in range(n)]
    for x, y in zip(f_table, g_table):
        rel[x][nb + y] = rel[nb + y][x] = True
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if rel[i][j]:
                    continue
                if any(rel[i][k] and rel[k][j] for k in range(n)):
                    rel[i][j] = rel[j][i] = True
                    changed = True
    label = {}
    for i in range(n):
        first = min(j for j in range(n) if rel[i][j])
        if first not in label:
            label[first] = len(label)
    cls = [label[min(j for j in range(n) if rel[i][j])] for i in range(n)]
    return len(label), tuple(cls[:nb]), tuple(cls[nb:])


def all_tables(n: int, m: int):
    """Every function ``n -> m`` as a tuple."""
    return list(itertools.product(range(m), repeat=n))


def naive_kernel_dimension(rows) -> int:
    """Nullity over F_2 by counting solutions; rows are lists of 0/1."""
    cols = len(rows[0]) if rows else 0
    count = sum(
        1 for v in itertools.product((0, 1), repeat=cols)
        if all(sum(a * b for a, b in zip(r, v)) % 2 == 0 for r in rows)
    )
    return count.bit_length() - 1
