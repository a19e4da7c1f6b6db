"""Division-free determinants and Pfaffians over a commutative ring."""
from __future__ import annotations

from typing import Callable, Sequence

PFAFFIAN_MAX_DIM = 12


def det(entries: Sequence[Sequence], zero, is_zero: Callable = lambda x: not x):
    """Laplace expansion along rows with memoised minors.

    ``entries`` is a square list of ring elements supporting ``+``, ``-``
    and ``*``.  The memo is keyed by the set of columns still available, so
    the cost is O(n 2^n) multiplications.
    """
    n = len(entries)
    if any(len(row) != n for row in entries):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return None  # caller supplies the unit
    memo: dict = {}

    def minor(row: int, cols: tuple):
        if row == n - 1:
            return entries[row][cols[0]]
        if cols in memo:
            return memo[cols]
        acc = zero
        for pos, c in enumerate(cols):
            a = entries[row][c]
            if is_zero(a):
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if is_zero(sub):
                continue
            if pos % 2:
                acc = acc - a * sub
            else:
                acc = acc + a * sub
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(n)))


def pfaffian(entries: Sequence[Sequence], zero, one, is_zero: Callable = lambda x: not x):
    """Pfaffian by expansion along the first row, memoised on index subsets."""
    n = len(entries)
    if n % 2:
        raise ValueError(f"Pfaffian of odd dimension {n}")
    if n > PFAFFIAN_MAX_DIM:
        raise ValueError(f"Pfaffian dimension {n} exceeds {PFAFFIAN_MAX_DIM}")
    memo: dict = {}

    def pf(idx: tuple):
        if not idx:
            return one
        if idx in memo:
            return memo[idx]
        i = idx[0]
        acc = zero
        for pos in range(1, len(idx)):
            j = idx[pos]
            a = entries[i][j]
            if is_zero(a):
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            sub = pf(rest)
            if is_zero(sub):
                continue
            # sign of moving j next to i is (-1)^(pos-1)
            if pos % 2:
                acc = acc + a * sub
            else:
                acc = acc - a * sub
        memo[idx] = acc
        return acc

    return pf(tuple(range(n)))
