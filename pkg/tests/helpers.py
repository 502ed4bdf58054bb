"""Shared helpers for the test suite: random exact objects and slow oracles."""
from __future__ import annotations

import random
from fractions import Fraction

from rigidcalc import CycNumber, ExactMatrix, MonodromyTuple


def random_rational(rng: random.Random, span: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_cyc(rng: random.Random, order: int, span: int = 4) -> CycNumber:
    from rigidcalc import euler_phi

    return CycNumber(order, [random_rational(rng, span) for _ in range(euler_phi(order))])


def random_invertible(rng: random.Random, n: int, order: int = 1) -> ExactMatrix:
    """L * U with unit diagonals and small entries: always invertible."""
    lower = [[0] * n for _ in range(n)]
    upper = [[0] * n for _ in range(n)]
    for i in range(n):
        lower[i][i] = 1
        upper[i][i] = 1
        for j in range(i):
            lower[i][j] = rng.randint(-2, 2)
        for j in range(i + 1, n):
            upper[i][j] = rng.randint(-2, 2)
    product = ExactMatrix.from_rows(lower, order=order) * ExactMatrix.from_rows(upper, order=order)
    return product


def random_small_invertible(rng: random.Random, n: int) -> ExactMatrix:
    """Invertible matrix with entries in {0, +-1, +-2}, by rejection."""
    while True:
        rows = [[rng.choice([-2, -1, 0, 1, 2]) for _ in range(n)] for _ in range(n)]
        m = ExactMatrix.from_rows(rows)
        if m.rank() == n:
            return m


def count_points_x3_plus_x(p: int) -> int:
    """#E(F_p) for y^2 = x^3 + x, by brute force, point at infinity included."""
    count = 1
    for x in range(p):
        for y in range(p):
            if (y * y - (x ** 3 + x)) % p == 0:
                count += 1
    return count


def brute_force_irreducible(t: MonodromyTuple) -> bool:
    """Word-enumeration span check, independent of the Burnside closure.

    Collects every word in the generators level by level, stacking the
    flattened matrices and recomputing the rank of the whole stack per level;
    once a level adds no rank the span is multiplication-closed and final.
    """
    n = t.rank
    target = n * n
    words = [ExactMatrix.identity(n, order=t.order)]
    stacked = [list(words[0].entries)]
    rank = 1
    level = list(words)
    while True:
        next_level = []
        for w in level:
            for g in t.matrices:
                next_level.append(g * w)
        candidate_rows = stacked + [list(m.entries) for m in next_level]
        new_rank = ExactMatrix.from_rows(candidate_rows, order=t.order).rank()
        if new_rank == rank:
            return rank == target
        stacked = candidate_rows
        rank = new_rank
        if rank == target:
            return True
        level = next_level
