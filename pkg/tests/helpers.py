"""Shared generators and oracles for the test suite."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from unring import FiniteMonoid


def random_semigroup_table(n: int, rng: random.Random, with_identity: bool = True):
    """Random commutative associative table on range(n), by backtracking.

    With ``with_identity`` the element 0 is forced to be neutral.
    """
    table = [[None] * n for _ in range(n)]
    if with_identity:
        for x in range(n):
            table[0][x] = table[x][0] = x
    cells = [(i, j) for i in range(n) for j in range(i, n) if table[i][j] is None]

    def consistent() -> bool:
        for a, b, c in itertools.product(range(n), repeat=3):
            ab, bc = table[a][b], table[b][c]
            if ab is None or bc is None:
                continue
            left, right = table[ab][c], table[a][bc]
            if left is not None and right is not None and left != right:
                return False
        return True

    def fill(k: int) -> bool:
        if k == len(cells):
            return True
        i, j = cells[k]
        values = list(range(n))
        rng.shuffle(values)
        for v in values:
            table[i][j] = table[j][i] = v
            if consistent() and fill(k + 1):
                return True
        table[i][j] = table[j][i] = None
        return False

    if not fill(0):
        raise RuntimeError("no associative completion found")  # pragma: no cover
    return tuple(tuple(row) for row in table)


def random_monoids(count: int, seed: int = 0, max_size: int = 5) -> list[FiniteMonoid]:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        n = rng.randint(1, max_size)
        table = random_semigroup_table(n, rng, with_identity=k % 4 != 3)
        out.append(FiniteMonoid(table, label=f"M{k}"))
    return out


def cancels(table, d: int) -> bool:
    """Direct row check: d*x == d*y only for x == y."""
    row = table[d]
    return len(set(row)) == len(row)


def reduced(num: int, den: int) -> tuple[int, int]:
    """gcd-reduced pair with positive denominator."""
    if den == 0:
        raise ZeroDivisionError
    g = math.gcd(num, den)
    num, den = num // g, den // g
    return (-num, -den) if den < 0 else (num, den)


def lagrange_at_zero(hs, values) -> Fraction:
    """Value at h = 0 of the interpolating polynomial through (hs[i], values[i])."""
    total = Fraction(0)
    for i, (hi, vi) in enumerate(zip(hs, values)):
        weight = Fraction(1)
        for j, hj in enumerate(hs):
            if j != i:
                weight *= Fraction(0 - hj, hi - hj)
        total += weight * vi
    return total


def finite_difference_derivative(f, x, degree: int) -> Fraction:
    """Exact derivative of a polynomial function of degree <= ``degree``.

    The secant slope (f(x+h) - f(x))/h is a polynomial in h of degree
    ``degree - 1``; extrapolating exact slopes to h = 0 recovers f'(x).
    """
    hs = [Fraction(k, 100) for k in range(1, degree + 2)]
    slopes = [(f(x + h) - f(x)) / h for h in hs]
    return lagrange_at_zero(hs, slopes)
