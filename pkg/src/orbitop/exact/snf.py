"""Smith normal form of integer matrices with unimodular transforms.

Pivot choice is the smallest-absolute-value nonzero entry, ties broken
by row-major position, so the decomposition is deterministic for a
fixed input.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import PreconditionError
from .matrix import Matrix


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V == D with U, V unimodular and D diagonal.

    invariant_factors lists the full diagonal of D (length min(m, n)),
    nonnegative, each nonzero entry dividing the next.
    """

    U: Matrix
    D: Matrix
    V: Matrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)


def _find_pivot(a, t, m, n):
    best = None
    for i in range(t, m):
        for j in range(t, n):
            v = a[i][j]
            if v != 0 and (best is None or abs(v) < abs(best[2])):
                best = (i, j, v)
                if abs(v) == 1:
                    return best
    return best


def snf(matrix: Matrix) -> SmithDecomposition:
    """Smith normal form of an integer matrix."""
    if not matrix.is_integer():
        raise PreconditionError("snf requires integer entries")
    a = matrix.int_rows()
    m, n = matrix.rows, matrix.cols
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        found = _find_pivot(a, t, m, n)
        if found is None:
            break
        i, j, _ = found
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        # Clear row and column t; pivot magnitude strictly decreases on
        # every nonzero remainder, so this terminates.
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # Enforce divisibility: fold any non-divisible entry into row t.
        pivot = a[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % pivot != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue  # redo this pivot position
        t += 1

    for i in range(min(m, n)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]

    factors = tuple(a[i][i] for i in range(min(m, n)))
    um, dm, vm = Matrix(u), Matrix(a), Matrix(v)
    assert um @ matrix @ vm == dm, "snf transform verification failed"
    for x, y in zip(factors, factors[1:]):
        assert y == 0 or (x != 0 and y % x == 0) or x == y == 0, (
            "snf divisibility chain violated"
        )
    return SmithDecomposition(U=um, D=dm, V=vm, invariant_factors=factors)
