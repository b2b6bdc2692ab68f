"""Exact Gaussian elimination over the rationals.

Used wherever a statement reduces to feasibility of a finite linear system:
the coboundary test, the stabilizer completion and the gauge solve in the
residual action.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class LinearSolution:
    """Outcome of ``A v = b``.

    ``solution`` is the representative with every free variable set to zero
    (so earlier columns are preferred), or None when infeasible.  On
    infeasibility ``witness`` is a row vector ``w`` with ``w A = 0`` and
    ``w b != 0``.
    """

    solution: Optional[tuple]
    witness: Optional[tuple]
    rank: int
    nullity: int

    @property
    def feasible(self) -> bool:
        return self.solution is not None

    @property
    def unique(self) -> bool:
        return self.feasible and self.nullity == 0


def solve(matrix: Sequence[Sequence], rhs: Sequence, ncols: Optional[int] = None) -> LinearSolution:
    rows = [[Fraction(v) for v in row] for row in matrix]
    m = len(rows)
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    b = [Fraction(v) for v in rhs]
    if len(b) != m:
        raise ValueError("right-hand side length does not match row count")
    # Track row operations so an infeasibility witness can be read off.
    ops = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]

    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        b[r], b[p] = b[p], b[r]
        ops[r], ops[p] = ops[p], ops[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        b[r] *= inv
        ops[r] = [v * inv for v in ops[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                k = rows[i][c]
                rows[i] = [vi - k * vr for vi, vr in zip(rows[i], rows[r])]
                b[i] -= k * b[r]
                ops[i] = [vi - k * vr for vi, vr in zip(ops[i], ops[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break

    rank = len(pivots)
    for i in range(rank, m):
        if b[i] != 0:
            return LinearSolution(None, tuple(ops[i]), rank, n - rank)
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = b[i]
    return LinearSolution(tuple(x), None, rank, n - rank)


def check_witness(matrix: Sequence[Sequence], rhs: Sequence, witness: Sequence) -> bool:
    """True iff ``witness`` certifies that ``matrix v = rhs`` has no solution."""
    n = len(matrix[0]) if matrix else 0
    for c in range(n):
        if sum(Fraction(w) * row[c] for w, row in zip(witness, matrix)) != 0:
            return False
    return sum(Fraction(w) * v for w, v in zip(witness, rhs)) != 0
