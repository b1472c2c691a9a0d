"""Exact linear algebra over the integers and rationals."""

from __future__ import annotations

from fractions import Fraction


def bareiss_solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` with fraction-free elimination.

    Returns ``(det, x)`` with ``x`` a list of Fractions.  Raises
    ``ZeroDivisionError`` on a singular matrix.
    """
    size = len(matrix)
    rows = [list(map(int, row)) + [int(b)] for row, b in zip(matrix, rhs)]
    sign = 1
    prev = 1
    for k in range(size):
        pivot = next((r for r in range(k, size) if rows[r][k]), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size + 1):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    det = sign * rows[size - 1][size - 1] if size else 1
    x = [Fraction(0)] * size
    for i in reversed(range(size)):
        acc = Fraction(rows[i][size])
        for j in range(i + 1, size):
            acc -= rows[i][j] * x[j]
        x[i] = acc / rows[i][i]
    return det, x


def determinant(matrix):
    """Exact determinant of a dense square matrix."""
    size = len(matrix)
    det = sparse_determinant({i: dict(enumerate(row)) for i, row in enumerate(matrix)}, size)
    return int(det) if det.denominator == 1 else det


def _eliminate(rows):
    """Row-reduce sparse rows (dicts column -> Fraction); returns pivot rows."""
    pivots: dict = {}
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        while row:
            col = min(row)
            if col not in pivots:
                lead = row[col]
                pivots[col] = {c: v / lead for c, v in row.items()}
                break
            factor = row[col]
            for c, v in pivots[col].items():
                new = row.get(c, 0) - factor * v
                if new:
                    row[c] = new
                else:
                    row.pop(c, None)
    return pivots


def rank(rows) -> int:
    """Rank of a matrix given as dense lists or sparse dicts."""
    sparse = [row if isinstance(row, dict) else dict(enumerate(row)) for row in rows]
    return len(_eliminate(sparse))


def sparse_determinant(rows: dict, size: int) -> Fraction:
    """Determinant of a ``size`` x ``size`` matrix stored as {row: {col: value}}."""
    work = {r: {c: Fraction(v) for c, v in rows.get(r, {}).items() if v} for r in range(size)}
    det = Fraction(1)
    remaining = set(range(size))
    for col in range(size):
        candidates = [r for r in remaining if col in work[r]]
        if not candidates:
            return Fraction(0)
        pivot = min(candidates, key=lambda r: (len(work[r]), r))
        # sign of moving the pivot row into position: count rows still ahead of it
        ahead = sum(1 for r in remaining if r < pivot)
        if ahead % 2:
            det = -det
        remaining.discard(pivot)
        prow = work[pivot]
        lead = prow[col]
        det *= lead
        for r in candidates:
            if r == pivot:
                continue
            factor = work[r][col] / lead
            row = work[r]
            for c, v in prow.items():
                new = row.get(c, 0) - factor * v
                if new:
                    row[c] = new
                else:
                    row.pop(c, None)
    return det


def same_row_space(rows_a, rows_b) -> bool:
    ra = rank(rows_a)
    rb = rank(rows_b)
    return ra == rb == rank(list(rows_a) + list(rows_b))
