"""Exact rank computations over Q."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        vals = [Fraction(x) for x in row]
        den = 1
        for v in vals:
            den = lcm(den, v.denominator)
        out.append([int(v * den) for v in vals])
    return out


def rank(matrix: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free (Bareiss) elimination."""
    rows = _integer_rows(matrix)
    if not rows:
        return 0
    ncols = len(rows[0])
    prev = 1
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            rows[i] = [(p * rows[i][j] - f * rows[r][j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == len(rows):
            break
    return r


def independent_columns(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent prefix-greedy subset."""
    chosen: list[int] = []
    current = 0
    basis: list[Sequence] = []
    for i, v in enumerate(vectors):
        trial = rank(basis + [v])
        if trial > current:
            basis.append(v)
            chosen.append(i)
            current = trial
    return chosen


def sparse_rank(rows: list[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix given as ``{col: value}`` rows.

    Rows are reduced one at a time against earlier pivot rows keyed by their
    largest column, using ``p*r - f*pivot`` and division by the row content.
    Scaling a row by a nonzero rational never changes the rank.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = dict(row)
        while row:
            low = max(row)
            prow = pivots.get(low)
            if prow is None:
                pivots[low] = row
                break
            p = prow[low]
            f = row[low]
            if p == 1 or p == -1:
                fp = f * p
                for c, v in prow.items():
                    nv = row.get(c, 0) - fp * v
                    if nv:
                        row[c] = nv
                    else:
                        del row[c]
                continue
            row = {c: v * p for c, v in row.items()}
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    del row[c]
            g = 0
            for v in row.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                row = {c: v // g for c, v in row.items()}
    return len(pivots)
