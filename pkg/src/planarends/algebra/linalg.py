"""Exact Gaussian elimination over Q(i)."""

from __future__ import annotations

from .scalars import as_exact

__all__ = ["exact_rank"]


def exact_rank(rows) -> int:
    """Rank of a matrix with exact entries (list of rows)."""
    m = [[as_exact(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = max(len(r) for r in m)
    for r in m:
        r.extend([as_exact(0)] * (ncols - len(r)))
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        for i in range(rank + 1, len(m)):
            if m[i][col]:
                factor = m[i][col] * inv
                m[i] = [a - factor * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank
