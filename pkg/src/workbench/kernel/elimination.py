"""Determinant and rank by exact Gaussian elimination.

The abstract versions sweep with explicit row/column indices over a
scratch copy; the seqmx versions recurse on the trailing submatrix the
way the executable refinement would.
"""

from .matrices import require_square


def det_mx(M):
    F, n = M.field, M.n
    a = M.rows()
    det = F.one
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != F.zero), None)
        if p is None:
            return F.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = F.neg(det)
        det = F.mul(det, a[c][c])
        inv = F.inv(a[c][c])
        for r in range(c + 1, n):
            if a[r][c] != F.zero:
                a[r] = F.vaxpy(a[r], F.mul(a[r][c], inv), a[c])
    return det


def rank_mx(M):
    F = M.field
    a = M.rows()
    nrows = ncols = M.n
    rank = 0
    for c in range(ncols):
        p = next((r for r in range(rank, nrows) if a[r][c] != F.zero), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        inv = F.inv(a[rank][c])
        for r in range(rank + 1, nrows):
            if a[r][c] != F.zero:
                a[r] = F.vaxpy(a[r], F.mul(a[r][c], inv), a[rank])
        rank += 1
    return rank


def _split_pivot(F, rows):
    """Move the first row with a nonzero head to the front.

    Returns ``(pivot, others, k)`` with ``k`` the pivot's original
    position, or ``None`` when the leading column is all zero.
    """
    for k, row in enumerate(rows):
        if row[0] != F.zero:
            return row, rows[:k] + rows[k + 1:], k
    return None


def _eliminate(F, pivot, others):
    inv = F.inv(pivot[0])
    out = []
    for row in others:
        if row[0] == F.zero:
            out.append(list(row[1:]))
        else:
            out.append(F.vaxpy(row[1:], F.mul(row[0], inv), pivot[1:]))
    return out


def _det_rows(F, rows):
    if not rows:
        return F.one
    split = _split_pivot(F, rows)
    if split is None:
        return F.zero
    pivot, others, k = split
    # rotating row k to the front is k adjacent transpositions
    d = F.mul(pivot[0], _det_rows(F, _eliminate(F, pivot, others)))
    return F.neg(d) if k % 2 else d


def det_seqmx(S):
    require_square(S)
    return _det_rows(S.field, [list(r) for r in S.rows])


def _rank_rows(F, rows):
    if not rows or not rows[0]:
        return 0
    split = _split_pivot(F, rows)
    if split is None:
        return _rank_rows(F, [r[1:] for r in rows])
    pivot, others, _ = split
    return 1 + _rank_rows(F, _eliminate(F, pivot, others))


def rank_elim_seqmx(S):
    require_square(S)
    return _rank_rows(S.field, [list(r) for r in S.rows])

