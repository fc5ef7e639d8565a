"""Matrix inversion: general Gauss-Jordan, and the block recursion for
lower-unitriangular matrices on both representations.

For ``M = [[1, 0], [C, N]]`` the inverse is ``[[1, 0], [-N^-1 C, N^-1]]``;
the 0x0 matrix is its own inverse and ends the recursion.
"""

from ..errors import NotUnitriangular, Singular
from .matrices import (AbstractMatrix, Block, SeqMatrix, block_compose,
                       block_decompose, is_unitriangular, require_square)
from .products import _tick, mulmx_vec


def invmx(M, counter=None):
    """Inverse by Gauss-Jordan elimination.

    Raises :class:`Singular` for non-invertible input rather than
    returning the input unchanged.
    """
    F, n = M.field, M.n
    aug = [list(M.row(i)) + [F.one if j == i else F.zero for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c] != F.zero), None)
        if pivot is None:
            raise Singular(f"no pivot in column {c}")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        if aug[c][c] != F.one:
            aug[c] = F.vscale(F.inv(aug[c][c]), aug[c])
            _tick(counter, 2 * n)
        prow = aug[c]
        for r in range(n):
            if r != c and aug[r][c] != F.zero:
                aug[r] = F.vaxpy(aug[r], aug[r][c], prow)
                _tick(counter, 2 * n)
    return AbstractMatrix.from_rows(F, [row[n:] for row in aug])


def fast_invmx(M, counter=None):
    if not is_unitriangular(M):
        raise NotUnitriangular("fast_invmx needs a lower-unitriangular matrix")
    return _fast_invmx(M, counter)


def _fast_invmx(M, counter):
    F = M.field
    if M.n == 0:
        return M
    blk = block_decompose(M)
    n_inv = _fast_invmx(blk.bottom_right, counter)
    col = tuple(F.neg(x) for x in mulmx_vec(n_inv, blk.bottom_left, counter))
    return block_compose(F, Block(F.one, (F.zero,) * n_inv.n, col, n_inv))


def _seq_is_unitriangular(F, rows):
    for i, row in enumerate(rows):
        if row[i] != F.one or any(x != F.zero for x in row[i + 1:]):
            return False
    return True


def cfast_invmx(S, counter=None):
    """List-of-rows version of :func:`fast_invmx`.

    Walks the rows by head/tail splitting only; recursion depth equals
    the matrix size.
    """
    require_square(S)
    F = S.field
    if not _seq_is_unitriangular(F, S.rows):
        raise NotUnitriangular("cfast_invmx needs a lower-unitriangular matrix")
    return SeqMatrix(F, _cfast(F, S.rows, counter))


def _cfast(F, rows, counter):
    if not rows:
        return []
    _head, *tail = rows
    C = [r[0] for r in tail]
    n_inv = _cfast(F, [r[1:] for r in tail], counter)
    _tick(counter, len(C) * len(C))
    first = [F.one] + [F.zero] * len(tail)
    return [first] + [[F.neg(F.dot(r, C))] + r for r in n_inv]
