"""Matrix products on both representations, with optional op counting.

Every routine takes an optional :class:`MulCounter`; it is created by
the caller per invocation, never shared through module state.
"""

from ..errors import DimensionMismatch
from .matrices import AbstractMatrix, SeqMatrix

DEFAULT_CUTOFF = 64


class MulCounter:
    """Tally of scalar multiplications performed by one computation."""

    def __init__(self):
        self.count = 0

    def add(self, k):
        self.count += k

    def __repr__(self):
        return f"MulCounter({self.count})"


def _tick(counter, k):
    if counter is not None:
        counter.add(k)


def _check_fields(a, b):
    if a.field != b.field:
        raise DimensionMismatch(f"field mismatch: {a.field!r} vs {b.field!r}")


def mulmx(A, B, counter=None):
    """Naive O(n^3) product of two abstract matrices."""
    _check_fields(A, B)
    if A.n != B.n:
        raise DimensionMismatch(f"{A.n}x{A.n} times {B.n}x{B.n}")
    F, n = A.field, A.n
    cols = [tuple(B[i, j] for i in range(n)) for j in range(n)]
    entries = tuple(F.dot(A.row(i), cols[j]) for i in range(n) for j in range(n))
    _tick(counter, n * n * n)
    return AbstractMatrix(F, n, entries)


def mulmx_vec(M, v, counter=None):
    """Matrix times column vector, abstract side."""
    if len(v) != M.n:
        raise DimensionMismatch(f"{M.n}x{M.n} times vector of length {len(v)}")
    _tick(counter, M.n * M.n)
    return tuple(M.field.dot(M.row(i), v) for i in range(M.n))


def _naive(F, A, B, counter):
    cols = list(zip(*B)) if B else []
    _tick(counter, len(A) * len(cols) * len(B))
    dot = F.dot
    return [[dot(row, col) for col in cols] for row in A]


def _square_pair(A, B):
    _check_fields(A, B)
    (ra, ca), (rb, cb) = A.shape, B.shape
    if ra != ca or rb != cb or ra != rb:
        raise DimensionMismatch(f"{ra}x{ca} times {rb}x{cb}; square operands of equal size required")
    return ra


def mul_seqmx(A, B, counter=None):
    _square_pair(A, B)
    return SeqMatrix(A.field, _naive(A.field, A.rows, B.rows, counter))


def _add(F, X, Y):
    return [F.vadd(x, y) for x, y in zip(X, Y)]


def _sub(F, X, Y):
    return [F.vsub(x, y) for x, y in zip(X, Y)]


def _quarters(X, h):
    top, bottom = X[:h], X[h:]
    return ([r[:h] for r in top], [r[h:] for r in top],
            [r[:h] for r in bottom], [r[h:] for r in bottom])


def _strassen(F, A, B, n, cutoff, counter):
    if n <= cutoff:
        return _naive(F, A, B, counter)
    if n % 2:
        return _peeled(F, A, B, n, cutoff, counter)
    h = n // 2
    A11, A12, A21, A22 = _quarters(A, h)
    B11, B12, B21, B22 = _quarters(B, h)
    rec = lambda X, Y: _strassen(F, X, Y, h, cutoff, counter)  # noqa: E731
    M1 = rec(_add(F, A11, A22), _add(F, B11, B22))
    M2 = rec(_add(F, A21, A22), B11)
    M3 = rec(A11, _sub(F, B12, B22))
    M4 = rec(A22, _sub(F, B21, B11))
    M5 = rec(_add(F, A11, A12), B22)
    M6 = rec(_sub(F, A21, A11), _add(F, B11, B12))
    M7 = rec(_sub(F, A12, A22), _add(F, B21, B22))
    C11 = _add(F, _sub(F, _add(F, M1, M4), M5), M7)
    C12 = _add(F, M3, M5)
    C21 = _add(F, M2, M4)
    C22 = _add(F, _add(F, _sub(F, M1, M2), M3), M6)
    return [a + b for a, b in zip(C11, C12)] + [a + b for a, b in zip(C21, C22)]


def _peeled(F, A, B, n, cutoff, counter):
    # split off the last row/column so the leading block has even size
    m = n - 1
    A11 = [r[:m] for r in A[:m]]
    a12 = [r[m] for r in A[:m]]
    a21, a22 = A[m][:m], A[m][m]
    B11 = [r[:m] for r in B[:m]]
    b12 = [r[m] for r in B[:m]]
    b21, b22 = B[m][:m], B[m][m]

    C11 = _strassen(F, A11, B11, m, cutoff, counter)
    C11 = [F.vadd(row, F.vscale(x, b21)) for row, x in zip(C11, a12)]
    c12 = [F.add(F.dot(row, b12), F.mul(x, b22)) for row, x in zip(A11, a12)]
    cols = list(zip(*B11))
    c21 = F.vadd([F.dot(a21, col) for col in cols], F.vscale(a22, b21))
    c22 = F.add(F.dot(a21, b12), F.mul(a22, b22))
    _tick(counter, 3 * m * m + 3 * m + 1)
    return [row + [c] for row, c in zip(C11, c12)] + [c21 + [c22]]


def fast_mult_seqmx(A, B, cutoff=DEFAULT_CUTOFF, counter=None):
    """Strassen product; sizes at or below ``cutoff`` use the naive product."""
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    n = _square_pair(A, B)
    rows = _strassen(A.field, [list(r) for r in A.rows], [list(r) for r in B.rows], n, cutoff, counter)
    return SeqMatrix(A.field, rows)


def strassen_count(n, cutoff=DEFAULT_CUTOFF):
    """Closed-form scalar multiplication count of :func:`fast_mult_seqmx`."""
    if n <= cutoff:
        return n ** 3
    if n % 2:
        m = n - 1
        return strassen_count(m, cutoff) + 3 * m * m + 3 * m + 1
    return 7 * strassen_count(n // 2, cutoff)
