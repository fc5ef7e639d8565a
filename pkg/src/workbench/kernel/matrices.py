"""The two matrix representations and the morphisms between them.

``AbstractMatrix`` is the proof-side object: a square matrix indexed by
its dimension, stored densely row-major and accessed by ``M[i, j]``.
``SeqMatrix`` is the executable side: a list of rows that algorithms
walk by head/tail splitting.
"""

from dataclasses import dataclass

from ..errors import EmptyMatrix, NotSquare, ShapeMismatch


@dataclass(frozen=True)
class AbstractMatrix:
    field: object
    n: int
    entries: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ShapeMismatch(f"negative dimension {self.n}")
        if len(self.entries) != self.n * self.n:
            raise ShapeMismatch(f"{len(self.entries)} entries for a {self.n}x{self.n} matrix")

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(ij)
        return self.entries[i * self.n + j]

    def row(self, i):
        return self.entries[i * self.n:(i + 1) * self.n]

    def rows(self):
        return [list(self.row(i)) for i in range(self.n)]

    @classmethod
    def from_rows(cls, field, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ShapeMismatch("rows do not form a square matrix")
        return cls(field, n, tuple(x for r in rows for x in r))

    @classmethod
    def from_function(cls, field, n, fn):
        return cls(field, n, tuple(fn(i, j) for i in range(n) for j in range(n)))

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one, field.zero
        return cls.from_function(field, n, lambda i, j: one if i == j else zero)

    @classmethod
    def zeros(cls, field, n):
        return cls(field, n, (field.zero,) * (n * n))

    def __repr__(self):
        return f"AbstractMatrix({self.field!r}, n={self.n}, rows={self.rows()!r})"


@dataclass(frozen=True)
class SeqMatrix:
    """List-of-rows matrix. Rows are tuples; every row has the same length."""

    field: object
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("ragged rows")

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def is_square(self):
        r, c = self.shape
        return r == c

    def to_lists(self):
        return [list(r) for r in self.rows]

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[field.one if i == j else field.zero for j in range(n)]
                           for i in range(n)])


def require_square(S):
    if not S.is_square():
        raise NotSquare(f"{S.shape[0]}x{S.shape[1]} matrix is not square")
    return len(S.rows)


@dataclass(frozen=True)
class Block:
    top_left: object
    top_right: tuple
    bottom_left: tuple
    bottom_right: AbstractMatrix


def is_unitriangular(M):
    """Lower-unitriangular test: unit diagonal and zeros strictly above it."""
    one, zero = M.field.one, M.field.zero
    for i in range(M.n):
        if M[i, i] != one:
            return False
        for j in range(i + 1, M.n):
            if M[i, j] != zero:
                return False
    return True


def block_decompose(M):
    if M.n == 0:
        raise EmptyMatrix("cannot split a 0x0 matrix")
    n = M.n
    rest = range(1, n)
    return Block(
        top_left=M[0, 0],
        top_right=tuple(M[0, j] for j in rest),
        bottom_left=tuple(M[i, 0] for i in rest),
        bottom_right=AbstractMatrix.from_function(M.field, n - 1, lambda i, j: M[i + 1, j + 1]),
    )


def block_compose(field, blk):
    N = blk.bottom_right
    n = N.n + 1
    if len(blk.top_right) != N.n or len(blk.bottom_left) != N.n:
        raise ShapeMismatch("block borders do not match the trailing submatrix")

    def entry(i, j):
        if i == 0:
            return blk.top_left if j == 0 else blk.top_right[j - 1]
        if j == 0:
            return blk.bottom_left[i - 1]
        return N[i - 1, j - 1]

    return AbstractMatrix.from_function(field, n, entry)


def seqmx_of_mx(M):
    return SeqMatrix(M.field, [M.row(i) for i in range(M.n)])


def mx_of_seqmx(n, S):
    if len(S.rows) != n or any(len(r) != n for r in S.rows):
        r, c = S.shape
        raise ShapeMismatch(f"expected {n}x{n}, got {r}x{c}")
    return AbstractMatrix(S.field, n, tuple(x for r in S.rows for x in r))
