import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from workbench.errors import DimensionMismatch
from workbench.kernel import (GF, QQ, AbstractMatrix, MulCounter, SeqMatrix,
                              fast_mult_seqmx, mul_seqmx, mulmx, seqmx_of_mx,
                              strassen_count)
from workbench.kernel.sampling import random_matrix


def Q(rows):
    return AbstractMatrix.from_rows(QQ, [[QQ.from_int(x) for x in r] for r in rows])


def plain_product(A, B, p):
    # oracle: textbook triple loop on plain ints
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)]


def test_mulmx_examples():
    A = Q([[1, 2], [3, 4]])
    assert mulmx(A, Q([[0, 1], [1, 0]])) == Q([[2, 1], [4, 3]])
    assert mulmx(AbstractMatrix.identity(QQ, 2), A) == A
    assert mulmx(A, AbstractMatrix.zeros(QQ, 2)) == AbstractMatrix.zeros(QQ, 2)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mulmx(AbstractMatrix.identity(QQ, 2), AbstractMatrix.identity(QQ, 3))
    with pytest.raises(DimensionMismatch):
        mulmx(AbstractMatrix.identity(QQ, 2), AbstractMatrix.identity(GF(5), 2))
    with pytest.raises(DimensionMismatch):
        mul_seqmx(SeqMatrix(QQ, [[1]]), SeqMatrix(QQ, [[1, 0], [0, 1]]))
    with pytest.raises(DimensionMismatch):
        fast_mult_seqmx(SeqMatrix(QQ, [[1, 2]]), SeqMatrix(QQ, [[1, 2]]))


def test_one_by_one():
    a, b = SeqMatrix(GF(101), [[7]]), SeqMatrix(GF(101), [[9]])
    assert fast_mult_seqmx(a, b).to_lists() == [[63]]
    assert mul_seqmx(SeqMatrix(QQ, [[1]]), SeqMatrix(QQ, [[5]])).to_lists() == [[5]]


def test_mul_seqmx_matches_abstract_and_plain_oracle(rng):
    F = GF(101)
    A, B = random_matrix(F, 8, rng), random_matrix(F, 8, rng)
    got = mul_seqmx(seqmx_of_mx(A), seqmx_of_mx(B))
    assert got == seqmx_of_mx(mulmx(A, B))
    assert got.to_lists() == plain_product(seqmx_of_mx(A).to_lists(), seqmx_of_mx(B).to_lists(), 101)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 40), st.sampled_from([1, 2, 3, 32, 64]), st.integers(0, 2**32))
def test_strassen_equals_naive(n, cutoff, seed):
    F = GF(101)
    r = random.Random(seed)
    A = seqmx_of_mx(random_matrix(F, n, r))
    B = seqmx_of_mx(random_matrix(F, n, r))
    c = MulCounter()
    assert fast_mult_seqmx(A, B, cutoff=cutoff, counter=c) == mul_seqmx(A, B)
    assert c.count == strassen_count(n, cutoff)


def test_strassen_over_q(rng):
    A = seqmx_of_mx(random_matrix(QQ, 13, rng))
    B = seqmx_of_mx(random_matrix(QQ, 13, rng))
    assert fast_mult_seqmx(A, B, cutoff=2) == mul_seqmx(A, B)


def test_cutoff_above_size_is_naive(rng):
    F = GF(101)
    A = seqmx_of_mx(random_matrix(F, 10, rng))
    c1, c2 = MulCounter(), MulCounter()
    assert fast_mult_seqmx(A, A, cutoff=64, counter=c1) == mul_seqmx(A, A, counter=c2)
    assert c1.count == c2.count == 1000


def strassen_recurrence(n, cutoff):
    # independent restatement: 7 half-size products, plus peeling for odd n
    if n <= cutoff:
        return n ** 3
    if n % 2:
        m = n - 1
        return strassen_recurrence(m, cutoff) + 3 * m * m + 3 * m + 1
    return 7 * strassen_recurrence(n // 2, cutoff)


@pytest.mark.parametrize("n,cutoff", [(512, 64), (129, 32), (100, 8), (7, 1), (0, 64)])
def test_strassen_count_closed_form(n, cutoff):
    assert strassen_count(n, cutoff) == strassen_recurrence(n, cutoff)


def test_count_at_512():
    assert strassen_count(512, 64) == 343 * 64 ** 3 == 89_915_392 < 512 ** 3


def test_bad_cutoff():
    with pytest.raises(ValueError):
        fast_mult_seqmx(SeqMatrix(QQ, [[1]]), SeqMatrix(QQ, [[1]]), cutoff=0)
