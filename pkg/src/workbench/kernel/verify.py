"""Executable versions of the refinement lemmas.

Each check returns a ``{name: bool}`` mapping so that callers (the CLI,
the test-suite) can tabulate which invariant failed on which input.
"""

import random
from dataclasses import dataclass, field

from .elimination import det_mx, det_seqmx, rank_elim_seqmx, rank_mx
from .inverse import cfast_invmx, fast_invmx, invmx
from .matrices import (AbstractMatrix, is_unitriangular, mx_of_seqmx,
                       seqmx_of_mx)
from .products import fast_mult_seqmx, mul_seqmx, mulmx
from .sampling import random_matrix, random_unitriangular

CUTOFFS = (1, 2, 32, 64)

UNITRIANGULAR_CHECKS = (
    "refinement_equation",
    "fast_equals_invmx",
    "inverse_correct",
    "group_closure",
    "det_is_one",
)
GENERAL_CHECKS = (
    "translation_mult",
    "translation_det",
    "translation_rank",
    "strassen_equals_naive",
    "morphism_roundtrip",
    "scalars_canonical",
)


def _canonical(M):
    return all(M.field.is_canonical(x) for x in M.entries)


def check_unitriangular(M):
    I = AbstractMatrix.identity(M.field, M.n)
    inv = fast_invmx(M)
    S = seqmx_of_mx(M)
    return {
        "refinement_equation": seqmx_of_mx(inv) == cfast_invmx(S),
        "fast_equals_invmx": inv == invmx(M),
        "inverse_correct": mulmx(M, inv) == I and mulmx(inv, M) == I,
        "group_closure": is_unitriangular(inv) and fast_invmx(inv) == M,
        "det_is_one": det_mx(M) == M.field.one and det_seqmx(S) == M.field.one,
        "scalars_canonical": _canonical(inv),
    }


def check_general(A, B, cutoff=64):
    SA, SB = seqmx_of_mx(A), seqmx_of_mx(B)
    fast = fast_mult_seqmx(SA, SB, cutoff=cutoff)
    return {
        "translation_mult": seqmx_of_mx(mulmx(A, B)) == fast,
        "translation_det": det_seqmx(SA) == det_mx(A),
        "translation_rank": rank_elim_seqmx(SA) == rank_mx(A),
        "strassen_equals_naive": fast == mul_seqmx(SA, SB),
        "morphism_roundtrip": mx_of_seqmx(A.n, SA) == A,
        "scalars_canonical": _canonical(mulmx(A, B)) and all(
            A.field.is_canonical(x) for r in fast.rows for x in r),
    }


@dataclass
class VerifyReport:
    passed: dict = field(default_factory=dict)
    total: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, results, context):
        for name, ok in results.items():
            self.total[name] = self.total.get(name, 0) + 1
            self.passed[name] = self.passed.get(name, 0) + int(bool(ok))
            if not ok:
                self.failures.append((name, context))

    @property
    def ok(self):
        return not self.failures

    def rows(self):
        return [(name, self.passed[name], self.total[name]) for name in sorted(self.total)]


def verify(F, max_size=16, cases=100, seed=0):
    """Run every kernel invariant on ``cases`` random unitriangular
    matrices and ``cases`` random general pairs with sizes 0..max_size."""
    rng = random.Random(seed)
    report = VerifyReport()
    for case in range(cases):
        n = rng.randint(0, max_size)
        M = random_unitriangular(F, n, rng)
        report.record(check_unitriangular(M), ("unitriangular", case, n))

        n = rng.randint(0, max_size)
        rank = rng.choice([None, rng.randint(0, n)])
        A = random_matrix(F, n, rng, rank=rank)
        B = random_matrix(F, n, rng)
        cutoff = rng.choice(CUTOFFS)
        report.record(check_general(A, B, cutoff), ("general", case, n, cutoff))
    return report
