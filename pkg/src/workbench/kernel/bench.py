"""Wall time and scalar-multiplication counts for the kernel routines."""

import random
import time

from .inverse import cfast_invmx, invmx
from .matrices import seqmx_of_mx
from .products import DEFAULT_CUTOFF, MulCounter, fast_mult_seqmx, mul_seqmx
from .sampling import random_matrix, random_unitriangular


def run_bench(F, size, cutoff=DEFAULT_CUTOFF, seed=0):
    rng = random.Random(seed)
    M = random_unitriangular(F, size, rng)
    A = seqmx_of_mx(random_matrix(F, size, rng))
    B = seqmx_of_mx(random_matrix(F, size, rng))
    S = seqmx_of_mx(M)
    jobs = [
        ("cfast_invmx", lambda c: cfast_invmx(S, counter=c)),
        ("invmx", lambda c: invmx(M, counter=c)),
        ("mul_seqmx", lambda c: mul_seqmx(A, B, counter=c)),
        ("fast_mult_seqmx", lambda c: fast_mult_seqmx(A, B, cutoff=cutoff, counter=c)),
    ]
    rows = []
    for name, fn in jobs:
        counter = MulCounter()
        t0 = time.perf_counter()
        fn(counter)
        rows.append({"op": name, "seconds": time.perf_counter() - t0, "mults": counter.count})
    return rows
