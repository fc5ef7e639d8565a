from .elimination import det_mx, det_seqmx, rank_elim_seqmx, rank_mx
from .fields import GF, QQ, Field, PrimeField, RationalField, field_from_json
from .inverse import cfast_invmx, fast_invmx, invmx
from .io import dumps_matrix, loads_matrix, matrix_from_json, matrix_to_json
from .matrices import (AbstractMatrix, Block, SeqMatrix, block_compose,
                       block_decompose, is_unitriangular, mx_of_seqmx,
                       seqmx_of_mx)
from .products import (DEFAULT_CUTOFF, MulCounter, fast_mult_seqmx,
                       mul_seqmx, mulmx, mulmx_vec, strassen_count)

__all__ = [
    "AbstractMatrix", "Block", "DEFAULT_CUTOFF", "Field", "GF", "MulCounter",
    "PrimeField", "QQ", "RationalField", "SeqMatrix", "block_compose",
    "block_decompose", "cfast_invmx", "det_mx", "det_seqmx", "dumps_matrix",
    "fast_invmx", "fast_mult_seqmx", "field_from_json", "invmx",
    "is_unitriangular", "loads_matrix", "matrix_from_json", "matrix_to_json",
    "mul_seqmx", "mulmx", "mulmx_vec", "mx_of_seqmx", "rank_elim_seqmx",
    "rank_mx", "seqmx_of_mx", "strassen_count",
]
