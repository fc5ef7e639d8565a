"""Matrix interchange format.

``{"field": "q" | {"gfp": p}, "n": int, "rows": [[scalar, ...], ...]}``;
rational scalars are strings such as ``"-3/4"`` or ``"5"``, GF(p)
scalars are integers in ``[0, p)``.
"""

import json

from ..errors import MatrixFormatError, ShapeMismatch
from .fields import field_from_json
from .matrices import AbstractMatrix


def matrix_to_json(M):
    return {
        "field": M.field.to_json(),
        "n": M.n,
        "rows": [[M.field.format(x) for x in row] for row in M.rows()],
    }


def matrix_from_json(obj):
    if not isinstance(obj, dict) or not {"field", "n", "rows"} <= set(obj):
        raise MatrixFormatError("matrix JSON needs 'field', 'n' and 'rows'")
    F = field_from_json(obj["field"])
    n, rows = obj["n"], obj["rows"]
    if not isinstance(n, int) or n < 0 or not isinstance(rows, list):
        raise MatrixFormatError("'n' must be a non-negative integer and 'rows' a list")
    if len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise MatrixFormatError(f"'rows' is not {n}x{n}")
    try:
        return AbstractMatrix.from_rows(F, [[F.parse(x) for x in r] for r in rows])
    except ShapeMismatch as exc:
        raise MatrixFormatError(str(exc)) from exc


def dumps_matrix(M):
    return json.dumps(matrix_to_json(M))


def loads_matrix(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    return matrix_from_json(obj)
