"""Exact scalar fields: the rationals and prime fields GF(p).

Elements are plain values so that matrix loops stay cheap: rationals
are ``gmpy2.mpq`` (always reduced, positive denominator) and GF(p)
residues are ``int`` in ``[0, p)``. The field object owns the
arithmetic; matrices carry a reference to their field.
"""

import re
from math import gcd
from operator import mul

from gmpy2 import mpq

from ..errors import MatrixFormatError, NonPrimeModulus


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class Field:
    """Common interface. Subclasses implement the scalar operations."""

    zero = None
    one = None

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, k):
        raise NotImplementedError

    def is_canonical(self, a):
        raise NotImplementedError

    # row helpers, used by every elimination and product loop

    def dot(self, u, v):
        raise NotImplementedError

    def vadd(self, u, v):
        raise NotImplementedError

    def vsub(self, u, v):
        raise NotImplementedError

    def vscale(self, c, u):
        raise NotImplementedError

    def vaxpy(self, u, c, v):
        """Return ``u - c*v`` elementwise."""
        raise NotImplementedError

    # interchange

    def parse(self, token):
        raise NotImplementedError

    def format(self, a):
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError


class RationalField(Field):
    name = "Q"

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def from_int(self, k):
        return mpq(k)

    def from_ratio(self, num, den):
        return mpq(num, den)

    def is_canonical(self, a):
        return (type(a) is type(self.zero) and a.denominator >= 1
                and gcd(abs(int(a.numerator)), int(a.denominator)) == 1)

    def dot(self, u, v):
        return sum(map(mul, u, v), self.zero)

    def vadd(self, u, v):
        return [x + y for x, y in zip(u, v)]

    def vsub(self, u, v):
        return [x - y for x, y in zip(u, v)]

    def vscale(self, c, u):
        return [c * x for x in u]

    def vaxpy(self, u, c, v):
        return [x - c * y for x, y in zip(u, v)]

    def parse(self, token):
        if isinstance(token, int) and not isinstance(token, bool):
            return mpq(token)
        if not isinstance(token, str) or not _RATIONAL_RE.match(token.strip().replace("−", "-")):
            raise MatrixFormatError(f"bad rational scalar {token!r}")
        try:
            return mpq(token.strip().replace("−", "-"))
        except (ValueError, ZeroDivisionError) as exc:
            raise MatrixFormatError(f"bad rational scalar {token!r}") from exc

    def format(self, a):
        return str(a)

    def to_json(self):
        return "q"


QQ = RationalField()


def _is_prime(p):
    from sympy import isprime
    return isprime(p)


class PrimeField(Field):
    """GF(p) for a prime ``p``; composite moduli are rejected."""

    def __init__(self, p):
        if isinstance(p, bool) or not isinstance(p, int) or p < 2 or not _is_prime(p):
            raise NonPrimeModulus(f"modulus {p!r} is not prime")
        self.p = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def from_int(self, k):
        return k % self.p

    def is_canonical(self, a):
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.p

    def dot(self, u, v):
        return sum(map(mul, u, v)) % self.p

    def vadd(self, u, v):
        p = self.p
        return [(x + y) % p for x, y in zip(u, v)]

    def vsub(self, u, v):
        p = self.p
        return [(x - y) % p for x, y in zip(u, v)]

    def vscale(self, c, u):
        p = self.p
        return [c * x % p for x in u]

    def vaxpy(self, u, c, v):
        p = self.p
        return [(x - c * y) % p for x, y in zip(u, v)]

    def parse(self, token):
        if isinstance(token, bool) or not isinstance(token, int):
            raise MatrixFormatError(f"GF({self.p}) scalar must be an integer, got {token!r}")
        if not 0 <= token < self.p:
            raise MatrixFormatError(f"GF({self.p}) scalar {token} outside [0, {self.p})")
        return token

    def format(self, a):
        return a

    def to_json(self):
        return {"gfp": self.p}


def GF(p):
    return PrimeField(p)


def field_from_json(spec):
    """Decode the ``"field"`` member of the matrix interchange format."""
    if spec == "q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"gfp"}:
        return PrimeField(spec["gfp"])
    raise MatrixFormatError(f"unknown field spec {spec!r}")
