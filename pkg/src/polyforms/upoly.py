"""Dense univariate polynomials over a prime field.

Coefficients are stored as a tuple of canonical residues in ascending degree,
with no trailing zeros; the zero polynomial is the empty tuple and has degree
:data:`NEG_INF`.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Sequence

from .gfp import FieldElement, PrimeField

KARATSUBA_THRESHOLD = 32


@total_ordering
class _NegInf:
    """Degree of the zero polynomial: below every integer, absorbing under ``+``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("NEG_INF")

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    def __neg__(self):
        raise ArithmeticError("-NEG_INF is not a degree")

    def __reduce__(self):
        return (_NegInf, ())


NEG_INF = _NegInf()


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _schoolbook(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [v % p for v in out]


def _karatsuba(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if min(len(a), len(b)) <= KARATSUBA_THRESHOLD:
        return _schoolbook(a, b, p)
    h = max(len(a), len(b)) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _karatsuba(a0, b0, p) if a0 and b0 else []
    z2 = _karatsuba(a1, b1, p) if a1 and b1 else []
    sa = _addlists(a0, a1, p)
    sb = _addlists(b0, b1, p)
    z1 = _karatsuba(sa, sb, p) if sa and sb else []
    out = [0] * (len(a) + len(b) - 1)
    for i, v in enumerate(z0):
        out[i] += v
        out[i + h] -= v
    for i, v in enumerate(z2):
        out[i + 2 * h] += v
        out[i + h] -= v
    for i, v in enumerate(z1):
        out[i + h] += v
    return [v % p for v in out]


def _addlists(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return out


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs: Iterable[int] = ()):
        p = field.p
        c = [int(x) % p for x in coeffs]
        self.field = field
        self.coeffs = tuple(_trim(c))

    @classmethod
    def _raw(cls, field: PrimeField, coeffs: tuple) -> "Poly":
        # coeffs must already be canonical and trimmed
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @classmethod
    def one(cls, field):
        return cls._raw(field, (1,))

    @classmethod
    def monomial(cls, field, k: int, c: int = 1):
        return cls(field, [0] * k + [c])

    @classmethod
    def x(cls, field):
        return cls.monomial(field, 1)

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def degree(self):
        return self.deg

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly(self.field, [other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.coeffs))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return Poly._raw(self.field, (other.value,) if other.value else ())
        if isinstance(other, int):
            return Poly(self.field, [other])
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return Poly._raw(self.field, tuple(_trim(_addlists(self.coeffs, other.coeffs, self.field.p))))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return Poly._raw(self.field, tuple(-c % p for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly._raw(self.field, ())
        p = self.field.p
        return Poly._raw(self.field, tuple(_trim(_karatsuba(self.coeffs, other.coeffs, p))))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.one(self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        return poly_divrem(self, self._coerce(other))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def scale(self, c: int) -> "Poly":
        return Poly(self.field, [c * v for v in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by ``x**k`` (k >= 0)."""
        if not self.coeffs:
            return self
        return Poly._raw(self.field, (0,) * k + self.coeffs)

    def truncate(self, k: int) -> "Poly":
        return Poly._raw(self.field, tuple(_trim(list(self.coeffs[: max(k, 0)]))))

    def monic(self) -> "Poly":
        return self.scale(self.field.inv(self.lc))

    def __call__(self, a: int) -> int:
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % p
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(terms))


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_sub(a: Poly, b: Poly) -> Poly:
    return a - b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division: ``a = q*b + r`` with ``deg r < deg b``."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    if not b.coeffs:
        raise ZeroDivisionError("division by zero")
    field = a.field
    p = field.p
    db = len(b.coeffs) - 1
    r = list(a.coeffs)
    if len(r) <= db:
        return Poly.zero(field), a
    iv = pow(b.coeffs[-1], -1, p)
    q = [0] * (len(r) - db)
    bc = b.coeffs
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * iv % p
        if c:
            q[k - db] = c
            for i in range(db + 1):
                r[k - db + i] = (r[k - db + i] - c * bc[i]) % p
    return Poly(field, q), Poly(field, r[:db])


def poly_mul_trunc(a: Poly, b: Poly, k: int) -> Poly:
    """``(a*b) mod x**k``, computing only the needed coefficients."""
    if k < 0:
        raise ValueError("truncation order must be nonnegative")
    if a.field != b.field:
        raise ValueError("field mismatch")
    ac, bc = a.coeffs[:k], b.coeffs[:k]
    out = [0] * min(k, max(len(ac) + len(bc) - 1, 0))
    for i, x in enumerate(ac):
        if x:
            for j in range(min(len(bc), k - i)):
                out[i + j] += x * bc[j]
    return Poly(a.field, out)


def poly_shift_reverse(a: Poly, k: int) -> Poly:
    """``x**k * a(1/x)``; requires ``k >= deg a``."""
    if a.coeffs and k < len(a.coeffs) - 1:
        raise ValueError("reversal window too small")
    if not a.coeffs:
        return a
    padded = list(a.coeffs) + [0] * (k + 1 - len(a.coeffs))
    return Poly(a.field, reversed(padded))


def poly_exact_div(a: Poly, b: Poly) -> Poly:
    q, r = poly_divrem(a, b)
    if r.coeffs:
        raise ArithmeticError("inexact polynomial division")
    return q
