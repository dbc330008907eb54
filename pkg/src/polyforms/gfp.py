"""Prime field arithmetic and dense linear algebra over F_p.

Field elements are canonical residues in ``[0, p)``.  The matrix helpers at the
bottom work on plain nested lists of ints (constant matrices such as leading
matrices and evaluations); they are deliberately unoptimised Gaussian
elimination.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_MODULUS = 1 << 62

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of residues modulo a prime ``p`` with ``2 <= p < 2**62``."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p < MAX_MODULUS:
            raise ValueError(f"modulus out of range: {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def order(self) -> int:
        return self.p

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1 % self.p, self)

    def inv(self, a: int) -> int:
        """Inverse of the residue ``a`` as a plain int."""
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("division by zero")
        return pow(a, -1, self.p)

    def elements(self):
        return (FieldElement(v, self) for v in range(self.p))


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.field.p}")

    def _check(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("field mismatch")
        return other.value

    def __add__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value + b) % self.field.p, self.field)

    def __sub__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value - b) % self.field.p, self.field)

    def __mul__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * b % self.field.p, self.field)

    def __truediv__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(self.field.inv(b), self.field)

    def __neg__(self):
        return FieldElement(-self.value % self.field.p, self.field)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"

    def inv(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


# ---------------------------------------------------------------------------
# constant matrices (lists of lists of ints) over F_p


def row_echelon(rows, p: int):
    """Reduced row echelon form of a constant matrix.

    Returns ``(E, pivots)`` where ``E`` is a new list of rows and ``pivots`` the
    column rank profile (pivot column of each nonzero row of ``E``).
    """
    E = [[x % p for x in row] for row in rows]
    ncols = len(E[0]) if E else 0
    pivots = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(E)) if E[i][c]), None)
        if k is None:
            continue
        E[r], E[k] = E[k], E[r]
        iv = pow(E[r][c], -1, p)
        E[r] = [x * iv % p for x in E[r]]
        for i in range(len(E)):
            if i != r and E[i][c]:
                f = E[i][c]
                E[i] = [(x - f * y) % p for x, y in zip(E[i], E[r])]
        pivots.append(c)
        r += 1
        if r == len(E):
            break
    return E, pivots


def rank(rows, p: int) -> int:
    return len(row_echelon(rows, p)[1])


def column_rank_profile(rows, p: int) -> tuple[int, ...]:
    return tuple(row_echelon(rows, p)[1])


def inverse(rows, p: int):
    """Inverse of a square constant matrix; raises ``ZeroDivisionError`` if singular."""
    n = len(rows)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    E, piv = row_echelon(aug, p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in E]


def left_nullspace(rows, p: int):
    """Basis (list of row vectors) of ``{v : v * M = 0}`` for a constant matrix M."""
    m = len(rows)
    if m == 0:
        return []
    ncols = len(rows[0])
    # v M = 0  <=>  M^T v^T = 0; solve via RREF of M^T.
    T = [[rows[i][j] for i in range(m)] for j in range(ncols)]
    E, piv = row_echelon(T, p) if ncols else ([], [])
    free = [c for c in range(m) if c not in piv]
    basis = []
    for f in free:
        v = [0] * m
        v[f] = 1
        for r, c in enumerate(piv):
            v[c] = -E[r][f] % p
        basis.append(v)
    return basis
