"""Polynomial matrices over F_p[x] with shifted degree bookkeeping.

A :class:`PolyMatrix` stores its entries as an ``(m, n, L)`` coefficient array
(ascending degree along the last axis, trailing zero planes trimmed).  Shifts
are plain integer tuples; the diagonal ``X^s`` is never formed, every shifted
quantity is computed as ``deg + s[j]``.

Column indices are 0-based in this API.  A zero row has pivot index ``None``
and degree :data:`~polyforms.upoly.NEG_INF`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import gfp
from .gfp import PrimeField
from .upoly import NEG_INF, Poly

# Vectorised stand-in for NEG_INF inside array code; never escapes this package.
NEG = -(1 << 40)

Shift = tuple


def dtype_for(p: int):
    # int64 is safe while inner products of length < 2**14 of residues < 2**24 fit
    return np.int64 if p < (1 << 24) else object


def _deg_out(v) -> object:
    return NEG_INF if v <= NEG // 2 else int(v)


def amplitude(s: Sequence[int]) -> int:
    return max(s) - min(s) if len(s) else 0


def _as_shift(s, n: int) -> np.ndarray:
    if s is None:
        return np.zeros(n, dtype=np.int64)
    if len(s) != n:
        raise ValueError(f"shift has length {len(s)}, expected {n}")
    return np.asarray([int(v) for v in s], dtype=np.int64)


class PolyMatrix:
    """Dense ``m x n`` matrix over ``F_p[x]``.  Treat instances as immutable."""

    __slots__ = ("field", "coeffs")
    __hash__ = None

    def __init__(self, field: PrimeField, coeffs: np.ndarray):
        p = field.p
        arr = np.asarray(coeffs)
        dt = dtype_for(p)
        if arr.dtype != dt:
            arr = arr.astype(dt)
        if arr.ndim != 3:
            raise ValueError("coefficient array must have shape (m, n, L)")
        arr = arr % p  # always a fresh array
        L = arr.shape[2]
        if L and arr.size:
            nz = (arr != 0).reshape(-1, L).any(axis=0)
            L = int(np.flatnonzero(nz)[-1]) + 1 if nz.any() else 0
        elif not arr.size:
            L = 0
        arr = arr[:, :, :L]
        arr.setflags(write=False)
        self.field = field
        self.coeffs = arr

    @classmethod
    def _canonical(cls, field: PrimeField, arr: np.ndarray) -> "PolyMatrix":
        # arr already holds reduced residues of the right dtype; only trim
        L = arr.shape[2]
        if L and arr.size:
            nz = arr.reshape(-1, L).any(axis=0)
            L = int(nz.nonzero()[0][-1]) + 1 if nz.any() else 0
        elif not arr.size:
            L = 0
        arr = arr[:, :, :L]
        if arr.flags.writeable:
            arr = arr.copy() if arr.base is not None else arr
            arr.setflags(write=False)
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = arr
        return obj

    # -- construction -------------------------------------------------------

    @classmethod
    def from_entries(cls, field: PrimeField, rows, ncols: Optional[int] = None) -> "PolyMatrix":
        """Build from nested rows whose entries are ``Poly``, ints, or coefficient lists."""
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if m else (ncols or 0)
        if any(len(r) != n for r in rows):
            raise ValueError("ragged rows")
        lists = [[_coeff_list(e, field) for e in r] for r in rows]
        L = max((len(c) for r in lists for c in r), default=0)
        arr = np.zeros((m, n, L), dtype=dtype_for(field.p))
        for i, r in enumerate(lists):
            for j, c in enumerate(r):
                if c:
                    arr[i, j, : len(c)] = c
        return cls(field, arr)

    @classmethod
    def zeros(cls, field, m: int, n: int) -> "PolyMatrix":
        return cls(field, np.zeros((m, n, 0), dtype=dtype_for(field.p)))

    @classmethod
    def identity(cls, field, n: int) -> "PolyMatrix":
        arr = np.zeros((n, n, 1), dtype=dtype_for(field.p))
        arr[range(n), range(n), 0] = 1
        return cls(field, arr)

    @classmethod
    def constant(cls, field, rows) -> "PolyMatrix":
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if m else 0
        arr = np.zeros((m, n, 1), dtype=dtype_for(field.p))
        if m and n:
            arr[:, :, 0] = np.array(rows, dtype=dtype_for(field.p))
        return cls(field, arr)

    # -- basic accessors ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[0], self.coeffs.shape[1]

    @property
    def nrows(self) -> int:
        return self.coeffs.shape[0]

    @property
    def ncols(self) -> int:
        return self.coeffs.shape[1]

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return Poly._raw(self.field, _trimmed_tuple(self.coeffs[i, j]))

    def entries(self) -> list[list[Poly]]:
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def to_lists(self) -> list[list[list[int]]]:
        return [[list(self[i, j].coeffs) for j in range(self.ncols)] for i in range(self.nrows)]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.coeffs.shape == other.coeffs.shape
            and bool(np.all(self.coeffs == other.coeffs))
        )

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in row) for row in self.entries())
        return f"PolyMatrix[{self.field!r}, {self.nrows}x{self.ncols}]({body})"

    def is_zero(self) -> bool:
        return self.coeffs.shape[2] == 0

    @property
    def degree(self):
        return self.coeffs.shape[2] - 1 if self.coeffs.shape[2] else NEG_INF

    def entry_degrees(self) -> np.ndarray:
        """``(m, n)`` int array of entry degrees, with ``NEG`` for zero entries."""
        return entry_degrees(self.coeffs)

    def row_degrees(self, s=None) -> tuple:
        return rdeg_shifted(self, s)

    def column_degrees(self, s=None) -> tuple:
        return cdeg_shifted(self, s)

    def zero_rows(self) -> list[int]:
        if self.coeffs.shape[2] == 0:
            return list(range(self.nrows))
        nz = (self.coeffs != 0).any(axis=(1, 2))
        return [i for i in range(self.nrows) if not nz[i]]

    def coefficient(self, k: int) -> list[list[int]]:
        if 0 <= k < self.coeffs.shape[2]:
            return [[int(v) for v in row] for row in self.coeffs[:, :, k]]
        return [[0] * self.ncols for _ in range(self.nrows)]

    def evaluate(self, a: int) -> list[list[int]]:
        p = self.field.p
        return [[self[i, j](a % p) for j in range(self.ncols)] for i in range(self.nrows)]

    # -- structural ---------------------------------------------------------

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix._canonical(self.field, self.coeffs.transpose(1, 0, 2))

    T = property(transpose)

    def rows(self, idx: Iterable[int]) -> "PolyMatrix":
        idx = list(idx)
        for i in idx:
            if not 0 <= i < self.nrows:
                raise IndexError(f"row index {i} out of range")
        return PolyMatrix._canonical(self.field, np.take(self.coeffs, np.asarray(idx, dtype=np.intp), axis=0))

    def columns(self, idx: Iterable[int]) -> "PolyMatrix":
        return submatrix_columns(self, idx)

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        _same_field(self, other)
        if self.ncols != other.ncols:
            raise ValueError("dimension mismatch")
        return PolyMatrix._canonical(self.field, np.concatenate(_pad_same(self.coeffs, other.coeffs), axis=0))

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        _same_field(self, other)
        if self.nrows != other.nrows:
            raise ValueError("dimension mismatch")
        return PolyMatrix._canonical(self.field, np.concatenate(_pad_same(self.coeffs, other.coeffs), axis=1))

    def truncate(self, k: int) -> "PolyMatrix":
        return PolyMatrix._canonical(self.field, self.coeffs[:, :, : max(k, 0)])

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        _same_field(self, other)
        if self.shape != other.shape:
            raise ValueError("dimension mismatch")
        a, b = _pad_same(self.coeffs, other.coeffs)
        return PolyMatrix(self.field, a + b)

    def __sub__(self, other):
        _same_field(self, other)
        if self.shape != other.shape:
            raise ValueError("dimension mismatch")
        a, b = _pad_same(self.coeffs, other.coeffs)
        return PolyMatrix(self.field, a - b)

    def __neg__(self):
        return PolyMatrix(self.field, -self.coeffs)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def scale(self, c: int) -> "PolyMatrix":
        return PolyMatrix(self.field, self.coeffs * (c % self.field.p))


def _coeff_list(e, field) -> list[int]:
    if isinstance(e, Poly):
        if e.field != field:
            raise ValueError("field mismatch")
        return list(e.coeffs)
    if isinstance(e, int):
        return [e % field.p] if e % field.p else []
    return list(Poly(field, e).coeffs)


def _trimmed_tuple(vec) -> tuple:
    nz = np.flatnonzero(vec)
    if not len(nz):
        return ()
    return tuple(int(v) for v in vec[: nz[-1] + 1])


def _same_field(a, b):
    if not isinstance(b, PolyMatrix):
        raise TypeError("expected a PolyMatrix")
    if a.field != b.field:
        raise ValueError("field mismatch")


def _pad_same(a: np.ndarray, b: np.ndarray):
    L = max(a.shape[2], b.shape[2])
    return widen(a, L), widen(b, L)


def widen(a: np.ndarray, L: int) -> np.ndarray:
    """Copy of ``a`` zero-padded (or cut) to length ``L`` in the degree axis."""
    out = np.zeros(a.shape[:2] + (L,), dtype=a.dtype)
    k = min(L, a.shape[2])
    out[:, :, :k] = a[:, :, :k]
    return out


# ---------------------------------------------------------------------------
# degree machinery on raw coefficient arrays


def entry_degrees(arr: np.ndarray) -> np.ndarray:
    m, n, L = arr.shape
    if L == 0 or m == 0 or n == 0:
        return np.full((m, n), NEG, dtype=np.int64)
    nz = arr != 0
    deg = (L - 1 - np.argmax(nz[:, :, ::-1], axis=2)).astype(np.int64)
    deg[~nz.any(axis=2)] = NEG
    return deg


def row_pivots(deg: np.ndarray, s: np.ndarray):
    """Shifted row degrees, pivot indices and pivot degrees from an entry-degree array.

    Zero rows get row degree ``NEG`` and pivot index ``-1``.
    """
    m, n = deg.shape
    if n == 0:
        return (np.full(m, NEG, dtype=np.int64), np.full(m, -1, dtype=np.int64),
                np.full(m, NEG, dtype=np.int64))
    dead = deg == NEG
    sd = deg + s
    sd[dead] = NEG
    rd = sd.max(axis=1)
    piv = n - 1 - (sd[:, ::-1] == rd[:, None]).argmax(axis=1)
    pdeg = deg[np.arange(m), piv]
    zero = rd == NEG
    if zero.any():
        piv[zero] = -1
        pdeg[zero] = NEG
    return rd, piv, pdeg


@dataclass(frozen=True)
class PivotProfile:
    """Row-wise (shifted) pivot data of a polynomial matrix."""

    indices: tuple        # pivot column per row, None for zero rows
    degrees: tuple        # degree of the pivot entry, NEG_INF for zero rows
    row_degrees: tuple    # shifted row degrees, NEG_INF for zero rows


def rdeg_shifted(F: PolyMatrix, s=None) -> tuple:
    s = _as_shift(s, F.ncols)
    rd, _, _ = row_pivots(F.entry_degrees(), s)
    return tuple(_deg_out(v) for v in rd)


def cdeg_shifted(F: PolyMatrix, s=None) -> tuple:
    """Column degrees, shifted by ``s`` indexed over rows."""
    return rdeg_shifted(F.transpose(), s)


def pivot_profile(F: PolyMatrix, s=None) -> PivotProfile:
    s = _as_shift(s, F.ncols)
    rd, piv, pdeg = row_pivots(F.entry_degrees(), s)
    return PivotProfile(
        indices=tuple(None if j < 0 else int(j) for j in piv),
        degrees=tuple(_deg_out(v) for v in pdeg),
        row_degrees=tuple(_deg_out(v) for v in rd),
    )


def pivot_index(F: PolyMatrix, s=None) -> tuple:
    return pivot_profile(F, s).indices


def leading_matrix_shifted(F: PolyMatrix, s=None) -> list[list[int]]:
    s = _as_shift(s, F.ncols)
    deg = F.entry_degrees()
    rd, _, _ = row_pivots(deg, s)
    if np.any(rd == NEG):
        raise ValueError("leading matrix undefined for zero rows")
    m, n = F.shape
    L = F.coeffs.shape[2]
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            k = int(rd[i] - s[j])
            if 0 <= k < L:
                out[i][j] = int(F.coeffs[i, j, k])
    return out


def leading_matrix(F: PolyMatrix) -> list[list[int]]:
    return leading_matrix_shifted(F, None)


# ---------------------------------------------------------------------------
# form predicates


def is_reduced(F: PolyMatrix, s=None) -> bool:
    m, n = F.shape
    if m > n or F.zero_rows():
        return False
    return gfp.rank(leading_matrix_shifted(F, s), F.field.p) == m


def is_weak_popov(F: PolyMatrix, s=None) -> bool:
    prof = pivot_profile(F, s)
    if None in prof.indices:
        return False
    return len(set(prof.indices)) == len(prof.indices)


def is_ordered_weak_popov(F: PolyMatrix, s=None) -> bool:
    prof = pivot_profile(F, s)
    if None in prof.indices:
        return False
    return all(a < b for a, b in zip(prof.indices, prof.indices[1:]))


def is_popov(F: PolyMatrix, s=None) -> bool:
    prof = pivot_profile(F, s)
    if None in prof.indices or not all(a < b for a, b in zip(prof.indices, prof.indices[1:])):
        return False
    deg = F.entry_degrees()
    for i, (j, d) in enumerate(zip(prof.indices, prof.degrees)):
        if int(F.coeffs[i, j, d]) != 1:
            return False
        col = deg[:, j]
        if any(col[k] >= d for k in range(F.nrows) if k != i):
            return False
    return True


def hermite_pivot_index(H: PolyMatrix) -> Optional[tuple]:
    """Column of the first nonzero entry in each row, or None if some row is zero."""
    deg = H.entry_degrees()
    out = []
    for i in range(H.nrows):
        nz = np.flatnonzero(deg[i] != NEG)
        if not len(nz):
            return None
        out.append(int(nz[0]))
    return tuple(out)


def is_hermite(F: PolyMatrix, s=None) -> bool:
    """Hermite (echelon) form test; ``s`` is accepted and ignored."""
    if F.nrows > F.ncols:
        return False
    js = hermite_pivot_index(F)
    if js is None or not all(a < b for a, b in zip(js, js[1:])):
        return False
    deg = F.entry_degrees()
    for i, j in enumerate(js):
        d = deg[i, j]
        if int(F.coeffs[i, j, d]) != 1:
            return False
        if any(deg[k, j] >= d for k in range(i)):
            return False
    return True


# ---------------------------------------------------------------------------
# products, inverses, submatrices


def matmul_arrays(A: np.ndarray, B: np.ndarray, p: int, trunc: Optional[int] = None) -> np.ndarray:
    m, k, La = A.shape
    k2, n, Lb = B.shape
    if k != k2:
        raise ValueError("dimension mismatch")
    L = La + Lb - 1 if La and Lb else 0
    if trunc is not None:
        L = min(L, max(trunc, 0))
    C = np.zeros((max(L, 0), m, n), dtype=A.dtype)
    if L <= 0 or k == 0:
        return C.transpose(1, 2, 0).copy()
    La, Lb = min(La, L), min(Lb, L)
    At = np.ascontiguousarray(A[:, :, :La].transpose(2, 0, 1))  # (La, m, k)
    Bt = np.ascontiguousarray(B[:, :, :Lb].transpose(2, 0, 1))  # (Lb, k, n)
    # every plane-by-plane product sums k terms below p**2, reduced right away
    prod = np.matmul(At[:, None], Bt[None]) % p  # (La, Lb, m, n)
    for t in range(La):
        w = min(Lb, L - t)
        if w > 0:
            C[t : t + w] += prod[t, :w]
    C %= p
    return C.transpose(1, 2, 0).copy()


def mat_mul(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    _same_field(A, B)
    if A.ncols != B.nrows:
        raise ValueError(f"dimension mismatch: {A.shape} times {B.shape}")
    return PolyMatrix._canonical(A.field, matmul_arrays(A.coeffs, B.coeffs, A.field.p))


def mat_mul_trunc(A: PolyMatrix, B: PolyMatrix, k: int) -> PolyMatrix:
    """``A*B mod x**k`` without forming the high-degree part."""
    _same_field(A, B)
    if A.ncols != B.nrows:
        raise ValueError(f"dimension mismatch: {A.shape} times {B.shape}")
    return PolyMatrix._canonical(A.field, matmul_arrays(A.coeffs, B.coeffs, A.field.p, trunc=k))


def truncated_inverse(U: PolyMatrix, k: int) -> PolyMatrix:
    """``V`` with ``U*V = I mod x**k``, by Newton iteration from ``U(0)^-1``."""
    m, n = U.shape
    if m != n:
        raise ValueError("matrix is not square")
    field = U.field
    p = field.p
    if k <= 0:
        return PolyMatrix.zeros(field, n, n)
    try:
        V0 = gfp.inverse(U.coefficient(0), p)
    except ZeroDivisionError:
        raise ValueError("constant term singular") from None
    V = PolyMatrix.constant(field, V0)
    two_I = PolyMatrix.constant(field, [[2 * int(i == j) for j in range(n)] for i in range(n)])
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        E = mat_mul_trunc(U.truncate(prec), V, prec)
        V = mat_mul_trunc(V, two_I - E, prec)
    return V


def unimodular_inverse(U: PolyMatrix) -> PolyMatrix:
    """Exact inverse of a unimodular ``U``; raises ``ValueError`` if ``U`` is not unimodular."""
    m, n = U.shape
    if m != n:
        raise ValueError("matrix is not square")
    d = 0 if U.degree is NEG_INF else U.degree
    # the adjugate has degree <= (m-1)*deg U and det U is a nonzero constant
    V = truncated_inverse(U, (m - 1) * d + 1)
    if mat_mul(U, V) != PolyMatrix.identity(U.field, m):
        raise ValueError("matrix is not unimodular")
    return V


def _check_indices(J, n) -> list[int]:
    J = [int(j) for j in J]
    for j in J:
        if not 0 <= j < n:
            raise IndexError(f"column index {j} out of range for {n} columns")
    return J


def submatrix_columns(F: PolyMatrix, J: Iterable[int]) -> PolyMatrix:
    J = _check_indices(J, F.ncols)
    return PolyMatrix._canonical(F.field, np.take(F.coeffs, np.asarray(J, dtype=np.intp), axis=1))


def shift_restrict(s: Sequence[int], J: Iterable[int]) -> tuple:
    J = _check_indices(J, len(s))
    return tuple(s[j] for j in J)


def complement(J: Iterable[int], n: int) -> tuple:
    Js = set(J)
    return tuple(j for j in range(n) if j not in Js)


def embed(J: Sequence[int], idx: Iterable[int]) -> tuple:
    """Map column indices of ``F[:, J]`` back to column indices of ``F``."""
    return tuple(J[i] for i in idx)
