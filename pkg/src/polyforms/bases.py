"""Building blocks used as black boxes by the normal form algorithms.

These are straightforward (quadratic-ish) algorithms with the same input and
output contracts as the asymptotically fast versions: Mulders-Storjohann weak
Popov reduction, Popov normalization, nonsingular shifted Popov form, iterative
order bases, minimal kernel bases, exact left quotients by a column reduced
matrix, and the column rank profile via fraction-free elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import gfp
from .polymat import (
    NEG,
    PolyMatrix,
    _as_shift,
    cdeg_shifted,
    entry_degrees,
    is_weak_popov,
    mat_mul,
    mat_mul_trunc,
    pivot_profile,
    row_pivots,
    truncated_inverse,
    widen,
)
from .upoly import NEG_INF, Poly, poly_divrem, poly_exact_div


class SingularMatrixError(ValueError):
    pass


class VerificationError(RuntimeError):
    """An internal consistency check failed; indicates a bug, never bad input."""


@dataclass
class ReductionTrace:
    transformation: Optional[PolyMatrix]
    operations: int


# ---------------------------------------------------------------------------
# Mulders-Storjohann


def _working_width(arr: np.ndarray, s: np.ndarray) -> int:
    # Row operations never raise a shifted row degree, so entry j stays below
    # max(rdeg_s) - s[j] + 1.
    deg = entry_degrees(arr)
    rd, _, _ = row_pivots(deg, s)
    live = rd[rd != NEG]
    if not len(live):
        return arr.shape[2]
    return max(arr.shape[2], int(live.max() - s.min()) + 1)


def _row_pivot(row: np.ndarray, s: np.ndarray) -> tuple[int, int]:
    """(pivot index, pivot degree) of one ``(n, W)`` row; ``(-1, -1)`` if zero."""
    nz = row != 0
    has = nz.any(axis=1)
    if not has.any():
        return -1, -1
    W = row.shape[1]
    deg = W - 1 - nz[:, ::-1].argmax(axis=1)
    v = np.where(has, deg + s, NEG)
    j = len(v) - 1 - int(v[::-1].argmax())
    return j, int(deg[j])


def weak_popov_reduce(F: PolyMatrix, s=None, track: bool = False):
    """Row reduce ``F`` to shifted weak Popov form.

    While two nonzero rows share an ``s``-pivot index, the one with the larger
    pivot degree (ties: larger row index) is reduced by a monomial multiple of
    the other.  Returns ``(W, trace)`` where the nonzero rows of ``W`` come first
    (in their original relative order) and form an ``s``-weak Popov row basis of
    ``F``; zero rows are moved to the bottom.  With ``track=True``,
    ``trace.transformation @ F == W``.
    """
    field = F.field
    p = field.p
    m, n = F.shape
    sv = _as_shift(s, n)
    W = _working_width(F.coeffs, sv)
    A = widen(F.coeffs, W)
    T = widen(PolyMatrix.identity(field, m).coeffs, 1) if track else None

    owner: dict[int, tuple[int, int]] = {}
    stack = list(range(m - 1, -1, -1))
    ops = 0
    while stack:
        a = stack.pop()
        j, da = _row_pivot(A[a], sv)
        if j < 0:
            continue
        if j not in owner:
            owner[j] = (a, da)
            continue
        b, db = owner[j]
        if (da, a) < (db, b):
            owner[j] = (a, da)
            a, b, da, db = b, a, db, da
        e = da - db
        c = int(A[a, j, da]) * field.inv(int(A[b, j, db])) % p
        A[a, :, e:] = (A[a, :, e:] - c * A[b, :, : W - e]) % p
        if track:
            need = T.shape[2] + e
            if T.shape[2] < need:
                T = np.concatenate([T, np.zeros((m, m, need - T.shape[2]), dtype=T.dtype)], axis=2)
            LT = T.shape[2]
            T[a, :, e:] = (T[a, :, e:] - c * T[b, :, : LT - e]) % p
        ops += 1
        stack.append(a)

    nonzero = [i for i in range(m) if A[i].any()]
    order = nonzero + [i for i in range(m) if i not in set(nonzero)]
    out = PolyMatrix(field, A[order])
    trans = PolyMatrix(field, T[order]) if track else None
    return out, ReductionTrace(trans, ops)


def row_basis(F: PolyMatrix, s=None) -> PolyMatrix:
    """Nonzero rows of a weak Popov reduction of ``F``."""
    W, _ = weak_popov_reduce(F, s)
    return W.rows(range(F.nrows - len(W.zero_rows())))


def popov_normalize(W: PolyMatrix, s=None) -> PolyMatrix:
    """The ``s``-Popov form of an ``s``-weak Popov matrix."""
    if not is_weak_popov(W, s):
        raise ValueError("input is not in shifted weak Popov form")
    field = W.field
    p = field.p
    r, n = W.shape
    sv = _as_shift(s, n)
    prof = pivot_profile(W, s)
    order = sorted(range(r), key=lambda i: prof.indices[i])
    piv = [prof.indices[i] for i in order]
    pdeg = [prof.degrees[i] for i in order]
    width = _working_width(W.coeffs, sv)
    A = widen(W.coeffs, width)[order]
    for i in range(r):
        A[i] = A[i] * field.inv(int(A[i, piv[i], pdeg[i]])) % p

    # Each division removes terms divisible by a pivot's leading term and only
    # introduces smaller terms (in the order by shifted degree, then index), so
    # repeated passes terminate.
    changed = True
    while changed:
        changed = False
        for k in range(r):
            for i in range(r):
                if i == k:
                    continue
                j, d = piv[i], pdeg[i]
                ent = A[k, j]
                nz = np.flatnonzero(ent)
                if not len(nz) or nz[-1] < d:
                    continue
                q, _ = poly_divrem(Poly(field, ent), Poly(field, A[i, j]))
                for t, qt in enumerate(q.coeffs):
                    if qt:
                        A[k, :, t:] -= qt * A[i, :, : width - t]
                A[k] %= p
                changed = True
    return PolyMatrix(field, A)


def nonsingular_popov(A: PolyMatrix, s=None) -> PolyMatrix:
    """Shifted Popov form of a square nonsingular matrix."""
    if A.nrows != A.ncols:
        raise ValueError("matrix is not square")
    W, _ = weak_popov_reduce(A, s)
    if W.zero_rows():
        raise SingularMatrixError("matrix is singular")
    return popov_normalize(W, s)


# ---------------------------------------------------------------------------
# approximant and kernel bases


def approximant_basis_owp(G: PolyMatrix, sigma: Sequence[int], s=None) -> PolyMatrix:
    """Ordered weak Popov basis of ``{p : p G = 0 mod X^sigma}``.

    ``G`` is ``m x n``, ``sigma`` has one order per column of ``G`` and ``s`` is
    a shift on the ``m`` approximant columns.  Orders are processed column by
    column; at each step the row of minimal ``s``-degree (ties: largest
    ``s``-pivot index) among those with a nonzero residual coefficient is used
    to clear the others, then multiplied by ``x``.
    """
    field = G.field
    p = field.p
    m, n = G.shape
    sigma = [int(v) for v in sigma]
    if len(sigma) != n:
        raise ValueError(f"order tuple has length {len(sigma)}, expected {n}")
    if any(v < 1 for v in sigma):
        raise ValueError("orders must be positive")
    sv = _as_shift(s, m)
    total = sum(sigma)
    # basis in columns [0, m), residual G-products in columns [m, m + n)
    W = max(total + 1, max(sigma, default=0))
    A = np.concatenate([widen(PolyMatrix.identity(field, m).coeffs, W), widen(G.coeffs, W)], axis=1)
    # shifted row degree and pivot of every row, refreshed only where rows change
    rd, piv, _ = row_pivots(entry_degrees(A[:, :m]), sv)
    neg_piv = -piv

    for j in range(n):
        col = m + j
        for k in range(sigma[j]):
            c = A[:, col, k]
            live = c.nonzero()[0]
            if not len(live):
                continue
            if len(live) == 1:
                best = live[0]
            else:
                best = live[np.lexsort((neg_piv[live], rd[live]))[0]]
                others = live[live != best]
                f = (c[others] * field.inv(int(c[best]))) % p
                A[others] = (A[others] - f[:, None, None] * A[best][None]) % p
                # rows of strictly larger degree keep their leading terms
                tied = others[rd[others] == rd[best]]
                if len(tied):
                    rd[tied], piv[tied], _ = row_pivots(entry_degrees(A[tied, :m]), sv)
                    neg_piv[tied] = -piv[tied]
            A[best, :, 1:] = A[best, :, :-1].copy()
            A[best, :, 0] = 0
            rd[best] += 1

    P = A[:, :m]
    B, _ = weak_popov_reduce(PolyMatrix(field, P), s)
    if B.zero_rows():
        raise VerificationError("approximant basis lost rank")
    prof = pivot_profile(B, s)
    return B.rows(sorted(range(m), key=lambda i: prof.indices[i]))


def minimal_kernel_basis(F: PolyMatrix) -> PolyMatrix:
    """Column reduced right kernel basis ``N`` (``n x (n - rank)``) of ``F``."""
    m, n = F.shape
    if m > n:
        raise ValueError("unsupported shape: more rows than columns")
    if F.is_zero():
        return PolyMatrix.identity(F.field, n)
    d = F.degree
    order = m * d + d + 1
    Ft = F.transpose()
    B = approximant_basis_owp(Ft, [order] * m)
    prod = mat_mul(B, Ft)
    keep = prod.zero_rows()
    return B.rows(keep).transpose()


# ---------------------------------------------------------------------------
# quotient by a column reduced matrix


def _reverse_columns(arr: np.ndarray, windows: Sequence[int]) -> np.ndarray:
    """Entry ``(i, j)`` becomes ``x^w_j * a_ij(1/x)``."""
    m, n, _ = arr.shape
    top = max(windows, default=-1) + 1
    src = widen(arr, max(top, arr.shape[2]))
    out = np.zeros((m, n, max(top, 0)), dtype=arr.dtype)
    for j, w in enumerate(windows):
        if w >= 0:
            out[:, j, : w + 1] = src[:, j, w::-1] if w > 0 else src[:, j, :1]
    return out


def mat_quotient_left(B: PolyMatrix, A: PolyMatrix) -> PolyMatrix:
    """``Q`` with ``Q @ A == B`` for square column reduced ``A``.

    Works on column reversals so that the reversed ``A`` has an invertible
    constant term, then inverts it by Newton iteration to precision
    ``deg(B) + 1``.  The result is checked by one exact product.
    """
    field = A.field
    r = A.nrows
    if A.ncols != r:
        raise ValueError("divisor is not square")
    if B.ncols != r:
        raise ValueError("dimension mismatch")
    if B.is_zero():
        return PolyMatrix.zeros(field, B.nrows, r)
    a = cdeg_shifted(A)
    if NEG_INF in a:
        raise ValueError("divisor is not column reduced")
    lead = [[A[i, j].coeff(a[j]) for j in range(r)] for i in range(r)]
    if gfp.rank(lead, field.p) < r:
        raise ValueError("divisor is not column reduced")
    D = B.degree
    Arev = PolyMatrix(field, _reverse_columns(A.coeffs, a))
    Brev = PolyMatrix(field, _reverse_columns(B.coeffs, [aj + D for aj in a]))
    Qrev = mat_mul_trunc(Brev, truncated_inverse(Arev, D + 1), D + 1)
    Q = PolyMatrix(field, _reverse_columns(Qrev.coeffs, [D] * r))
    if mat_mul(Q, A) != B:
        raise ValueError("B is not a left multiple of A")
    return Q


# ---------------------------------------------------------------------------
# column rank profile


def column_rank_profile(F: PolyMatrix) -> tuple:
    """Lexicographically first maximal set of ``K(x)``-independent columns.

    Fraction-free (Bareiss) elimination over ``K[x]``; every division is exact.
    """
    M = F.entries()
    m, n = F.shape
    field = F.field
    prev = Poly.one(field)
    r = 0
    profile = []
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if M[i][c]), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        piv = M[r][c]
        for i in range(r + 1, m):
            mic = M[i][c]
            for j in range(c + 1, n):
                M[i][j] = poly_exact_div(piv * M[i][j] - mic * M[r][j], prev)
            M[i][c] = Poly.zero(field)
        prev = piv
        profile.append(c)
        r += 1
    return tuple(profile)
