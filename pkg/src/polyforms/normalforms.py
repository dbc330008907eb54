"""Shifted Popov and Hermite forms of rectangular polynomial matrices.

Three routes are provided:

* :func:`random_completion_popov` stacks ``F`` with a random constant block
  times a high power of ``x``, takes the Popov form of the resulting square
  matrix and reads off the rows of low degree (Las Vegas, self-checking).
* :func:`wide_matrix_pivot_support` finds the pivot support deterministically
  from a saturation basis (:func:`pivot_support_via_factor`), working through
  chunks of about ``2m`` columns for wide matrices.
* :func:`known_support_popov` computes the form from its pivot support with a
  nonsingular Popov computation on the pivot columns, a matrix quotient and a
  truncated product for the remaining columns.

:func:`popov_form` and :func:`hermite_form` chain these together.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .bases import (
    SingularMatrixError,
    VerificationError,
    approximant_basis_owp,
    column_rank_profile,
    mat_quotient_left,
    minimal_kernel_basis,
    nonsingular_popov,
    popov_normalize,
    row_basis,
    weak_popov_reduce,
)
from .polymat import (
    PolyMatrix,
    amplitude,
    cdeg_shifted,
    complement,
    dtype_for,
    embed,
    hermite_pivot_index,
    is_hermite,
    is_popov,
    mat_mul,
    mat_mul_trunc,
    pivot_profile,
    rdeg_shifted,
    shift_restrict,
    truncated_inverse,
)
from .upoly import NEG_INF


class PivotSupportError(ValueError):
    """The pivot support handed to :func:`known_support_popov` is wrong."""


class CompletionFailure(RuntimeError):
    """Every random completion attempt failed."""


@dataclass(frozen=True)
class PopovResult:
    popov: PolyMatrix
    pivot_support: tuple
    pivot_degrees: tuple
    shift: tuple

    @classmethod
    def of(cls, P: PolyMatrix, s) -> "PopovResult":
        prof = pivot_profile(P, s)
        return cls(P, prof.indices, prof.degrees, tuple(s))


@dataclass
class CompletionAttempt:
    """One draw of the random completion: the constant block and what happened."""

    L: list
    outcome: str  # "success" | "failure_singular" | "failure_degrees"
    result: Optional[PopovResult] = None

    @property
    def success(self) -> bool:
        return self.outcome == "success"


def _shift(s, n) -> tuple:
    if s is None:
        return (0,) * n
    s = tuple(int(v) for v in s)
    if len(s) != n:
        raise ValueError(f"shift has length {len(s)}, expected {n}")
    return s


def _is_full_rank(F: PolyMatrix, s) -> bool:
    W, _ = weak_popov_reduce(F, s)
    return not W.zero_rows()


# ---------------------------------------------------------------------------
# random completion


def completion_success_probability_bound(q: int, m: int, n: int, full_field: bool = True) -> Fraction:
    """Lower bound on the chance that one random completion draw succeeds."""
    if q < 2:
        raise ValueError("need at least two sample values")
    k = n - m
    if full_field:
        out = Fraction(1)
        for i in range(1, k + 1):
            out *= 1 - Fraction(1, q**i)
        return out
    return 1 - Fraction(k, q)


def _sample_block(rng, k: int, n: int, values: Sequence[int], zero_cols, support) -> list:
    if support is not None:
        L = [[0] * n for _ in range(k)]
        for i, j in enumerate(complement(support, n)):
            L[i][j] = 1
        return L
    idx = rng.integers(0, len(values), size=(k, n))
    L = [[int(values[v]) for v in row] for row in idx]
    for row in L:
        for j in zero_cols:
            row[j] = 0
    return L


def _completion_attempt(F, s, L) -> CompletionAttempt:
    field = F.field
    m, n = F.shape
    smin = min(s)
    s0 = [v - smin for v in s]
    T = F.degree + amplitude(s) + 1
    # C[i, j] = L[i][j] * x^(T - s0[j]), so every nonzero row of C has s0-degree T
    C = np.zeros((n - m, n, T + 1), dtype=dtype_for(field.p))
    for i, row in enumerate(L):
        for j, v in enumerate(row):
            C[i, j, T - s0[j]] = v
    N = F.vstack(PolyMatrix(field, C))
    W, _ = weak_popov_reduce(N, s)
    if W.zero_rows():
        return CompletionAttempt(L, "failure_singular")
    Pt = popov_normalize(W, s)
    rd = rdeg_shifted(Pt, s0)
    rdC = [T if any(row) else NEG_INF for row in L]
    have, need = Counter(rd), Counter(rdC)
    if any(have[k] < c for k, c in need.items()):
        return CompletionAttempt(L, "failure_degrees")
    low = [i for i, d in enumerate(rd) if d < T]
    P = Pt.rows(low)
    if len(low) != m or not is_popov(P, s):
        raise VerificationError("completion passed the degree check but gave no Popov form")
    return CompletionAttempt(L, "success", PopovResult.of(P, s))


def random_completion_popov(
    F: PolyMatrix,
    rng: Optional[np.random.Generator] = None,
    *,
    s=None,
    L=None,
    subset: Optional[Sequence[int]] = None,
    known_pivots: Sequence[int] = (),
    support: Optional[Sequence[int]] = None,
) -> CompletionAttempt:
    """One Las Vegas attempt at the ``s``-Popov form of a full rank wide ``F``.

    ``L`` may be given explicitly; otherwise it is drawn from ``subset``
    (default: the whole field).  Columns in ``known_pivots`` are forced to zero
    in ``L``.  If the full pivot ``support`` is known, ``L`` is the identity on
    the other columns and the attempt cannot fail.
    """
    m, n = F.shape
    s = _shift(s, n)
    if m >= n:
        raise ValueError("completion needs fewer rows than columns")
    if not _is_full_rank(F, s):
        raise ValueError("input not full rank")
    if L is None:
        rng = rng if rng is not None else np.random.default_rng()
        values = list(subset) if subset is not None else list(range(F.field.p))
        L = _sample_block(rng, n - m, n, values, known_pivots, support)
    else:
        L = [[int(v) % F.field.p for v in row] for row in L]
        if len(L) != n - m or any(len(row) != n for row in L):
            raise ValueError(f"completion block must be {n - m}x{n}")
    return _completion_attempt(F, s, L)


def popov_via_completion(F: PolyMatrix, s=None, rng=None, max_tries: int = 10, **kw) -> PopovResult:
    """Repeat :func:`random_completion_popov` until success or ``max_tries``."""
    rng = rng if rng is not None else np.random.default_rng()
    for _ in range(max_tries):
        att = random_completion_popov(F, rng, s=s, **kw)
        if att.success:
            return att.result
    raise CompletionFailure(f"no successful completion in {max_tries} attempts")


# ---------------------------------------------------------------------------
# pivot support


def pivot_support_via_factor(F: PolyMatrix, s=None) -> tuple:
    """Pivot support of ``F`` (``m <= n``, any rank) from a saturation basis.

    A minimal right kernel basis ``N`` is computed, then an ordered weak Popov
    basis of the approximants of ``N``; its rows that annihilate ``N`` form a
    basis of the saturation of ``F``, whose pivot index is the pivot support.
    For a non-uniform shift the order is raised by ``2*amp(s)`` so that the
    shifted reduced saturation basis still fits below the order.
    """
    m, n = F.shape
    s = _shift(s, n)
    if m > n:
        raise ValueError("unsupported shape: more rows than columns")
    if F.is_zero():
        return ()
    d = F.degree
    N = minimal_kernel_basis(F)
    k = N.ncols
    rank = n - k
    if k == 0:
        return tuple(range(n))
    amp = amplitude(s)
    sigma = [c + d + 2 * amp + 1 for c in cdeg_shifted(N)]
    B = approximant_basis_owp(N, sigma, s)
    if amp == 0:
        rdeg = rdeg_shifted(B)
        keep = [i for i, v in enumerate(rdeg) if v <= d]
    else:
        keep = mat_mul(B, N).zero_rows()
    if len(keep) != rank:
        raise VerificationError(f"saturation basis has {len(keep)} rows, expected {rank}")
    return pivot_profile(B.rows(keep), s).indices


def wide_matrix_pivot_support(F: PolyMatrix, s=None) -> tuple:
    """Pivot support of ``F`` for any shape, in chunks of ``2m`` columns."""
    m, n = F.shape
    s = _shift(s, n)
    if m == 0 or F.is_zero():
        return ()
    if m > n:
        F = row_basis(F, s)
        m = F.nrows
    if n <= 2 * m:
        return pivot_support_via_factor(F, s)
    head = list(range(2 * m))
    pi0 = pivot_support_via_factor(F.columns(head), shift_restrict(s, head))
    keep = list(pi0) + list(range(2 * m, n))
    sub = wide_matrix_pivot_support(F.columns(keep), shift_restrict(s, keep))
    return embed(keep, sub)


# ---------------------------------------------------------------------------
# degree bounds and the known-support algorithm


def _sum_cdeg_nonzero(F: PolyMatrix) -> int:
    return sum(c for c in cdeg_shifted(F) if c is not NEG_INF)


@dataclass(frozen=True)
class DegreeBounds:
    popov_degree_shift: int          # deg P <= deg F + amp(s)
    transform_column_degrees: tuple  # cdeg U[:, i] <= |rdeg F| - rdeg F[i]
    transform_degree: int            # deg U <= |cdeg F[:, pi]|
    popov_degree_global: int         # deg P <= min(|rdeg F|, |cdeg F'|)

    def check_popov(self, P: PolyMatrix) -> bool:
        d = P.degree
        if d is NEG_INF:
            return True
        return d <= self.popov_degree_shift and d <= self.popov_degree_global

    def check_transform(self, U: PolyMatrix) -> bool:
        cd = cdeg_shifted(U)
        if any(c is not NEG_INF and c > b for c, b in zip(cd, self.transform_column_degrees)):
            return False
        return U.degree is NEG_INF or U.degree <= self.transform_degree


def degree_bounds(F: PolyMatrix, s, pi: Sequence[int]) -> DegreeBounds:
    m, n = F.shape
    s = _shift(s, n)
    rd = rdeg_shifted(F)
    total = sum(rd)
    return DegreeBounds(
        popov_degree_shift=F.degree + amplitude(s),
        transform_column_degrees=tuple(total - r for r in rd),
        transform_degree=_sum_cdeg_nonzero(F.columns(pi)),
        popov_degree_global=min(total, _sum_cdeg_nonzero(F)),
    )


def default_degree_bound(F: PolyMatrix, s=None) -> int:
    """Strict upper bound on the degree of the ``s``-Popov form of full rank ``F``."""
    s = _shift(s, F.ncols)
    return 1 + min(sum(rdeg_shifted(F)), _sum_cdeg_nonzero(F), F.degree + amplitude(s))


def known_support_popov(F: PolyMatrix, s, pi: Sequence[int], delta: Optional[int] = None) -> PopovResult:
    """``s``-Popov form of full rank ``F`` given its ``s``-pivot support ``pi``.

    ``delta`` must exceed the degree of the result; by default it is
    ``1 + min(|rdeg F|, |cdeg F'|, deg F + amp(s))``.
    """
    m, n = F.shape
    s = _shift(s, n)
    pi = tuple(int(j) for j in pi)
    if m > n:
        raise ValueError("unsupported shape: more rows than columns")
    if len(pi) != m or any(a >= b for a, b in zip(pi, pi[1:])) or any(not 0 <= j < n for j in pi):
        raise PivotSupportError("pivot support incorrect")
    rest = complement(pi, n)
    F_pi = F.columns(pi)
    s_pi = shift_restrict(s, pi)
    try:
        P_pi = nonsingular_popov(F_pi, s_pi)
    except SingularMatrixError:
        raise PivotSupportError("pivot support incorrect") from None
    U = mat_quotient_left(F_pi, P_pi)

    if rest:
        if delta is None:
            delta = default_degree_bound(F, s)
        delta = min(delta, 1 + max(rdeg_shifted(P_pi, s_pi)) - min(s[j] for j in rest))
        P_rest = mat_mul_trunc(truncated_inverse(U, delta), F.columns(rest), delta)
    else:
        P_rest = PolyMatrix.zeros(F.field, m, 0)

    L = max(P_pi.coeffs.shape[2], P_rest.coeffs.shape[2])
    arr = np.zeros((m, n, L), dtype=P_pi.coeffs.dtype)
    arr[:, list(pi), : P_pi.coeffs.shape[2]] = P_pi.coeffs
    if rest:
        arr[:, list(rest), : P_rest.coeffs.shape[2]] = P_rest.coeffs
    P = PolyMatrix(F.field, arr)
    if not is_popov(P, s) or pivot_profile(P, s).indices != pi or mat_mul(U, P) != F:
        raise PivotSupportError("pivot support incorrect")
    return PopovResult.of(P, s)


# ---------------------------------------------------------------------------
# drivers


STRATEGIES = ("auto", "completion", "support_pipeline")


def popov_form(
    F: PolyMatrix,
    s=None,
    strategy: str = "auto",
    rng: Optional[np.random.Generator] = None,
    max_tries: int = 10,
) -> PopovResult:
    """The ``s``-Popov form (row basis) of any ``F``.

    ``support_pipeline`` (and ``auto``) finds the pivot support
    deterministically and then runs :func:`known_support_popov`;
    ``completion`` uses random completions with retries.  Rank deficient
    inputs are first replaced by a weak Popov row basis; when ``m >= n`` that
    reduction comes first and a nonsingular result is normalized directly.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    m, n = F.shape
    s = _shift(s, n)

    if strategy == "completion":
        B = F if m < n and _is_full_rank(F, s) else row_basis(F, s)
        r = B.nrows
        if r == 0:
            P = B
        elif r == n:
            P = nonsingular_popov(B, s)
        else:
            P = popov_via_completion(B, s, rng=rng, max_tries=max_tries).popov
        pi = pivot_profile(P, s).indices
    elif m >= n:
        # tall or square: the row basis comes first and settles the rank
        B = row_basis(F, s)
        r = B.nrows
        pi = tuple(range(n)) if r == n else ()
        if r == 0:
            P = B
        elif r == n:
            P = popov_normalize(B, s)
        else:
            pi = wide_matrix_pivot_support(B, s)
            if len(pi) != r:
                raise VerificationError("row basis size disagrees with the pivot support")
            P = known_support_popov(B, s, pi).popov
    else:
        pi = wide_matrix_pivot_support(F, s)
        r = len(pi)
        B = F if r == m else row_basis(F, s)
        if B.nrows != r:
            raise VerificationError("row basis size disagrees with the pivot support")
        if r == 0:
            P = B
        else:
            P = known_support_popov(B, s, pi).popov

    if not is_popov(P, s) or P.nrows != r or pivot_profile(P, s).indices != tuple(pi):
        raise VerificationError("computed matrix is not the shifted Popov form")
    return PopovResult.of(P, s)


def hermite_delta(F: PolyMatrix) -> int:
    """Degree bound for the Hermite form of a full rank ``F``: ``1 + min(|rdeg F|, |cdeg F'|)``."""
    return 1 + min(sum(rdeg_shifted(F)), _sum_cdeg_nonzero(F))


def hermite_shift(n: int, delta: int) -> tuple:
    """``(n*delta, ..., 2*delta, delta)``."""
    return tuple((n - j) * delta for j in range(n))


def hermite_form(F: PolyMatrix) -> PopovResult:
    """Hermite form of ``F``; the pivot support is the column rank profile."""
    m, n = F.shape
    J = column_rank_profile(F)
    r = len(J)
    if r == 0:
        return PopovResult(PolyMatrix.zeros(F.field, 0, n), (), (), (0,) * n)
    B = F if r == m else row_basis(F)
    if B.nrows != r:
        raise VerificationError("row basis size disagrees with the rank profile")
    delta = hermite_delta(B)
    sh = hermite_shift(n, delta)
    if r == n:
        H = nonsingular_popov(B, sh)
    else:
        H = known_support_popov(B, sh, J, delta).popov
    if not is_hermite(H) or hermite_pivot_index(H) != J or not is_popov(H, sh):
        raise VerificationError("computed matrix is not the Hermite form")
    return PopovResult.of(H, sh)
