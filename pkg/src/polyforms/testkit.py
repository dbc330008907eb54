"""Slow, independent oracles and random instance generators.

The oracle Popov form works on lists of :class:`~polyforms.upoly.Poly`
entries and shares nothing with :mod:`polyforms.bases` beyond polynomial
arithmetic: its Mulders-Storjohann loop breaks ties the other way (it reduces
the row with the *smaller* index) and it normalizes one monomial at a time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import gfp
from .gfp import PrimeField
from .polymat import PolyMatrix, dtype_for
from .upoly import NEG_INF, Poly


def _rng(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


# ---------------------------------------------------------------------------
# oracle


def _row_info(row: list[Poly], s: Sequence[int]):
    best = None
    for j, e in enumerate(row):
        if e.coeffs:
            key = (len(e.coeffs) - 1 + s[j], j)
            if best is None or key > best:
                best = key
    if best is None:
        return NEG_INF, None, NEG_INF
    j = best[1]
    return best[0], j, len(row[j].coeffs) - 1


def _axpy(row, other, c: int, e: int):
    """row - c*x^e*other, entrywise."""
    return [a - b.shift(e).scale(c) if b.coeffs else a for a, b in zip(row, other)]


def oracle_popov(F: PolyMatrix, s=None) -> PolyMatrix:
    """The ``s``-Popov row basis of ``F`` by plain Mulders-Storjohann."""
    field = F.field
    m, n = F.shape
    s = tuple(s) if s is not None else (0,) * n
    if len(s) != n:
        raise ValueError("shift length mismatch")
    rows = F.entries()

    while True:
        info = [_row_info(r, s) for r in rows]
        clash = None
        for i, k in itertools.combinations(range(len(rows)), 2):
            if info[i][1] is not None and info[i][1] == info[k][1]:
                clash = (i, k)
                break
        if clash is None:
            break
        i, k = clash
        # reduce the larger pivot degree; on ties the smaller row index
        a, b = (k, i) if info[k][2] > info[i][2] else (i, k)
        j = info[a][1]
        e = info[a][2] - info[b][2]
        c = rows[a][j].lc * field.inv(rows[b][j].lc)
        rows[a] = _axpy(rows[a], rows[b], c, e)

    rows = [r for r in rows if any(e.coeffs for e in r)]
    rows.sort(key=lambda r: _row_info(r, s)[1])
    info = [_row_info(r, s) for r in rows]
    rows = [[e.scale(field.inv(r[j].lc)) for e in r] for r, (_, j, _) in zip(rows, info)]

    changed = True
    while changed:
        changed = False
        for k, i in itertools.permutations(range(len(rows)), 2):
            j, d = info[i][1], info[i][2]
            ent = rows[k][j]
            if ent.coeffs and len(ent.coeffs) - 1 >= d:
                rows[k] = _axpy(rows[k], rows[i], ent.lc, len(ent.coeffs) - 1 - d)
                changed = True
    if not rows:
        return PolyMatrix.zeros(field, 0, n)
    return PolyMatrix.from_entries(field, rows)


def oracle_pivot_support(F: PolyMatrix, s=None) -> tuple:
    P = oracle_popov(F, s)
    return tuple(_row_info(r, s if s is not None else (0,) * F.ncols)[1] for r in P.entries())


def oracle_rank(F: PolyMatrix) -> int:
    return oracle_popov(F).nrows


def row_space_equal(A: PolyMatrix, B: PolyMatrix) -> bool:
    if A.ncols != B.ncols:
        raise ValueError("column counts differ")
    return oracle_popov(A) == oracle_popov(B)


def oracle_hermite(F: PolyMatrix) -> PolyMatrix:
    """Hermite form as the oracle Popov form under ``(n*t, ..., 2t, t)``."""
    B = oracle_popov(F)
    if B.nrows == 0:
        return B
    rd = sum(B.row_degrees())
    cd = sum(c for c in B.column_degrees() if c is not NEG_INF)
    t = 1 + min(rd, cd)
    n = F.ncols
    return oracle_popov(B, tuple((n - j) * t for j in range(n)))


# ---------------------------------------------------------------------------
# brute-force linear algebra oracles


def brute_force_approximants(G: PolyMatrix, sigma: Sequence[int], D: int) -> PolyMatrix:
    """F_p-basis (as rows) of ``{p : deg p <= D, p G = 0 mod X^sigma}``."""
    field = G.field
    p = field.p
    m, n = G.shape
    # unknown (i, t) -> coefficient of x^t in p_i; constraint (j, k) -> coeff k of (pG)_j
    cons = [(j, k) for j in range(n) for k in range(sigma[j])]
    rows = []
    for i in range(m):
        for t in range(D + 1):
            rows.append([G[i, j].coeff(k - t) if k >= t else 0 for (j, k) in cons])
    if not cons:
        basis = [[int(a == b) for b in range(len(rows))] for a in range(len(rows))]
    else:
        basis = gfp.left_nullspace(rows, p)
    out = []
    for v in basis:
        out.append([[v[i * (D + 1) + t] for t in range(D + 1)] for i in range(m)])
    if not out:
        return PolyMatrix.zeros(field, 0, m)
    return PolyMatrix.from_entries(field, out)


def is_approximant(Prow: PolyMatrix, G: PolyMatrix, sigma: Sequence[int]) -> bool:
    prod = Prow @ G
    return all(prod[i, j].truncate(sigma[j]).is_zero() for i in range(prod.nrows) for j in range(prod.ncols))


def evaluation_rank_profile(F: PolyMatrix, npoints: Optional[int] = None) -> tuple:
    """Column rank profile from evaluations at distinct field points.

    Takes the lexicographically smallest profile among evaluations of maximal
    rank.  Needs ``p >= npoints``; default ``rank + deg*m + 1`` points with the
    rank bounded by ``min(m, n)``.
    """
    m, n = F.shape
    p = F.field.p
    d = 0 if F.degree is NEG_INF else F.degree
    if npoints is None:
        npoints = min(m, n) + d * m + 1
    if npoints > p:
        raise ValueError("field too small for the evaluation oracle")
    best = None
    for a in range(npoints):
        prof = gfp.column_rank_profile(F.evaluate(a), p)
        key = (-len(prof), prof)
        if best is None or key < best:
            best = key
    return best[1]


# ---------------------------------------------------------------------------
# generators


def random_matrix(field: PrimeField, m: int, n: int, d: int, rng=None) -> PolyMatrix:
    rng = _rng(rng)
    arr = rng.integers(0, field.p, size=(m, n, d + 1)) if d >= 0 else np.zeros((m, n, 0), dtype=np.int64)
    return PolyMatrix(field, arr.astype(dtype_for(field.p)))


def random_full_rank(field: PrimeField, m: int, n: int, d: int, rng=None, tries: int = 200) -> PolyMatrix:
    """Random ``m x n`` matrix of degree ``<= d`` with rank ``m`` (``m <= n``)."""
    rng = _rng(rng)
    for _ in range(tries):
        F = random_matrix(field, m, n, d, rng)
        if oracle_rank(F) == m:
            return F
    raise RuntimeError("could not draw a full rank matrix")


def random_low_rank(field: PrimeField, m: int, n: int, r: int, d: int, rng=None) -> PolyMatrix:
    """Product of random ``m x r`` and ``r x n`` matrices (rank at most ``r``)."""
    rng = _rng(rng)
    dl = d // 2
    return random_matrix(field, m, r, dl, rng) @ random_matrix(field, r, n, d - dl, rng)


def random_unimodular(field: PrimeField, m: int, d: int, rng=None, ops: Optional[int] = None) -> PolyMatrix:
    """Product of random elementary row operations.

    By default: a lower then an upper unitriangular sweep (multipliers of
    degree ``<= d``), random nonzero row scalings and a random row permutation.
    ``ops=0`` returns the identity.
    """
    rng = _rng(rng)
    p = field.p
    U = [[Poly.one(field) if i == j else Poly.zero(field) for j in range(m)] for i in range(m)]
    if ops == 0:
        return PolyMatrix.from_entries(field, U, ncols=m)

    def add_multiple(dst, src):
        c = Poly(field, rng.integers(0, p, size=d + 1))
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    for i in range(m):
        for j in range(i):
            add_multiple(i, j)
    for i in range(m):
        for j in range(i + 1, m):
            add_multiple(i, j)
    for i in range(m):
        c = int(rng.integers(1, p)) if p > 2 else 1
        U[i] = [e.scale(c) for e in U[i]]
    perm = rng.permutation(m)
    U = [U[int(k)] for k in perm]
    return PolyMatrix.from_entries(field, U, ncols=m)


@dataclass(frozen=True)
class InstanceSpec:
    p: int
    m: int
    n: int
    d: int
    shift: str = "zero"  # "zero" | "uniform" | "hermite"
    seed: int = 0
    shift_bound: int = 3

    def __post_init__(self):
        if self.m < 1 or self.n < self.m or self.d < 0:
            raise ValueError("need 1 <= m <= n and d >= 0")
        if self.shift not in ("zero", "uniform", "hermite"):
            raise ValueError(f"unknown shift profile {self.shift!r}")

    def generate(self):
        """Full rank ``F`` and a shift drawn according to the profile."""
        field = PrimeField(self.p)
        rng = np.random.default_rng(self.seed)
        F = random_full_rank(field, self.m, self.n, self.d, rng)
        if self.shift == "zero":
            s = (0,) * self.n
        elif self.shift == "uniform":
            a = self.shift_bound
            s = tuple(int(v) for v in rng.integers(-a, a + 1, size=self.n))
        else:
            t = self.m * self.d + 1
            s = tuple((self.n - j) * t for j in range(self.n))
        return F, s
