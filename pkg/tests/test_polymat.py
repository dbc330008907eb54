import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import F7, mat, matrices, seeds, shifts
from polyforms import polymat
from polyforms.gfp import PrimeField
from polyforms.polymat import (
    PolyMatrix,
    is_hermite,
    is_ordered_weak_popov,
    is_popov,
    is_reduced,
    is_weak_popov,
    leading_matrix_shifted,
    mat_mul,
    mat_mul_trunc,
    pivot_profile,
    rdeg_shifted,
    truncated_inverse,
    unimodular_inverse,
)
from polyforms.testkit import random_matrix, random_unimodular
from polyforms.upoly import NEG_INF, Poly


def materialize(F, s):
    """F * X^(s - min s) with the monomials actually multiplied in."""
    lo = min(s)
    rows = [[F[i, j].shift(s[j] - lo) for j in range(F.ncols)] for i in range(F.nrows)]
    return PolyMatrix.from_entries(F.field, rows, ncols=F.ncols)


def entrywise_product(A, B):
    K = A.field
    out = []
    for i in range(A.nrows):
        row = []
        for j in range(B.ncols):
            acc = Poly.zero(K)
            for k in range(A.ncols):
                acc = acc + A[i, k] * B[k, j]
            row.append(acc)
        out.append(row)
    return PolyMatrix.from_entries(K, out, ncols=B.ncols)


class TestDegrees:
    def test_row_degrees(self, example_matrix):
        assert rdeg_shifted(example_matrix) == (2, 1)
        assert rdeg_shifted(PolyMatrix.identity(F7, 2), (5, -3)) == (5, -3)
        assert rdeg_shifted(mat(F7, [[[0, 1], [1]]]), (0, 2)) == (2,)

    def test_leading_matrix(self, example_matrix):
        assert leading_matrix_shifted(example_matrix) == [[1, 0, 0], [2, 2, 0]]
        assert leading_matrix_shifted(PolyMatrix.identity(F7, 3), (4, -1, 2)) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert leading_matrix_shifted(mat(F7, [[[0, 1], [1]]]), (0, 1)) == [[1, 1]]

    def test_pivots(self, example_matrix):
        assert pivot_profile(example_matrix).indices == (0, 1)
        prof = pivot_profile(mat(F7, [[[0, 1], [1]], [[], []]]))
        assert prof.indices == (0, None)
        assert prof.degrees[1] is NEG_INF and prof.row_degrees[1] is NEG_INF
        assert pivot_profile(mat(F7, [[[0, 1], [1]]]), (0, 2)).indices == (1,)

    def test_zero_row_has_no_leading_matrix(self):
        with pytest.raises(ValueError):
            leading_matrix_shifted(PolyMatrix.zeros(F7, 1, 2))

    @given(matrices(min_rows=1), st.data())
    def test_shift_translation(self, F, data):
        s = data.draw(shifts(F.ncols))
        c = data.draw(st.integers(-5, 5))
        t = tuple(v + c for v in s)
        assert rdeg_shifted(F, t) == tuple(r + c for r in rdeg_shifted(F, s))
        assert pivot_profile(F, t).indices == pivot_profile(F, s).indices

    @given(matrices(min_rows=1), st.data())
    def test_bookkeeping_matches_materialized_shift(self, F, data):
        assume(F.ncols > 0 and not F.zero_rows())
        s = data.draw(shifts(F.ncols))
        G = materialize(F, s)
        lo = min(s)
        assert leading_matrix_shifted(F, s) == leading_matrix_shifted(G)
        assert rdeg_shifted(F, s) == tuple(r + lo for r in rdeg_shifted(G))
        assert pivot_profile(F, s).indices == pivot_profile(G).indices


class TestPredicates:
    def test_example_forms(self, example_matrix, example_popov):
        assert is_weak_popov(example_matrix) and not is_popov(example_matrix)
        assert is_popov(example_popov)

    def test_identity_passes_everything(self):
        I = PolyMatrix.identity(F7, 3)
        for s in [(0, 0, 0), (3, -1, 2)]:
            for pred in (is_reduced, is_weak_popov, is_ordered_weak_popov, is_popov, is_hermite):
                assert pred(I, s)

    def test_negative_cases(self):
        # equal pivots
        A = mat(F7, [[[0, 1], [1]], [[0, 3], [2]]])
        assert not is_weak_popov(A) and not is_reduced(A)
        # pivots in decreasing order
        B = mat(F7, [[[], [0, 1]], [[1], []]])
        assert is_weak_popov(B) and not is_ordered_weak_popov(B)
        # non-monic pivot
        C = mat(F7, [[[0, 2], []], [[], [1]]])
        assert is_ordered_weak_popov(C) and not is_popov(C)
        # off-pivot entry too large in the pivot column
        D = mat(F7, [[[0, 1], []], [[0, 0, 1], [0, 0, 0, 1]]])
        assert is_ordered_weak_popov(D) and not is_popov(D)
        # Hermite: entry above a pivot of too large degree
        H = mat(F7, [[[1], [0, 0, 1]], [[], [0, 1]]])
        assert not is_hermite(H)
        assert is_hermite(mat(F7, [[[1], [0, 3]], [[], [0, 0, 1]]]))
        # zero row
        assert not is_popov(mat(F7, [[[1], []], [[], []]]))

    @given(matrices(primes=(2, 3), max_deg=2), st.data())
    def test_implication_chain(self, F, data):
        s = data.draw(shifts(F.ncols, bound=2))
        if is_popov(F, s):
            assert is_ordered_weak_popov(F, s)
        if is_ordered_weak_popov(F, s):
            assert is_weak_popov(F, s)
        if is_weak_popov(F, s):
            assert is_reduced(F, s)


class TestArithmetic:
    def test_product_examples(self):
        A = mat(F7, [[[1], [0, 1]], [[], [1]]])
        B = mat(F7, [[[0, 1], [1]], [[], [0, 1]]])
        assert mat_mul(A, B) == mat(F7, [[[0, 1], [1, 0, 1]], [[], [0, 1]]])
        assert mat_mul_trunc(A, B, 2) == mat(F7, [[[0, 1], [1]], [[], [0, 1]]])
        assert mat_mul(A, PolyMatrix.identity(F7, 2)) == A

    @given(seeds, st.sampled_from([2, 7, 97, 65537]), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
    def test_product_matches_entrywise(self, seed, p, m, k, n):
        rng = np.random.default_rng(seed)
        K = PrimeField(p)
        A = random_matrix(K, m, k, int(rng.integers(0, 5)), rng)
        B = random_matrix(K, k, n, int(rng.integers(0, 5)), rng)
        C = A @ B
        assert C == entrywise_product(A, B)
        t = int(rng.integers(0, 8))
        assert mat_mul_trunc(A, B, t) == C.truncate(t)

    def test_large_prime_uses_exact_integers(self):
        K = PrimeField((1 << 61) - 1)
        A = mat(K, [[[K.p - 1, K.p - 2]]])
        assert (A @ A)[0, 0] == Poly(K, [1, 4, 4])

    def test_truncated_inverse_examples(self):
        U = mat(F7, [[[1], [0, 1]], [[], [1]]])
        assert truncated_inverse(U, 3) == mat(F7, [[[1], [0, 6]], [[], [1]]])
        I = PolyMatrix.identity(F7, 3)
        assert truncated_inverse(I, 5) == I
        with pytest.raises(ValueError):
            truncated_inverse(mat(F7, [[[0, 1]]]), 3)

    def test_unimodular_inverse(self):
        U = mat(F7, [[[1], [0, 1]], [[], [1]]])
        assert unimodular_inverse(U) == mat(F7, [[[1], [0, 6]], [[], [1]]])
        with pytest.raises(ValueError):
            unimodular_inverse(mat(F7, [[[1, 1]]]))
        with pytest.raises(ValueError):
            unimodular_inverse(mat(F7, [[[0, 1]]]))

    @given(seeds, st.integers(1, 4), st.integers(0, 3), st.sampled_from([2, 7, 97]))
    def test_unimodular_inverse_property(self, seed, m, d, p):
        K = PrimeField(p)
        U = random_unimodular(K, m, d, np.random.default_rng(seed))
        V = unimodular_inverse(U)
        I = PolyMatrix.identity(K, m)
        assert U @ V == I and V @ U == I

    @given(seeds, st.integers(1, 4), st.integers(1, 12))
    def test_truncated_inverse_property(self, seed, m, k):
        rng = np.random.default_rng(seed)
        U = random_unimodular(F7, m, 2, rng)
        # shift by a random constant-term-invertible perturbation too
        U = U + random_matrix(F7, m, m, 3, rng).truncate(4) - random_matrix(F7, m, m, 3, rng).truncate(0)
        assume(polymat.gfp.rank(U.coefficient(0), 7) == m)
        V = truncated_inverse(U, k)
        assert mat_mul_trunc(U, V, k) == PolyMatrix.identity(F7, m)


class TestSubmatrices:
    def test_columns(self, example_matrix):
        assert example_matrix.columns(range(3)) == example_matrix
        assert example_matrix.columns([0, 2]) == mat(F7, [[[0, 0, 1], [2]], [[2, 2], [2]]])
        assert example_matrix.columns([]).shape == (2, 0)
        assert polymat.shift_restrict((4, 5, 6), [0, 2]) == (4, 6)
        assert polymat.complement([0, 2], 4) == (1, 3)
        assert polymat.embed([1, 3, 4], [0, 2]) == (1, 4)
        with pytest.raises(IndexError):
            example_matrix.columns([3])

    def test_construction_normalizes(self):
        A = PolyMatrix(F7, np.array([[[8, 7, 0, 14]]]))
        assert A.coeffs.shape == (1, 1, 1) and A[0, 0] == Poly(F7, [1])
        assert PolyMatrix.zeros(F7, 2, 3).degree is NEG_INF
        with pytest.raises(ValueError):
            PolyMatrix(F7, np.zeros((2, 2)))
        with pytest.raises(ValueError):
            mat(F7, [[[1]], [[1], [1]]])
