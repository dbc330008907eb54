from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F7, mat, seeds, shifts
from polyforms.bases import mat_quotient_left
from polyforms.gfp import PrimeField
from polyforms.normalforms import (
    CompletionFailure,
    PivotSupportError,
    completion_success_probability_bound,
    degree_bounds,
    hermite_delta,
    hermite_form,
    hermite_shift,
    known_support_popov,
    pivot_support_via_factor,
    popov_form,
    popov_via_completion,
    random_completion_popov,
    wide_matrix_pivot_support,
)
from polyforms.polymat import PolyMatrix, embed, is_hermite, pivot_profile, unimodular_inverse
from polyforms.testkit import (
    oracle_hermite,
    oracle_pivot_support,
    oracle_popov,
    random_full_rank,
    random_low_rank,
    random_matrix,
    random_unimodular,
)

F2 = PrimeField(2)


class TestCompletion:
    def test_hand_examples(self):
        F = mat(F2, [[[0, 1], [1]]])
        ok = random_completion_popov(F, L=[[0, 1]])
        assert ok.success and ok.result.popov == F
        bad = random_completion_popov(F, L=[[1, 0]])
        assert not bad.success and bad.result is None

    def test_needs_wide_full_rank_input(self, example_matrix):
        with pytest.raises(ValueError):
            random_completion_popov(PolyMatrix.identity(F7, 2), np.random.default_rng(0))
        with pytest.raises(ValueError):
            random_completion_popov(mat(F7, [[[1], [1], []], [[2], [2], []]]), np.random.default_rng(0))

    def test_example_matrix(self, example_matrix, example_popov):
        res = popov_via_completion(example_matrix, rng=np.random.default_rng(3))
        assert res.popov == example_popov and res.pivot_support == (0, 1)

    def test_known_support_block_never_fails(self, example_matrix, example_popov):
        for seed in range(5):
            att = random_completion_popov(example_matrix, np.random.default_rng(seed), support=(0, 1))
            assert att.success and att.result.popov == example_popov

    def test_retry_cap(self):
        F = mat(F2, [[[0, 1], [1], []]])
        with pytest.raises(CompletionFailure):
            popov_via_completion(F, rng=np.random.default_rng(0), max_tries=3, subset=[0])

    def test_probability_bounds(self):
        assert completion_success_probability_bound(2, 1, 2) == Fraction(1, 2)
        assert completion_success_probability_bound(2, 1, 60) > Fraction(28, 100)
        assert completion_success_probability_bound(7, 1, 60) > Fraction(3, 4)
        assert completion_success_probability_bound(7, 2, 4, full_field=False) == Fraction(5, 7)

    @given(seeds, st.sampled_from([2, 3, 7]), st.integers(1, 3), st.integers(1, 3), st.integers(0, 3), st.data())
    def test_success_means_correct(self, seed, p, m, k, d, data):
        rng = np.random.default_rng(seed)
        F = random_full_rank(PrimeField(p), m, m + k, d, rng)
        s = data.draw(st.one_of(st.none(), shifts(m + k)))
        for _ in range(4):
            att = random_completion_popov(F, rng, s=s)
            if att.success:
                assert att.result.popov == oracle_popov(F, s)


class TestPivotSupport:
    def test_examples(self):
        assert pivot_support_via_factor(PolyMatrix.zeros(F7, 2, 3)) == ()
        assert pivot_support_via_factor(mat(F7, [[[0, 1], [1], []], [[], [0, 1], [1]]])) == (0, 1)
        assert pivot_support_via_factor(mat(F7, [[[1], [0, 1]]])) == (1,)
        assert wide_matrix_pivot_support(mat(F7, [[[1], [0, 1], [0, 1], [0, 1]]])) == (3,)

    def test_zero_block_then_popov(self, example_popov):
        F = PolyMatrix.zeros(F7, 2, 4).hstack(example_popov)
        assert wide_matrix_pivot_support(F) == (4, 5)

    def test_shape_guard(self):
        with pytest.raises(ValueError):
            pivot_support_via_factor(mat(F7, [[[1]], [[0, 1]]]))

    @given(seeds, st.sampled_from([2, 3, 7, 97]), st.integers(1, 3), st.integers(0, 6), st.integers(0, 3),
           st.booleans(), st.data())
    def test_agrees_with_oracle(self, seed, p, m, extra, d, low, data):
        rng = np.random.default_rng(seed)
        K = PrimeField(p)
        n = m + extra
        F = random_low_rank(K, m, n, int(rng.integers(0, m + 1)), d, rng) if low else random_matrix(K, m, n, d, rng)
        s = data.draw(st.one_of(st.none(), shifts(n)))
        expected = oracle_pivot_support(F, s)
        assert wide_matrix_pivot_support(F, s) == expected
        if n <= 2 * m:
            assert pivot_support_via_factor(F, s) == expected

    @given(seeds, st.integers(1, 3), st.integers(1, 6), st.data())
    def test_chunk_containment(self, seed, m, extra, data):
        rng = np.random.default_rng(seed)
        n = m + extra
        F = random_matrix(F7, m, n, int(rng.integers(0, 3)), rng)
        J = sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
        piF = set(oracle_pivot_support(F))
        piJ = set(embed(J, oracle_pivot_support(F.columns(J))))
        assert piF & set(J) <= piJ
        if piF <= set(J):
            assert piF == piJ


class TestKnownSupport:
    def test_example(self, example_matrix, example_popov):
        assert known_support_popov(example_matrix, None, (0, 1)).popov == example_popov
        assert known_support_popov(example_popov, None, (0, 1)).popov == example_popov

    def test_wrong_support(self, example_matrix):
        with pytest.raises(PivotSupportError):
            known_support_popov(example_matrix, None, (0, 2))
        with pytest.raises(PivotSupportError):
            known_support_popov(example_matrix, None, (1, 0))

    @given(seeds, st.sampled_from([2, 7, 97]), st.integers(1, 3), st.integers(1, 3), st.integers(0, 3), st.data())
    def test_recovers_from_scrambled(self, seed, p, m, k, d, data):
        rng = np.random.default_rng(seed)
        K = PrimeField(p)
        s = data.draw(shifts(m + k))
        P = oracle_popov(random_full_rank(K, m, m + k, d, rng), s)
        U = random_unimodular(K, m, 1, rng)
        res = known_support_popov(U @ P, s, pivot_profile(P, s).indices)
        assert res.popov == P


class TestPopovForm:
    def test_example(self, example_matrix, example_popov):
        for strategy in ("auto", "support_pipeline", "completion"):
            res = popov_form(example_matrix, strategy=strategy, rng=np.random.default_rng(0))
            assert res.popov == example_popov and res.pivot_support == (0, 1)
        assert popov_form(example_matrix.rows([1, 0])).popov == example_popov

    def test_shifted_example(self, example_matrix):
        s = (3, 0, 0)
        assert popov_form(example_matrix, s).popov == oracle_popov(example_matrix, s)

    def test_rejects_unknown_strategy(self, example_matrix):
        with pytest.raises(ValueError):
            popov_form(example_matrix, strategy="magic")

    @given(seeds, st.sampled_from([2, 3, 7, 97]), st.integers(1, 4), st.integers(1, 5), st.integers(0, 3), st.data())
    def test_any_shape(self, seed, p, m, n, d, data):
        rng = np.random.default_rng(seed)
        F = random_matrix(PrimeField(p), m, n, d, rng)
        s = data.draw(st.one_of(st.none(), shifts(n)))
        P = popov_form(F, s).popov
        assert P == oracle_popov(F, s)
        assert popov_form(F, s, strategy="completion", rng=rng, max_tries=40).popov == P


class TestHermite:
    def test_identity_block(self):
        U = mat(F7, [[[1], [0, 1]], [[], [1]]])
        H = hermite_form(U.hstack(PolyMatrix.identity(F7, 2))).popov
        Uinv = mat(F7, [[[1], [0, 6]], [[], [1]]])
        assert H == PolyMatrix.identity(F7, 2).hstack(Uinv)
        assert hermite_form(H).popov == H

    def test_zero_matrix(self):
        assert hermite_form(PolyMatrix.zeros(F7, 2, 3)).popov.shape == (0, 3)

    @given(seeds, st.sampled_from([2, 7, 97]), st.integers(1, 3), st.integers(0, 3), st.integers(0, 3), st.booleans())
    def test_against_oracles(self, seed, p, m, extra, d, low):
        rng = np.random.default_rng(seed)
        K = PrimeField(p)
        n = m + extra
        F = random_low_rank(K, m, n, int(rng.integers(0, m + 1)), d, rng) if low else random_full_rank(K, m, n, d, rng)
        res = hermite_form(F)
        H = res.popov
        assert is_hermite(H)
        assert H == oracle_hermite(F)
        if not low:
            assert H == oracle_popov(F, hermite_shift(n, hermite_delta(F)))


class TestDegreeBounds:
    def test_example(self, example_matrix):
        b = degree_bounds(example_matrix, None, (0, 1))
        assert b.popov_degree_shift == 2
        assert b.popov_degree_global == 3
        assert b.transform_column_degrees == (1, 2)
        assert b.transform_degree == 3

    def test_zero_column_ignored(self, example_matrix):
        F = example_matrix.hstack(PolyMatrix.zeros(F7, 2, 1))
        assert degree_bounds(F, None, (0, 1)).popov_degree_global == 3

    def test_constant_shift(self, example_matrix):
        assert degree_bounds(example_matrix, (4, 4, 4), (0, 1)).popov_degree_shift == example_matrix.degree

    @given(seeds, st.sampled_from([2, 7, 97]), st.integers(1, 3), st.integers(0, 3), st.integers(0, 3), st.data())
    def test_bounds_hold(self, seed, p, m, extra, d, data):
        rng = np.random.default_rng(seed)
        n = m + extra
        F = random_full_rank(PrimeField(p), m, n, d, rng)
        s = data.draw(shifts(n))
        res = popov_form(F, s)
        b = degree_bounds(F, s, res.pivot_support)
        assert b.check_popov(res.popov)
        pi = list(res.pivot_support)
        U = unimodular_inverse(mat_quotient_left(F.columns(pi), res.popov.columns(pi)))
        assert U @ F == res.popov
        assert b.check_transform(U)

    def test_transform_bounds_concern_u_not_its_inverse(self):
        # B has rdeg (0, 1); the quotient B_pi * P_pi^-1 = [[0, 1], [1, x]] has a
        # degree-1 second column, above the bound 0, while U = [[x, 1], [1, 0]]
        # (U*B = P) meets it
        K = PrimeField(2)
        B = mat(K, [[[], [1]], [[0, 1], [0, 1]]])
        s = (3, 0)
        res = popov_form(B, s)
        assert res.popov == mat(K, [[[0, 1], []], [[], [1]]])
        b = degree_bounds(B, s, res.pivot_support)
        V = mat_quotient_left(B, res.popov)
        assert V == mat(K, [[[], [1]], [[1], [0, 1]]])
        assert not b.check_transform(V)
        U = unimodular_inverse(V)
        assert U == mat(K, [[[0, 1], [1]], [[1], []]])
        assert b.check_transform(U)
