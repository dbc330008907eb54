import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F7, mat, matrices, seeds
from polyforms.gfp import PrimeField
from polyforms.polymat import PolyMatrix, is_hermite, is_popov
from polyforms.testkit import (
    InstanceSpec,
    oracle_hermite,
    oracle_popov,
    oracle_rank,
    random_full_rank,
    random_low_rank,
    random_unimodular,
    row_space_equal,
)


def test_oracle_examples(example_matrix, example_popov):
    assert oracle_popov(example_matrix) == example_popov
    I = PolyMatrix.identity(F7, 3)
    assert oracle_popov(I) == I


def test_oracle_hermite_shift_gives_echelon():
    rng = np.random.default_rng(11)
    F = random_full_rank(F7, 2, 3, 2, rng)
    H = oracle_hermite(F)
    assert is_hermite(H) and H.shape == (2, 3)


@given(matrices(max_rows=4, max_cols=4))
def test_oracle_is_popov_and_idempotent(F):
    P = oracle_popov(F)
    assert is_popov(P)
    assert oracle_popov(P) == P


def test_unimodular_examples():
    assert random_unimodular(F7, 3, 0, ops=0) == PolyMatrix.identity(F7, 3)
    E = mat(F7, [[[1], []], [[0, 1], [1]]])  # row2 += x * row1
    assert E @ PolyMatrix.identity(F7, 2) == E
    assert oracle_popov(E) == PolyMatrix.identity(F7, 2)


@given(seeds, st.sampled_from([2, 3, 7, 97]), st.integers(1, 5), st.integers(0, 3))
def test_unimodular_has_identity_popov_form(seed, p, m, d):
    K = PrimeField(p)
    U = random_unimodular(K, m, d, np.random.default_rng(seed))
    assert oracle_popov(U) == PolyMatrix.identity(K, m)


def test_row_space_examples(example_matrix):
    U = random_unimodular(F7, 2, 2, np.random.default_rng(0))
    assert row_space_equal(example_matrix, U @ example_matrix)
    assert not row_space_equal(mat(F7, [[[0, 1], [1]]]), mat(F7, [[[0, 0, 1], [0, 1]]]))
    padded = example_matrix.vstack(PolyMatrix.zeros(F7, 1, 3))
    assert row_space_equal(example_matrix, padded)


@given(matrices(max_rows=3, max_cols=3, primes=(2, 3)), matrices(max_rows=3, max_cols=3, primes=(2, 3)),
       matrices(max_rows=3, max_cols=3, primes=(2, 3)))
def test_row_space_equivalence(A, B, C):
    assert row_space_equal(A, A)
    if A.field == B.field and A.ncols == B.ncols:
        assert row_space_equal(A, B) == row_space_equal(B, A)
        if B.field == C.field and B.ncols == C.ncols and row_space_equal(A, B) and row_space_equal(B, C):
            assert row_space_equal(A, C)


@given(seeds, st.integers(1, 4), st.integers(0, 4), st.integers(0, 3))
def test_low_rank_generator(seed, m, r, d):
    F = random_low_rank(F7, m, m + 2, min(r, m), d, np.random.default_rng(seed))
    assert oracle_rank(F) <= min(r, m)


@pytest.mark.parametrize("profile", ["zero", "uniform", "hermite"])
def test_instance_spec(profile):
    spec = InstanceSpec(p=7, m=2, n=4, d=2, shift=profile, seed=3)
    F, s = spec.generate()
    F2, s2 = spec.generate()
    assert F == F2 and s == s2
    assert oracle_rank(F) == 2 and len(s) == 4
    with pytest.raises(ValueError):
        InstanceSpec(p=7, m=3, n=2, d=1)
