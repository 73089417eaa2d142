import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamsim.linalg import (DimensionError, commutator, eig, expm,
                           frobenius_norm, kron)

from conftest import random_complex_matrix


def expm_series(a: np.ndarray, terms: int = 64) -> np.ndarray:
    """Independent Taylor-series oracle (adequate for moderate norms)."""
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    return out


class TestExpm:
    def test_zero(self):
        assert np.allclose(expm(np.zeros((3, 3))), np.eye(3))

    def test_diagonal(self):
        d = np.array([1.0 + 2.0j, -0.5, 3.0j])
        assert np.allclose(expm(np.diag(d)), np.diag(np.exp(d)))

    @given(seed=st.integers(0, 10 ** 6), n=st.sampled_from([2, 3, 9]),
           scale=st.floats(0.01, 3.0))
    @settings(max_examples=60, deadline=None)
    def test_matches_series_oracle(self, seed, n, scale):
        a = random_complex_matrix(np.random.default_rng(seed), n, scale)
        assert np.allclose(expm(a), expm_series(a), atol=1e-12), \
            "disagrees with Taylor-series oracle"

    @given(seed=st.integers(0, 10 ** 6))
    @settings(max_examples=30, deadline=None)
    def test_inverse_identity(self, seed):
        a = random_complex_matrix(np.random.default_rng(seed), 3)
        assert np.allclose(expm(a) @ expm(-a), np.eye(3), atol=1e-10)

    @given(seed=st.integers(0, 10 ** 6))
    @settings(max_examples=30, deadline=None)
    def test_determinant_is_exp_trace(self, seed):
        a = random_complex_matrix(np.random.default_rng(seed), 3)
        assert np.isclose(np.linalg.det(expm(a)), np.exp(np.trace(a)))

    def test_large_norm_scaling(self):
        # norm far above the Pade threshold exercises the squaring phase
        a = 50.0 * np.array([[0.0, 1.0], [-1.0, 0.0]])
        expected = np.array([[math.cos(50.0), math.sin(50.0)],
                             [-math.sin(50.0), math.cos(50.0)]])
        assert np.allclose(expm(a), expected, atol=1e-11)

    def test_anti_hermitian_gives_unitary(self, rng):
        h = random_complex_matrix(rng, 3)
        h = h + h.conj().T
        u = expm(-1j * h)
        assert np.allclose(u @ u.conj().T, np.eye(3), atol=1e-13)

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            expm(np.zeros((2, 3)))

    def test_non_finite_input_raises(self):
        with pytest.raises(FloatingPointError):
            expm(np.array([[1e308, 1e308], [1e308, 1e308]]))


class TestKron:
    @given(seed=st.integers(0, 10 ** 6))
    @settings(max_examples=40, deadline=None)
    def test_mixed_product(self, seed):
        r = np.random.default_rng(seed)
        a, b, c, d = (random_complex_matrix(r, 3) for _ in range(4))
        assert np.allclose(kron(a, b) @ kron(c, d), kron(a @ c, b @ d))

    def test_shape(self):
        assert kron(np.eye(3), np.eye(3)).shape == (9, 9)

    def test_bilinear(self, rng):
        a = random_complex_matrix(rng, 3)
        b = random_complex_matrix(rng, 3)
        c = random_complex_matrix(rng, 3)
        assert np.allclose(kron(a + 2.0 * b, c),
                           kron(a, c) + 2.0 * kron(b, c))


class TestEig:
    def test_known_2x2(self):
        vals = np.sort_complex(eig(np.array([[0.0, 1.0], [1.0, 0.0]])))
        assert np.allclose(vals, [-1.0, 1.0])

    @given(seed=st.integers(0, 10 ** 6))
    @settings(max_examples=40, deadline=None)
    def test_trace_and_det(self, seed):
        a = random_complex_matrix(np.random.default_rng(seed), 4)
        vals = eig(a)
        assert np.isclose(vals.sum(), np.trace(a))
        assert np.isclose(np.prod(vals), np.linalg.det(a))

    def test_dimension_cap(self):
        with pytest.raises(DimensionError):
            eig(np.eye(65))


class TestCommutator:
    def test_antisymmetric(self, rng):
        a = random_complex_matrix(rng, 3)
        b = random_complex_matrix(rng, 3)
        assert np.allclose(commutator(a, b), -commutator(b, a))

    def test_jacobi(self, rng):
        a, b, c = (random_complex_matrix(rng, 3) for _ in range(3))
        total = (commutator(a, commutator(b, c))
                 + commutator(b, commutator(c, a))
                 + commutator(c, commutator(a, b)))
        assert np.allclose(total, 0.0, atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            commutator(np.eye(2), np.eye(3))


def test_frobenius_norm_value():
    assert frobenius_norm(np.array([[3.0, 0.0], [0.0, 4.0j]])) == \
        pytest.approx(5.0)
