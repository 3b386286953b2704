import numpy as np
import pytest

from cpclass.matlin import (
    DEFAULT_TOL,
    NotHermitian,
    NotSymmetric,
    Tolerances,
    backward_identity,
    direct_sum,
    is_hermitian,
    is_symmetric,
    numerical_rank,
    sylvester_inertia,
    takagi_factorization,
)

from conftest import random_hermitian, random_symmetric


def _check_takagi(B, U, s, m):
    n = B.shape[0]
    assert np.allclose(U.conj().T @ U, np.eye(n), atol=1e-10)
    D = U.T @ B @ U
    target = np.zeros((n, n), dtype=complex)
    target[np.arange(m), np.arange(m)] = s
    assert np.allclose(D, target, atol=1e-10 * max(1.0, np.linalg.norm(B)))


class TestTolerances:
    def test_defaults(self):
        t = Tolerances()
        assert t.eig_cluster_tol == 1e-6
        assert t.residual_tol == 1e-8
        assert t.rank_cutoff(4) == pytest.approx(4 * np.finfo(float).eps * 64)

    def test_explicit_rank_tol(self):
        assert Tolerances(rank_tol=1e-9).rank_cutoff(100) == 1e-9

    @pytest.mark.parametrize("kw", [{"rank_tol": 0.0}, {"rank_tol": 2.0}, {"eig_cluster_tol": 0.0}, {"residual_tol": -1}])
    def test_rejects_bad_values(self, kw):
        with pytest.raises(ValueError):
            Tolerances(**kw)

    def test_with_copies(self):
        t = DEFAULT_TOL.with_(residual_tol=1e-6)
        assert t.residual_tol == 1e-6 and DEFAULT_TOL.residual_tol == 1e-8


class TestTakagi:
    def test_random_full_rank(self, rng):
        for n in range(1, 7):
            B = random_symmetric(rng, n)
            U, s, m = takagi_factorization(B)
            assert m == n
            assert np.all(np.diff(s) <= 1e-12)
            _check_takagi(B, U, s, m)

    def test_low_rank(self, rng):
        B = random_symmetric(rng, 5, rank=2)
        U, s, m = takagi_factorization(B)
        assert m == 2
        _check_takagi(B, U, s, m)

    def test_repeated_values(self):
        # unitary symmetric matrices have all Takagi values equal to 1
        B = np.array([[0, 1], [1, 0]], dtype=complex)
        U, s, m = takagi_factorization(B)
        assert np.allclose(s, [1, 1])
        _check_takagi(B, U, s, m)

    def test_identity_and_zero(self):
        U, s, m = takagi_factorization(np.eye(3))
        _check_takagi(np.eye(3), U, s, m)
        U, s, m = takagi_factorization(np.zeros((3, 3)))
        assert m == 0 and s.size == 0

    def test_rejects_nonsymmetric(self):
        with pytest.raises(NotSymmetric):
            takagi_factorization([[1, 2], [3, 4]])


class TestInertia:
    def test_transform(self, rng):
        for n in range(1, 7):
            A = random_hermitian(rng, n)
            it = sylvester_inertia(A)
            T = it.transform
            assert it.n_neg + it.n_pos + it.n_zero == n
            assert np.allclose(T.conj().T @ A @ T, it.matrix, atol=1e-10)

    def test_singular(self):
        A = np.diag([2.0, 0.0, -3.0, 0.0])
        it = sylvester_inertia(A)
        assert it.signature == (1, 1, 2)
        assert np.allclose(it.transform.conj().T @ A @ it.transform, np.diag([-1, 1, 0, 0]))

    def test_invariant_under_congruence(self, rng):
        A = random_hermitian(rng, 5)
        P = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        assert sylvester_inertia(P.conj().T @ A @ P).signature == sylvester_inertia(A).signature

    def test_rejects_nonhermitian(self):
        with pytest.raises(NotHermitian):
            sylvester_inertia([[0, 1], [0, 0]])


class TestHelpers:
    def test_rank(self):
        assert numerical_rank(np.diag([1.0, 1e-20, 0])) == 1
        assert numerical_rank(np.zeros((3, 3))) == 0

    def test_direct_sum(self):
        M = direct_sum(np.eye(2), [[5.0]])
        assert M.shape == (3, 3) and M[2, 2] == 5 and M[0, 2] == 0

    def test_backward_identity(self):
        E = backward_identity(3)
        assert np.array_equal(E @ E, np.eye(3))
        assert E[0, 2] == 1

    def test_predicates(self):
        assert is_hermitian([[1, 1j], [-1j, 2]])
        assert not is_hermitian([[1, 1j], [1j, 2]])
        assert is_symmetric([[1, 1j], [1j, 2]])
        assert not is_symmetric([[1, 1j], [-1j, 2]])
