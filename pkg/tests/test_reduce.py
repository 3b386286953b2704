import numpy as np
import pytest

from cpclass.congruence import random_orbit_sample
from cpclass.forms import FormBlock
from cpclass.matlin import Unsupported, takagi_factorization
from cpclass.pairs import MatrixPair, verify_certificate
from cpclass.reduce import (
    classify_pair_diag_A,
    classify_pair_low_dim,
    is_nondegenerate_point,
    normalize_B,
    prepare_reduction,
)
from cpclass.rows import ROWS, canonical_blocks, params_close, representative, row_id, row_parameter_grid, sign_free

from conftest import random_hermitian, random_symmetric


class TestRows:
    def test_count(self):
        assert len(ROWS) == 46
        assert {r.n for r in ROWS.values()} == {2, 3, 4}

    def test_ids_consistent(self):
        for rid, r in ROWS.items():
            assert rid == row_id(r.n, r.m, r.s, r.z, r.kind)
            assert r.m + r.s + r.rho + r.z == r.n

    def test_representatives_have_stated_shape(self):
        for rid, r in ROWS.items():
            for prm in row_parameter_grid(rid):
                p = representative(rid, prm)
                assert p.n == r.n
                assert np.linalg.matrix_rank(p.B) == r.m

    def test_describe(self):
        assert ROWS["n2.m0.s2.z0.I"].describe() == "I_2 / 0_2"
        assert ROWS["n4.m2.s0.z0.YY"].describe() == "[[0_2, I_2], [I_2, 0_2]] / I_2 (+) 0_2"

    def test_sign_free(self):
        assert sign_free({"inertia": (1, 1)})
        assert sign_free({})
        assert not sign_free({"inertia": (0, 1)})

    def test_canonical_blocks_idempotent(self):
        blocks = [FormBlock("H", 1, 1.0, -1), FormBlock("H", 1, 0.5, -1)]
        once = canonical_blocks(blocks)
        assert canonical_blocks(once) == once

    def test_params_close(self):
        assert params_close({"b": 1.0}, {"b": 1.0 + 1e-9}, 1e-6)
        assert not params_close({"b": 1.0}, {"b": 1.1}, 1e-6)
        assert not params_close({"b": 1.0}, {"a": 1.0}, 1e-6)


class TestNormalizeB:
    def test_identity_unchanged(self, rng):
        A = random_hermitian(rng, 3)
        q, cert, m = normalize_B(MatrixPair(A, np.eye(3)))
        assert m == 3
        assert np.allclose(q.A, A) and np.allclose(q.B, np.eye(3))

    def test_diag_example(self):
        q, cert, m = normalize_B(MatrixPair(np.eye(2), np.diag([4.0, 0.0])))
        assert m == 1
        assert np.allclose(q.A, np.diag([0.25, 1.0]))
        assert np.allclose(q.B, np.diag([1.0, 0.0]))

    def test_backward_identity(self):
        E2 = np.array([[0, 1], [1, 0]], dtype=complex)
        q, cert, m = normalize_B(MatrixPair(np.eye(2), E2))
        U, _, _ = takagi_factorization(E2)
        assert m == 2 and np.allclose(q.B, np.eye(2))
        assert np.allclose(q.A, cert.P.conj().T @ cert.P)
        assert max(verify_certificate((np.eye(2), E2), q, cert)) <= 1e-12

    def test_random_certified(self, rng):
        for n in (2, 4, 5):
            for m in range(n + 1):
                p = MatrixPair(random_hermitian(rng, n), random_symmetric(rng, n, rank=m))
                q, cert, mm = normalize_B(p)
                assert mm == m
                assert max(verify_certificate(p, q, cert)) <= 1e-8


class TestPrepare:
    def test_shear_2x2(self):
        for a in (-2.0, 0.0, 3.0):
            p = MatrixPair([[a, 1], [1, 0]], np.diag([1.0, 0.0]))
            rp = prepare_reduction(p)
            assert np.allclose(rp.A, [[0, 1], [1, 0]], atol=1e-10)
            assert max(verify_certificate(p, (rp.A, rp.B), rp.witness)) <= 1e-10

    @pytest.mark.parametrize("eps", [1.0, -1.0])
    def test_shear_3x3(self, eps):
        p = MatrixPair([[2.0, 0, 1], [0, eps, 0], [1, 0, 0]], np.diag([1.0, 0, 0]))
        rp = prepare_reduction(p)
        assert rp.pattern_residual() <= 1e-10
        assert list(rp.script_I) == [1.0]
        # the inertia block is normalized to trace >= 0 by c = -1 when needed
        assert rp.witness.c == (1 if eps > 0 else -1)

    def test_block_diagonal_input(self):
        p = MatrixPair(np.diag([2.0, 1.0, -1.0, 1.0]), np.diag([1.0, 1.0, 0, 0]))
        rp = prepare_reduction(p)
        assert rp.k == 0 and rp.stage == 1
        assert rp.pattern_residual() <= 1e-10

    def test_random_patterns(self, rng):
        for n in (3, 4, 5):
            for m in range(1, n):
                A = random_hermitian(rng, n)
                A[m:, m:] = 0
                p, _ = random_orbit_sample(MatrixPair(A, np.diag([1.0] * m + [0.0] * (n - m))), seed=n * 10 + m)
                rp = prepare_reduction(p)
                assert rp.pattern_residual() <= 1e-8
                assert max(verify_certificate(p, (rp.ideal(), rp.B), rp.witness)) <= 1e-8
                if m >= n - m:
                    assert rp.stage == 2 and rp.L is None


class TestNondegenerate:
    def test_examples(self):
        assert is_nondegenerate_point(MatrixPair(np.eye(2), np.zeros((2, 2))))
        assert not is_nondegenerate_point(MatrixPair(np.zeros((1, 1)), np.zeros((1, 1))))
        assert is_nondegenerate_point(MatrixPair(np.zeros((2, 2)), np.eye(2)))


class TestClassify:
    def test_hyperbolic_plane(self):
        lab = classify_pair_low_dim(MatrixPair([[0, 1], [1, 0]], np.diag([1.0, 0.0])))
        assert lab.table_row == "n2.m1.s0.z0.Y"

    def test_inertia_only(self):
        lab = classify_pair_low_dim(MatrixPair(np.eye(3), np.zeros((3, 3))))
        assert lab.table_row == "n3.m0.s3.z0.I"
        assert lab.parameters["inertia"] == (0, 3)

    def test_negative_inertia_flips(self):
        lab = classify_pair_low_dim(MatrixPair(-np.eye(3), np.zeros((3, 3))))
        assert lab.parameters["inertia"] == (0, 3)
        assert lab.certificate.c == -1

    @pytest.mark.parametrize("a", [1.0, 0.0, 2.0])
    def test_isotropic_n3(self, a):
        A = np.array([[0, 0, 1], [0, a, 1j], [1, -1j, 0]])
        lab = classify_pair_low_dim(MatrixPair(A, np.diag([1.0, 1.0, 0.0])))
        assert ROWS[lab.table_row].m == 2 and ROWS[lab.table_row].n == 3
        assert max(lab.residuals) <= 1e-8

    def test_all_rows_closed(self):
        for rid in ROWS:
            for prm in row_parameter_grid(rid)[:3]:
                lab = classify_pair_low_dim(representative(rid, prm))
                assert lab.table_row == rid
                assert params_close(lab.parameters, prm, 1e-6)

    def test_orbit_samples(self):
        for i, rid in enumerate(ROWS):
            prm = row_parameter_grid(rid)[0]
            p, _ = random_orbit_sample(representative(rid, prm), seed=i)
            lab = classify_pair_low_dim(p)
            assert lab.table_row == rid
            assert max(verify_certificate(p, lab.representative, lab.certificate)) <= 1e-8

    def test_size_limits(self):
        with pytest.raises(Unsupported):
            classify_pair_low_dim(MatrixPair(np.eye(5), np.eye(5)))
        with pytest.raises(Unsupported):
            classify_pair_low_dim(MatrixPair(np.eye(1), np.eye(1)))


class TestDiagA:
    def test_rank_one_b(self):
        lab = classify_pair_diag_A(MatrixPair([[0, 1], [1, 0]], np.diag([1.0, 0.0])))
        assert np.allclose(lab.representative.A, np.diag([-1.0, 1.0]))
        assert np.allclose(lab.representative.B, 0.5 * np.array([[1, -1], [-1, 1]]), atol=1e-10)
        assert np.linalg.matrix_rank(lab.representative.B) == 1

    def test_fixed_points(self):
        for A, B in ((np.diag([-1.0, 1.0]), 0.5 * np.array([[1, -1], [-1, 1]])), (np.zeros((2, 2)), np.eye(2))):
            lab = classify_pair_diag_A(MatrixPair(A, B))
            assert np.allclose(lab.representative.A, A)
            assert np.allclose(lab.representative.B, B, atol=1e-10)

    def test_certified_on_orbit(self):
        for i, rid in enumerate([r for r in ROWS if ROWS[r].n == 3]):
            p, _ = random_orbit_sample(representative(rid, row_parameter_grid(rid)[0]), seed=i)
            lab = classify_pair_diag_A(p)
            assert lab.table_row == "A:" + rid
            assert max(lab.residuals) <= 1e-8

    def test_n4_unsupported(self):
        with pytest.raises(Unsupported):
            classify_pair_diag_A(MatrixPair(np.eye(4), np.eye(4)))
