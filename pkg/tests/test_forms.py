import numpy as np
import pytest

from cpclass.blocks import block_H, block_K, block_L
from cpclass.forms import (
    FormBlock,
    assemble_form1,
    flip_form1,
    form1,
    form2,
    form2_to_form1,
    form3,
    generic_forms,
    polynomial_discriminant,
    small_block_reference,
)
from cpclass.matlin import NotHermitian, Unsupported, direct_sum

from conftest import random_hermitian


def _labels(f):
    return [b.label() for b in f.blocks]


class TestForm1:
    def test_random(self, rng):
        for n in range(1, 7):
            A = random_hermitian(rng, n)
            f = form1(A)
            r_form, r_orth = f.residuals(A)
            assert r_form <= 1e-8 and r_orth <= 1e-8

    def test_known_blocks(self):
        A = direct_sum(block_K(1, 2.0), block_H(1, 0.5), -block_H(2, 1.0))
        assert _labels(form1(A)) == ["+H1(0.5)", "-H2(1)", "K1(2)"]

    def test_orthogonal_invariance(self, rng):
        A = direct_sum(block_H(2, 0.3), block_L(1, 0.5 - 1j))
        Q = np.linalg.qr(rng.standard_normal((4, 4)))[0]
        assert _labels(form1(Q @ A @ Q.T)) == _labels(form1(A))

    def test_zero_matrix(self):
        f = form1(np.zeros((2, 2)))
        assert _labels(f) == ["+H1(0)", "+H1(0)"]

    def test_rejects_nonhermitian(self):
        with pytest.raises(NotHermitian):
            form1([[0, 1], [0, 0]])


class TestFlip:
    def test_flip_is_form_of_negative(self, rng):
        for n in (2, 3, 4):
            A = random_hermitian(rng, n)
            g = flip_form1(form1(A))
            r_form, r_orth = g.residuals(-A)
            assert r_form <= 1e-8 and r_orth <= 1e-8
            assert _labels(g) == _labels(form1(-A))

    def test_h3_zero_is_sign_free(self):
        # Q = -1 (+) 1 (+) -1 is orthogonal and carries H3(0) to -H3(0)
        H3 = block_H(3, 0.0)
        Q = np.diag([-1.0, 1.0, -1.0])
        assert np.allclose(Q.T @ Q, np.eye(3))
        assert np.allclose(Q.conj().T @ H3 @ Q, -H3)
        assert _labels(form1(H3)) == _labels(form1(-H3))

    def test_h2_sign_matters(self):
        assert _labels(form1(block_H(2, 1.0))) != _labels(form1(-block_H(2, 1.0)))


class TestForm2:
    def test_structure(self, rng):
        A = random_hermitian(rng, 4)
        f2 = form2(A)
        E = f2.E
        assert np.allclose(E, E.T) and np.allclose(E @ E, np.eye(4))
        assert np.allclose(f2.J, f2.J.conj().T)

    def test_roundtrip(self, rng):
        for n in (2, 3, 5):
            A = random_hermitian(rng, n)
            assert _labels(form2_to_form1(form2(A))) == _labels(form1(A))

    def test_k_block_parameter(self):
        f2 = form2(block_K(1, 1.5))
        assert f2.blocks[0].kind == "K"
        assert f2.blocks[0].param == pytest.approx((0.0, 1.5))


class TestForm3:
    def test_h2_zero(self):
        # N = [[0, 1], [1, 0]] with inertia 1 (+) 0
        f3 = form3(block_H(2, 0.0))
        assert (f3.inertia.n_neg, f3.inertia.n_pos, f3.inertia.n_zero) == (0, 1, 1)
        assert np.allclose(f3.N, [[0, 1], [1, 0]], atol=1e-8)

    def test_certificate(self, rng):
        A = random_hermitian(rng, 4)
        f3 = form3(A)
        P = f3.certificate
        I = f3.inertia.matrix
        assert np.allclose(f3.form1.global_sign * P.conj().T @ A @ P, I, atol=1e-8)
        assert np.allclose(P.T @ P, f3.N, atol=1e-8)

    def test_k1(self):
        f3 = form3(block_K(1, 2.0))
        assert np.allclose(f3.N, [[0, 0.5], [0.5, 0]], atol=1e-8)


class TestGeneric:
    def test_agrees_with_general(self, rng):
        hits = 0
        for _ in range(30):
            A = random_hermitian(rng, 3)
            g = generic_forms(A)
            if g is None:
                continue
            hits += 1
            assert _labels(g[0]) == _labels(form1(A))
        assert hits > 10

    def test_rejects_repeated_root(self):
        assert generic_forms(np.eye(2)) is None


class TestReference:
    @pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0])
    def test_h2_eigenvalues(self, x):
        ref = small_block_reference("H", 2, x)
        assert np.allclose(np.linalg.eigvalsh(block_H(2, x)), ref["eigenvalues"], atol=1e-12)

    def test_h3_discriminant(self):
        for x in (0.0, 0.3, 1.0):
            ref = small_block_reference("H", 3, x)
            assert polynomial_discriminant(ref["char_poly"]) == pytest.approx(ref["discriminant"])
            assert polynomial_discriminant(np.poly(block_H(3, x))) == pytest.approx(32 * x**4 + 13 * x**2 + 4)

    def test_h4_double_root_only_at_zero(self):
        assert abs(polynomial_discriminant(np.poly(block_H(4, 0.0)))) < 1e-10
        assert polynomial_discriminant(np.poly(block_H(4, 0.5))).real > 0

    def test_quadratic_discriminant(self):
        assert polynomial_discriminant([1, 0, -1]) == pytest.approx(4)
        with pytest.raises(ValueError):
            polynomial_discriminant([3.0])

    def test_k2_table_corrected(self):
        ref = small_block_reference("K", 2, 1.0)
        # both agree at y = 1
        assert np.allclose(ref["N"], ref["N_corrected"])

    def test_unknown_block(self):
        with pytest.raises(Unsupported):
            small_block_reference("H", 5, 0.0)

    def test_assemble(self):
        M = assemble_form1([FormBlock("H", 1, 2.0, -1), FormBlock("K", 1, 1.0)])
        assert M.shape == (3, 3) and M[0, 0] == -2
