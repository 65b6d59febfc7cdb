import unittest

import numpy as np
from numpy.testing import assert_allclose

import innercalc as ic
from innercalc import utils
from innercalc._geometry import checked_solve


class Singular(Exception):
    pass


class TestKron(unittest.TestCase):

    def test_blocks_are_scaled_identities(self):
        S = np.array([[1, 2], [3, 4]], dtype=complex)
        K = ic.kron(ic.identity(2), S)
        self.assertEqual(K.shape, (4, 4))
        for mu in range(2):
            for nu in range(2):
                block = K[2 * mu : 2 * mu + 2, 2 * nu : 2 * nu + 2]
                assert_allclose(block, S[mu, nu] * np.eye(2))

    def test_matches_reversed_numpy_kron(self):
        rng = np.random.default_rng(0)
        A = rng.standard_normal((2, 3))
        B = rng.standard_normal((3, 2))
        assert_allclose(ic.kron(A, B), np.kron(B, A))

    def test_associative(self):
        rng = np.random.default_rng(1)
        A, B, C = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(3))
        assert_allclose(ic.kron(ic.kron(A, B), C), ic.kron(A, ic.kron(B, C)), atol=1e-12)

    def test_mixed_product(self):
        rng = np.random.default_rng(2)
        A, C = rng.standard_normal((2, 3)), rng.standard_normal((3, 2))
        B, D = rng.standard_normal((3, 4)) + 1j, rng.standard_normal((4, 2))
        assert_allclose(ic.kron(A, B) @ ic.kron(C, D), ic.kron(A @ C, B @ D), atol=1e-12)


class TestNorms(unittest.TestCase):

    def test_op_norm_small(self):
        self.assertAlmostEqual(ic.op_norm(np.diag([3.0, 1.0])), 3.0)
        self.assertAlmostEqual(ic.op_norm(np.array([[3.0, 0.0], [4.0, 0.0]])), 5.0)
        self.assertEqual(ic.op_norm(np.zeros((0, 0))), 0.0)

    def test_op_norm_properties(self):
        rng = np.random.default_rng(3)
        for n in (2, 4, 7):
            for _ in range(10):
                A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
                B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
                self.assertLessEqual(ic.op_norm(A @ B), ic.op_norm(A) * ic.op_norm(B) * (1 + 1e-12))
                V, W = ic.haar_unitary(n, rng), ic.haar_unitary(n, rng)
                self.assertAlmostEqual(ic.op_norm(V @ A @ W), ic.op_norm(A), places=9)

    def test_op_norm_power_iteration(self):
        values = np.linspace(0, 1, 70)
        values[-1] = 2.0
        assert_allclose(ic.op_norm(np.diag(values)), 2.0, rtol=1e-6)

    def test_unitarity(self):
        U = ic.haar_unitary(5, seed=1)
        self.assertTrue(ic.is_unitary(U))
        self.assertLess(ic.unitarity_defect(U), 1e-12)
        self.assertFalse(ic.is_unitary(2 * U))
        self.assertFalse(ic.is_unitary(np.ones((2, 3))))


class TestPseudoUnitary(unittest.TestCase):

    def test_form(self):
        J = ic.pseudo_unitary_form(2)
        assert_allclose(np.diag(J), [-1, -1, 1, 1])

    def test_membership(self):
        self.assertTrue(ic.is_pseudo_unitary(ic.identity(4), 2))
        h = ic.transvection_to(np.array([[0.3, 0.1], [0.0, -0.2]]))
        self.assertTrue(ic.is_pseudo_unitary(h, 2))
        self.assertFalse(ic.is_pseudo_unitary(2 * ic.identity(4), 2))

    def test_hyperbolic_rotation(self):
        t = 0.7
        h = np.array([[np.cosh(t), np.sinh(t)], [np.sinh(t), np.cosh(t)]])
        self.assertTrue(ic.is_pseudo_unitary(h, 1))
        assert_allclose(ic.mobius(h, [[0.0]]), [[np.tanh(t)]], atol=1e-12)

    def test_unitary_blocks_act_by_multiplication(self):
        u, v = ic.haar_unitary(2, seed=5), ic.haar_unitary(2, seed=6)
        h = utils.block_diag(u, v)
        self.assertTrue(ic.is_pseudo_unitary(h, 2))
        z = np.array([[0.2, -0.3j], [0.1, 0.4]])
        assert_allclose(ic.mobius(h, z), u.conj().T @ z @ v, atol=1e-12)

    def test_wrong_size(self):
        with self.assertRaises(ValueError):
            ic.is_pseudo_unitary(ic.identity(3), 2)


class TestSampling(unittest.TestCase):

    def test_haar_is_deterministic(self):
        assert_allclose(ic.haar_unitary(4, seed=3), ic.haar_unitary(4, seed=3))
        self.assertFalse(np.allclose(ic.haar_unitary(4, seed=3), ic.haar_unitary(4, seed=4)))

    def test_haar_empty(self):
        self.assertEqual(ic.haar_unitary(0, seed=0).shape, (0, 0))

    def test_haar_is_unitary(self):
        for n in (1, 2, 3, 8, 17, 32):
            for seed in range(100):
                U = ic.haar_unitary(n, seed=seed)
                assert_allclose(U.conj().T @ U, np.eye(n), atol=1e-12)

    def test_ball_point(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            self.assertLessEqual(ic.op_norm(ic.sample_ball_point(3, 0.7, rng)), 0.7 + 1e-12)
        with self.assertRaises(ValueError):
            ic.sample_ball_point(2, 1.0)


class TestToleranceConfig(unittest.TestCase):

    def test_validation(self):
        with self.assertRaises(ValueError):
            ic.ToleranceConfig(atol=0)
        with self.assertRaises(ValueError):
            ic.ToleranceConfig(cond_cap=0.5)

    def test_scaled(self):
        tol = ic.ToleranceConfig(atol=1e-6)
        self.assertEqual(tol.scaled(0), 1e-6)
        self.assertEqual(tol.scaled(4), 4e-6)

    def test_default(self):
        self.assertIs(ic.ToleranceConfig.resolve(None), ic.ToleranceConfig.default())
        self.assertEqual(ic.ToleranceConfig.default().atol, 1e-9)


class TestCheckedSolve(unittest.TestCase):

    def test_solves(self):
        M = np.array([[2, 1], [1, 3]], dtype=complex)
        rhs = np.array([[1], [2]], dtype=complex)
        assert_allclose(M @ checked_solve(M, rhs, Singular), rhs)

    def test_singular_raises_given_error(self):
        with self.assertRaises(Singular):
            checked_solve(np.zeros((2, 2)), np.ones((2, 1)), Singular)

    def test_empty(self):
        self.assertEqual(checked_solve(np.zeros((0, 0)), np.zeros((0, 2)), Singular).shape, (0, 2))


if __name__ == '__main__':
    unittest.main()
