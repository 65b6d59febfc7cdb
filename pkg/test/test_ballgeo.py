import unittest

import numpy as np
from numpy.testing import assert_allclose

import innercalc as ic
from innercalc import utils
from innercalc.dtypes import NotInBall, NotInterior, NotOnBoundary, NotUnitary, SingularPivot


def random_ks(n, m, seed):
    return ic.KSMorphism(n, m, ic.haar_unitary(n + m, seed))


def random_automorphism(n, trial, rng):
    """A transvection, a block diagonal unitary or their product, in turn"""
    transvection = ic.transvection_to(ic.sample_ball_point(n, 0.6, rng))
    unitary = utils.block_diag(ic.haar_unitary(n, rng), ic.haar_unitary(n, rng))
    return (transvection, unitary, transvection @ unitary)[trial % 3]


class TestKSMap(unittest.TestCase):

    def test_swap_is_identity_map(self):
        zeta = ic.KSMorphism(1, 1, np.array([[0, 1], [1, 0]]))
        assert_allclose(ic.ks_map(zeta, [[0.25]]), [[0.25]])

    def test_scalar_map(self):
        zeta = ic.KSMorphism(1, 1, np.array([[1, 1], [1, -1]]) / np.sqrt(2))
        for u in (0.0, 0.5, -0.3 + 0.4j):
            expected = (1 + np.sqrt(2) * u) / (np.sqrt(2) + u)
            assert_allclose(ic.ks_map(zeta, [[u]]), [[expected]], atol=1e-12)
        for angle in np.linspace(0, 2 * np.pi, 9, endpoint=False):
            self.assertAlmostEqual(abs(ic.ks_map(zeta, [[np.exp(1j * angle)]])[0, 0]), 1.0, places=10)

    def test_outside_ball(self):
        zeta = random_ks(1, 2, 0)
        with self.assertRaises(NotInBall):
            ic.ks_map(zeta, 2 * np.eye(2))

    def test_singular_pivot(self):
        # d = 1, so 1 - d u vanishes at u = 1
        zeta = ic.KSMorphism(1, 1, np.eye(2))
        with self.assertRaises(SingularPivot):
            ic.ks_map(zeta, [[1.0]])

    def test_non_unitary_rejected(self):
        with self.assertRaises(ValueError):
            ic.KSMorphism(1, 1, np.ones((2, 2)))

    def test_validation_tolerance(self):
        zeta = (1 + 1e-7) * np.eye(2)
        with self.assertRaises(NotUnitary):
            ic.KSMorphism(1, 1, zeta)
        self.assertEqual(ic.KSMorphism(1, 1, zeta, tol=ic.ToleranceConfig(atol=1e-6)).n, 1)


class TestCircledast(unittest.TestCase):

    def test_realizes_composition(self):
        rng = np.random.default_rng(5)
        for n, m, k in [(1, 1, 1), (2, 3, 1), (3, 2, 2)]:
            zeta = random_ks(n, m, rng)
            upsilon = random_ks(m, k, rng)
            u = ic.sample_ball_point(k, 0.9, rng)
            product = ic.circledast(zeta, upsilon)
            self.assertEqual((product.n, product.m), (n, k))
            assert_allclose(
                ic.ks_map(product, u), ic.ks_map(zeta, ic.ks_map(upsilon, u)), atol=1e-9
            )

    def test_product_is_unitary(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            product = ic.circledast(random_ks(2, 2, rng), random_ks(2, 3, rng), validate=False)
            self.assertLess(ic.unitarity_defect(product.zeta), 1e-9)

    def test_size_mismatch(self):
        with self.assertRaises(ValueError):
            ic.circledast(random_ks(2, 2, 0), random_ks(3, 1, 1))

    def test_vanishing_p(self):
        zeta = random_ks(2, 2, 9)
        Q, R = ic.haar_unitary(2, seed=10), ic.haar_unitary(2, seed=11)
        upsilon = ic.KSMorphism(2, 2, np.block([[np.zeros((2, 2)), Q], [R, np.zeros((2, 2))]]))
        Z = zeta.zeta
        a, b, c, d = Z[:2, :2], Z[:2, 2:], Z[2:, :2], Z[2:, 2:]
        expected = np.block([[a, b @ Q], [R @ c, R @ d @ Q]])
        assert_allclose(ic.circledast(zeta, upsilon).zeta, expected, atol=1e-12)

    def test_vanishing_d(self):
        B, C = ic.haar_unitary(2, seed=12), ic.haar_unitary(2, seed=13)
        zeta = ic.KSMorphism(2, 2, np.block([[np.zeros((2, 2)), B], [C, np.zeros((2, 2))]]))
        upsilon = random_ks(2, 3, 14)
        Y = upsilon.zeta
        p, q, r, t = Y[:2, :2], Y[:2, 2:], Y[2:, :2], Y[2:, 2:]
        expected = np.block([[B @ p @ C, B @ q], [r @ C, t]])
        assert_allclose(ic.circledast(zeta, upsilon).zeta, expected, atol=1e-12)


class TestMobius(unittest.TestCase):

    def setUp(self):
        self.h = ic.transvection_to(np.array([[0.3, 0.1], [0.0, -0.2j]]))
        self.g = ic.transvection_to(np.array([[-0.1, 0.2], [0.25, 0.1]]))
        self.z = np.array([[0.2, -0.1j], [0.3, 0.1]])

    def test_action_order(self):
        # Points are row-vector graphs, so the action composes on the right
        assert_allclose(
            ic.mobius(self.g, ic.mobius(self.h, self.z)),
            ic.mobius(self.h @ self.g, self.z),
            atol=1e-12,
        )

    def test_transvection_reaches_target(self):
        S0 = np.array([[0.5, 0.1], [0.0, 0.3]])
        assert_allclose(ic.mobius(ic.transvection_to(S0), np.zeros((2, 2))), S0, atol=1e-12)

    def test_transvection_needs_interior_point(self):
        with self.assertRaises(NotInterior):
            ic.transvection_to(np.eye(2))

    def test_preserves_ball(self):
        rng = np.random.default_rng(7)
        for trial in range(200):
            n = 1 + trial % 4
            h = random_automorphism(n, trial, rng)
            self.assertLess(ic.op_norm(ic.mobius(h, ic.sample_ball_point(n, 0.99, rng))), 1)

    def test_inverse(self):
        assert_allclose(self.h @ ic.pseudo_inverse_action(self.h), np.eye(4), atol=1e-12)
        back = ic.mobius(ic.pseudo_inverse_action(self.h), ic.mobius(self.h, self.z))
        assert_allclose(back, self.z, atol=1e-12)

    def test_mobius_ks(self):
        zeta = ic.mobius_ks(self.h)
        assert_allclose(ic.ks_map(zeta, self.z), ic.mobius(self.h, self.z), atol=1e-12)

    def test_rejects_non_pseudo_unitary(self):
        with self.assertRaises(ValueError):
            ic.mobius(2 * np.eye(4), self.z)


class TestStrata(unittest.TestCase):

    def test_classification(self):
        self.assertEqual(ic.stratum(np.diag([1.0, 0.5])).defect_rank, 1)
        self.assertTrue(ic.stratum(ic.haar_unitary(3, seed=0)).shilov)
        self.assertTrue(ic.stratum(np.zeros((2, 2))).interior)
        with self.assertRaises(NotInBall):
            ic.stratum(1.5 * np.eye(2))

    def test_invariant_under_automorphisms(self):
        rng = np.random.default_rng(8)
        u = np.diag([1.0, 0.3, 0.0])
        for trial in range(200):
            h = random_automorphism(3, trial, rng)
            self.assertEqual(ic.stratum(ic.mobius(h, u)).defect_rank, 1)

    def test_canonical_form_of_split_point(self):
        u = np.diag([0.2, 1.0])
        h, k = ic.canonical_component_form(u)
        self.assertEqual(k, 1)
        assert_allclose(ic.mobius(h, u), u, atol=1e-12)

    def test_canonical_form_moves_leading_identity(self):
        moving = np.array([[0.2, 0.1], [0.0, -0.3j]])
        u = utils.block_diag(np.eye(1), moving)
        h, k = ic.canonical_component_form(u)
        self.assertEqual(k, 1)
        self.assertTrue(ic.is_pseudo_unitary(h, 3))
        assert_allclose(ic.mobius(h, u), utils.block_diag(moving, np.eye(1)), atol=1e-12)

    def test_canonical_form_of_rotated_point(self):
        V, W = ic.haar_unitary(2, seed=1), ic.haar_unitary(2, seed=2)
        u = V @ np.diag([0.4, 1.0]) @ W.conj().T
        h, k = ic.canonical_component_form(u)
        image = ic.mobius(h, u)
        self.assertEqual(k, 1)
        assert_allclose(image[1, 1], 1, atol=1e-8)
        assert_allclose([image[0, 1], image[1, 0]], [0, 0], atol=1e-8)
        self.assertLess(abs(image[0, 0]), 1)

    def test_canonical_form_needs_boundary_point(self):
        with self.assertRaises(NotOnBoundary):
            ic.canonical_component_form(0.5 * np.eye(2))


if __name__ == '__main__':
    unittest.main()
