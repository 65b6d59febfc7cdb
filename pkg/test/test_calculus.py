import unittest

import numpy as np
from numpy.testing import assert_allclose

import innercalc as ic
from innercalc import utils
from innercalc._colligations import probe_points
from innercalc.dtypes import (
    CompositionSingular,
    ImageNotInComponent,
    NotBlockDiagonal,
    SingularOnComponent,
    SplitSingular,
)

ATOL = 1e-8


def points(m, count=5, seed=0):
    rng = np.random.default_rng(seed)
    return [ic.sample_ball_point(m, 0.9, rng) for _ in range(count)]


class TestDirectSumAndProduct(unittest.TestCase):

    def test_direct_sum(self):
        g = ic.random_colligation(2, 2, 1, seed=1)
        h = ic.random_colligation(1, 2, 2, seed=2)
        F = ic.direct_sum(g, h)
        self.assertEqual(F.shape, (3, 2, 3))
        for S in points(2):
            assert_allclose(F(S), utils.block_diag(g(S), h(S)), atol=ATOL)

    def test_direct_sum_with_constant(self):
        g = ic.random_colligation(1, 1, 2, seed=1)
        F = ic.direct_sum(g, ic.identity_colligation(2, 1))
        for S in points(1):
            assert_allclose(F(S), utils.block_diag(g(S), np.eye(2)), atol=ATOL)

    def test_direct_sum_needs_equal_m(self):
        with self.assertRaises(ValueError):
            ic.direct_sum(ic.random_colligation(1, 1, 1, seed=0), ic.random_colligation(1, 2, 1, seed=0))

    def test_odot_product(self):
        g = ic.random_colligation(2, 2, 2, seed=3)
        h = ic.random_colligation(2, 2, 1, seed=4)
        F = ic.odot_product(g, h)
        self.assertEqual(F.shape, (2, 2, 3))
        for S in points(2):
            assert_allclose(F(S), g(S) @ h(S), atol=ATOL)

    def test_odot_product_needs_equal_shapes(self):
        with self.assertRaises(ValueError):
            ic.odot_product(ic.random_colligation(1, 1, 1, seed=0), ic.random_colligation(2, 1, 1, seed=0))


class TestTensor(unittest.TestCase):

    def test_inflations(self):
        g = ic.random_colligation(2, 2, 1, seed=5)
        left = ic.inflate_left(g, 3)
        right = ic.inflate_right(g, 3)
        self.assertEqual(left.shape, (6, 2, 3))
        self.assertEqual(right.shape, (6, 2, 3))
        for S in points(2):
            assert_allclose(left(S), ic.kron(np.eye(3), g(S)), atol=ATOL)
            assert_allclose(right(S), ic.kron(g(S), np.eye(3)), atol=ATOL)

    def test_tensor_product(self):
        g = ic.random_colligation(2, 2, 1, seed=6)
        h = ic.random_colligation(3, 2, 2, seed=7)
        F = ic.tensor_product(g, h)
        self.assertEqual(F.shape, (6, 2, 1 * 3 + 2 * 2))
        for S in points(2):
            assert_allclose(F(S), ic.kron(g(S), h(S)), atol=ATOL)

    def test_tensor_power(self):
        g = ic.random_colligation(2, 1, 1, seed=8)
        assert_allclose(ic.tensor_power(g, 0)(np.array([[0.3]])), [[1]])
        F = ic.tensor_power(g, 2)
        for S in points(1):
            assert_allclose(F(S), ic.kron(g(S), g(S)), atol=ATOL)


class TestCompose(unittest.TestCase):

    def test_compose(self):
        F = ic.random_colligation(2, 3, 1, seed=9)
        G = ic.random_colligation(1, 2, 2, seed=10)
        H = ic.compose(G, F)
        self.assertEqual(H.shape, (1, 3, 2))
        for S in points(3):
            assert_allclose(H(S), G(F(S)), atol=ATOL)

    def test_compose_needs_matching_balls(self):
        with self.assertRaises(ValueError):
            ic.compose(ic.random_colligation(1, 2, 1, seed=0), ic.random_colligation(1, 1, 1, seed=0))

    def test_singular_composition(self):
        # d of G is 1 and F is the constant 1, so 1 - p d vanishes
        G = ic.Colligation(1, 1, 1, ic.identity(2))
        F = ic.identity_colligation(1, 1)
        with self.assertRaises(CompositionSingular):
            ic.compose(G, F)
        with self.assertRaises(CompositionSingular):
            ic.compose(G, F, probe=np.array([[0.5]]))

    def test_compose_through_probe(self):
        # Theta[F](0) = diag(0.99, 0) against d = diag(1, 0) has condition number 100
        r = 0.99
        s = np.sqrt(1 - r ** 2)
        f = ic.Colligation(1, 1, 1, np.array([[r, s], [s, -r]]))
        F = ic.direct_sum(f, ic.Colligation(1, 1, 1, np.array([[0.0, 1.0], [1.0, 0.0]])))
        G = ic.Colligation(1, 2, 1, np.array([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]))
        tol = ic.ToleranceConfig(cond_cap=50.0)
        with self.assertRaises(CompositionSingular):
            ic.compose(G, F, tol=tol)
        with self.assertRaises(CompositionSingular):
            ic.compose(G, F, probe=np.zeros((1, 1)), tol=tol)

        H = ic.compose(G, F, probe=np.array([[-0.9]]), tol=tol)
        self.assertEqual(H.shape[:2], (1, 1))
        for S in points(1, 10):
            assert_allclose(H(S), G(F(S)), atol=ATOL)
        assert_allclose(H(np.zeros((1, 1))), G(F(np.zeros((1, 1)))), atol=ATOL)

    def test_automorphisms(self):
        F = ic.random_colligation(2, 2, 1, seed=12)
        h_source = ic.transvection_to(np.array([[0.3, 0.0], [0.1j, -0.2]]))
        h_target = ic.transvection_to(np.array([[0.1, 0.2], [0.0, 0.4]]))
        pre = ic.aut_precompose(F, h_source)
        post = ic.aut_postcompose(F, h_target)
        for S in points(2):
            assert_allclose(pre(S), F(ic.mobius(h_source, S)), atol=ATOL)
            assert_allclose(post(S), ic.mobius(h_target, F(S)), atol=ATOL)


class TestSplit(unittest.TestCase):

    def test_split_recovers_summands(self):
        g = ic.random_colligation(1, 2, 2, seed=13)
        h = ic.random_colligation(2, 2, 1, seed=14)
        first, second = ic.split_off(ic.direct_sum(g, h), ic.SplitSpec(1, 2))
        for S in points(2, 20):
            assert_allclose(first(S), g(S), atol=ATOL)
            assert_allclose(second(S), h(S), atol=ATOL)

    def test_split_off_constant_identity(self):
        # The plain pivot is singular against the constant 1_k summand
        g = ic.random_colligation(2, 1, 2, seed=15)
        first, second = ic.split_off(ic.direct_sum(g, ic.identity_colligation(1, 1)), ic.SplitSpec(2, 1))
        for S in points(1, 20):
            assert_allclose(first(S), g(S), atol=ATOL)
            assert_allclose(second(S), np.eye(1), atol=ATOL)

    def test_trivial_split(self):
        F = ic.random_colligation(2, 1, 1, seed=16)
        first, second = ic.split_off(F, ic.SplitSpec(2, 0))
        self.assertIs(first, F)
        self.assertEqual(second.alpha, 0)

    def test_not_block_diagonal(self):
        F = ic.random_colligation(2, 1, 2, seed=17)
        with self.assertRaises(NotBlockDiagonal):
            ic.split_off(F, ic.SplitSpec(1, 1))

    def test_split_singular_for_both_twists(self):
        # The constant block has eigenvalues 1 and -1, so neither twist helps
        g = ic.random_colligation(1, 1, 1, seed=22)
        constant = ic.Colligation(2, 1, 0, np.diag([1.0, -1.0]))
        with self.assertRaises(SplitSingular):
            ic.split_off(ic.direct_sum(g, constant), ic.SplitSpec(1, 2))

    def test_sizes_must_add_up(self):
        with self.assertRaises(ValueError):
            ic.split_off(ic.random_colligation(2, 1, 1, seed=0), ic.SplitSpec(1, 2))

    def test_split_spec_validation(self):
        with self.assertRaises(ValueError):
            ic.SplitSpec(1, 1, lambda_twist=1)
        with self.assertRaises(ValueError):
            ic.SplitSpec(1, 1, lambda_twist=2)
        self.assertEqual(ic.SplitSpec(1, 1).lambda_twist, -1)

    def test_probe_points(self):
        probes = probe_points(3)
        self.assertEqual(len(probes), 8)
        assert_allclose(probes[0], np.zeros((3, 3)))
        for point in probes:
            self.assertLessEqual(ic.op_norm(point), 0.5 + 1e-12)


class TestComponents(unittest.TestCase):

    def test_restrict_to_canonical_component(self):
        F = ic.random_colligation(2, 3, 1, seed=18)
        R = ic.restrict_to_component(F, 1)
        self.assertEqual(R.m, 2)
        for u in points(2, 20):
            assert_allclose(R(u), F(utils.block_diag(u, np.eye(1))), atol=ATOL)

    def test_restrict_with_reducer(self):
        F = ic.random_colligation(1, 2, 2, seed=19)
        reducer = ic.transvection_to(np.array([[0.2, -0.1], [0.3j, 0.1]]))
        R = ic.restrict_to_component(F, 1, reducer=reducer)
        for u in points(1, 20):
            assert_allclose(R(u), F(ic.mobius(reducer, utils.block_diag(u, np.eye(1)))), atol=ATOL)

    def test_restrict_needs_proper_component(self):
        with self.assertRaises(ValueError):
            ic.restrict_to_component(ic.random_colligation(1, 2, 1, seed=0), 2)

    def test_corestrict(self):
        g = ic.random_colligation(1, 2, 2, seed=20)
        F = ic.direct_sum(g, ic.identity_colligation(2, 2))
        G = ic.corestrict_from_component(F)
        self.assertEqual(G.alpha, 1)
        for S in points(2, 20):
            assert_allclose(G(S), g(S), atol=ATOL)

    def test_corestrict_interior_function(self):
        F = ic.random_colligation(1, 1, 2, seed=21)
        self.assertTrue(ic.is_char_interior(F))
        self.assertIs(ic.corestrict_from_component(F), F)

    def test_corestrict_wide_colligation(self):
        # With alpha > m j some unit vector v has v* b = 0, so the image
        # already lies in a boundary component of corank one
        F = ic.random_colligation(2, 1, 1, seed=21)
        self.assertFalse(ic.is_char_interior(F))
        self.assertEqual(ic.stratum(F.a).defect_rank, 1)
        G = ic.corestrict_from_component(F)
        self.assertEqual(G.alpha, 1)
        for S in points(1, 20):
            expected = np.sort(np.linalg.svd(F(S), compute_uv=False))
            assert_allclose(np.sort([1.0, abs(G(S)[0, 0])]), expected, atol=ATOL)

    def test_corestrict_rejects_moving_image(self):
        # Theta(S) = diag(0.5, 1 + S / 4) starts on the boundary but leaves it
        U = np.array([[0.5, 0.0, 0.0], [0.0, 1.0, 0.5], [0.0, 0.5, 0.0]])
        F = ic.Colligation(2, 1, 1, U, validate=False)
        with self.assertRaises(ImageNotInComponent):
            ic.corestrict_from_component(F)

    def test_restrict_singular_on_component(self):
        # d = 1_2 against the embedded point diag(0, 1) makes 1 - p d singular
        F = ic.Colligation(1, 2, 1, ic.identity(3))
        with self.assertRaises(SingularOnComponent):
            ic.restrict_to_component(F, 1)
        with self.assertRaises(SingularOnComponent):
            ic.restrict_to_component(F, 1, probe=np.array([[0.3]]))


if __name__ == '__main__':
    unittest.main()
