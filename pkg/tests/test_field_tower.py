# -*- coding: utf-8 -*-
"""域塔 F_p ⊂ F_q ⊂ F_{q³} 的测试"""

import unittest

import numpy as np

from tests.fixtures import tower
from utils.check_report import all_passed
from utils.errors import DegreeTooLarge, InvalidQ, NotPrime
from utils.field_tower import (build_tower, factor_prime_power, find_primitive_poly, is_prime,
                               verify_cyclic_plane_model, verify_field_identities)


class TestArithmeticHelpers(unittest.TestCase):

    def test_is_prime(self):
        """小素数与合数"""
        self.assertEqual([n for n in range(20) if is_prime(n)], [2, 3, 5, 7, 11, 13, 17, 19])

    def test_factor_prime_power(self):
        """81 = 3⁴，17 = 17¹，29 = 29¹"""
        self.assertEqual(factor_prime_power(81), (3, 4))
        self.assertEqual(factor_prime_power(17), (17, 1))
        self.assertEqual(factor_prime_power(29), (29, 1))

    def test_factor_rejects_non_prime_power(self):
        for q in (1, 12, 45):
            with self.assertRaises(InvalidQ):
                factor_prime_power(q)

    def test_primitive_poly_is_monic(self):
        poly = find_primitive_poly(5, 3)
        self.assertEqual(len(poly), 4)
        self.assertEqual(poly[-1], 1)
        self.assertNotEqual(poly[0], 0)


class TestBuildTower(unittest.TestCase):

    def test_rejects_non_prime(self):
        with self.assertRaises(NotPrime):
            build_tower(4, 1)

    def test_rejects_even_characteristic(self):
        with self.assertRaises(InvalidQ):
            build_tower(2, 3)

    def test_table_cap(self):
        with self.assertRaises(DegreeTooLarge):
            build_tower(5, 1, max_entries=100)

    def test_sizes_q5(self):
        t = tower(5)
        self.assertEqual((t.q, t.size, t.order, t.plane_order), (5, 125, 124, 31))

    def test_sizes_q9(self):
        t = tower(9)
        self.assertEqual((t.p, t.h, t.q, t.size, t.plane_order), (3, 2, 9, 729, 91))


class TestFieldOperations(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.t = tower(5)

    def test_exp_log_inverse(self):
        """exp∘log 在 E* 上是恒等"""
        xs = np.arange(1, self.t.size)
        self.assertTrue(np.array_equal(self.t.exp(self.t.log(xs)), xs))

    def test_mul_inv(self):
        xs = np.arange(1, self.t.size)
        self.assertTrue(np.all(self.t.mul(xs, self.t.inv(xs)) == 1))

    def test_add_neg(self):
        xs = np.arange(self.t.size)
        self.assertTrue(np.all(self.t.add(xs, self.t.neg(xs)) == 0))

    def test_scalar_results_are_ints(self):
        self.assertIsInstance(self.t.mul(3, 7), int)
        self.assertIsInstance(self.t.trace(7), int)

    def test_omega_generates_subfield(self):
        """ω 的阶为 q-1，F 码表覆盖 q 个元素"""
        t = self.t
        self.assertEqual(t.power(t.omega, t.q - 1), 1)
        self.assertEqual(len(np.unique(t.f_elements)), t.q)
        self.assertTrue(np.all(t.in_subfield(t.f_elements)))

    def test_trace_on_subfield(self):
        """x ∈ F 时 T(x) = 3x"""
        t = self.t
        for x in t.f_elements:
            self.assertEqual(t.trace(int(x)), t.mul(t.element(3), int(x)))

    def test_norm_of_mu(self):
        self.assertEqual(self.t.norm(self.t.mu), 1)

    def test_frobenius_order_three(self):
        """(x^q)^(q²) = x"""
        xs = np.arange(self.t.size)
        self.assertTrue(np.array_equal(self.t.frobenius(self.t.frobenius(xs, 1), 2), xs))
        self.assertFalse(np.array_equal(self.t.frobenius(xs, 1), xs))

    def test_f_code_arithmetic(self):
        """F 码乘法表与 E 中乘法一致"""
        t = self.t
        for a in range(t.q):
            for b in range(t.q):
                self.assertEqual(t.f_elements[t.f_mul_tbl[a, b]], t.mul(int(t.f_elements[a]), int(t.f_elements[b])))

    def test_f_inverse(self):
        t = self.t
        M = np.array([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
        if t.f_det(M) == 0:
            self.skipTest("singular sample")
        eye = t.f_matmul(M, t.f_inverse(M))
        self.assertTrue(np.array_equal(t.f_elements[eye], np.eye(3, dtype=np.int64)))

    def test_f_coordinates_round_trip(self):
        """x = Σ c_k b_k，c_k 为对偶基坐标"""
        t = self.t
        xs = np.arange(t.size)
        coords = t.f_coordinates(xs)
        acc = np.zeros(t.size, dtype=np.int64)
        for k in range(3):
            acc = t.add(acc, t.mul(t.f_elements[coords[:, k]], t.basis[k]))
        self.assertTrue(np.array_equal(acc, xs))

    def test_special_elements(self):
        """|S| = q+1"""
        for q in (5, 9):
            t = tower(q)
            S = t.special_elements()
            self.assertEqual(len(S), q + 1)
            self.assertTrue(np.all(t.norm(S) == 1))
            self.assertTrue(np.all(t.trace(t.power(S, 2)) == 0))


class TestIdentityReports(unittest.TestCase):

    def test_field_identities_q5(self):
        reports = verify_field_identities(tower(5))
        self.assertTrue(all_passed(reports), [r.to_dict() for r in reports if not r.passed])

    def test_field_identities_q9(self):
        """p = 3 时两个核都等于 F"""
        reports = verify_field_identities(tower(9))
        self.assertTrue(all_passed(reports))
        kernels = [r for r in reports if r.name.startswith('trace_kernel')]
        self.assertEqual([r.details['expected'] for r in kernels], ['F', 'F'])

    def test_cyclic_plane_model(self):
        for q in (5, 9):
            reports = verify_cyclic_plane_model(tower(q))
            self.assertTrue(all_passed(reports), [r.name for r in reports if not r.passed])


if __name__ == '__main__':
    unittest.main()
