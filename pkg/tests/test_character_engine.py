# -*- coding: utf-8 -*-
"""乘法特征、Gauss 和与 κ_z 计数的测试"""

import math
import unittest

import numpy as np

from tests.fixtures import tower
from utils.character_engine import Character, CharacterEngine, UnitRoot4, verify_gauss_identities, verify_kappa_theorem
from utils.check_report import all_passed


class TestUnitRoot4(unittest.TestCase):

    def test_multiplication(self):
        self.assertEqual(UnitRoot4.of(1) * UnitRoot4.of(3), UnitRoot4.of(0))
        self.assertEqual(UnitRoot4.of(2) * UnitRoot4.of(2), UnitRoot4.of(0))
        self.assertTrue((UnitRoot4.zero() * UnitRoot4.of(1)).is_zero)

    def test_conj_and_label(self):
        self.assertEqual(UnitRoot4.of(1).conj().label, '-i')
        self.assertEqual(UnitRoot4.zero().conj().label, '0')
        self.assertEqual(UnitRoot4.of(-1).label, '-i')
        self.assertEqual(UnitRoot4.of(2).value, -1)


class TestCharacters(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.t = tower(5)
        cls.engine = CharacterEngine(cls.t)

    def test_orders(self):
        self.assertEqual(self.engine.chi2().order, 2)
        self.assertEqual(self.engine.chi4().order, 4)
        self.assertEqual(self.engine.chi2('F').order, 2)
        self.assertTrue(self.engine.character(0).is_trivial)

    def test_group_operations(self):
        chi4 = self.engine.chi4()
        self.assertEqual(chi4 * chi4, self.engine.chi2())
        self.assertEqual(chi4 ** 4, self.engine.character(0))
        self.assertEqual((chi4 * chi4.conjugate()).exponent, 0)

    def test_mixed_groups_rejected(self):
        with self.assertRaises(ValueError):
            self.engine.chi2('E') * self.engine.chi2('F')

    def test_evaluate_zero(self):
        """χ(0) 没有单位根指数"""
        self.assertIsNone(self.engine.evaluate(self.engine.chi4(), 0))
        self.assertEqual(self.engine.evaluate_complex(self.engine.character(0), 0), 1)
        self.assertEqual(self.engine.evaluate_sign(self.engine.chi2(), 0), 0)

    def test_chi2_on_squares(self):
        """χ₂(x) = 1 当且仅当 log x 为偶数"""
        xs = np.arange(1, self.t.size)
        signs = self.engine.evaluate_sign(self.engine.chi2(), xs)
        self.assertTrue(np.array_equal(signs == 1, self.t.log(xs) % 2 == 0))

    def test_evaluate_sign_needs_real_character(self):
        with self.assertRaises(ValueError):
            self.engine.evaluate_sign(self.engine.chi4(), 3)


class TestGaussSums(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.t = tower(5)
        cls.engine = CharacterEngine(cls.t)

    def test_magnitude(self):
        """非平凡特征 |G(χ)| = p^{3h/2}"""
        for m in (1, 2, 31, 62, 93):
            value, _ = self.engine.gauss_sum(self.engine.character(m))
            self.assertAlmostEqual(abs(value), math.sqrt(5 ** 3), places=8)

    def test_trivial_character(self):
        value, _ = self.engine.gauss_sum(self.engine.character(0))
        self.assertAlmostEqual(abs(value), 0.0, places=8)

    def test_fft_matches_direct(self):
        sums = self.engine.all_gauss_sums('E')
        for m in (0, 1, 7, 31, 62, 100):
            value, _ = self.engine.gauss_sum(self.engine.character(m))
            self.assertTrue(np.isclose(sums[m], value, atol=1e-8))

    def test_subfield_sums(self):
        sums = self.engine.all_gauss_sums('F')
        self.assertEqual(len(sums), 4)
        for m in range(1, 4):
            value, _ = self.engine.gauss_sum(Character(4, m, 'F'))
            self.assertTrue(np.isclose(sums[m], value, atol=1e-8))
            self.assertAlmostEqual(abs(value), math.sqrt(5), places=8)

    def test_fourier_round_trip(self):
        rng = np.random.default_rng(7)
        f = rng.normal(size=self.t.order)
        back = self.engine.inverse_fourier_transform(self.engine.fourier_transform(f))
        self.assertTrue(np.allclose(back.real, f))

    def test_fourier_rejects_wrong_length(self):
        with self.assertRaises(ValueError):
            self.engine.fourier_transform(np.zeros(10))


class TestKappa(unittest.TestCase):

    def test_profile_partition(self):
        """四个 κ_z 与零点对数之和为 q²+q+1"""
        for q in (5, 9):
            engine = CharacterEngine(tower(q))
            for x in (1, 2, 17, 100):
                prof = engine.kappa_profile(x)
                self.assertEqual(sum(prof.counts) + prof.zero_pairs, tower(q).plane_order)
                self.assertEqual(prof.kappa(UnitRoot4.of(1)), prof.kappa(UnitRoot4.of(3)))
                self.assertEqual(prof.as_dict()['0'], prof.zero_pairs)

    def test_profile_rejects_zero(self):
        with self.assertRaises(ValueError):
            CharacterEngine(tower(5)).kappa_profile(0)


class TestIdentityReports(unittest.TestCase):

    def test_gauss_identities(self):
        for q in (5, 9):
            reports = verify_gauss_identities(tower(q))
            self.assertTrue(all_passed(reports), [r.to_dict() for r in reports if not r.passed])

    def test_kappa_theorem_exhaustive(self):
        """q = 5 与 q = 9 时对全部 x ∈ E* 成立"""
        for q, n in ((5, 124), (9, 728)):
            reports = verify_kappa_theorem(tower(q))
            self.assertTrue(all_passed(reports), [r.name for r in reports if not r.passed])
            main = next(r for r in reports if r.name == 'kappa_one_minus')
            self.assertEqual(main.checked, n)


if __name__ == '__main__':
    unittest.main()
