# -*- coding: utf-8 -*-
"""特殊集合 S、轨道和矩阵 B 与四个紧集的测试"""

import unittest

import numpy as np

from tests.fixtures import construction, quadric, tower
from utils.check_report import all_passed
from utils.errors import BadFlag, InvalidQ, LiftFailure
from utils.tightset_builder import (build_H, build_orbit_sum_matrices, build_special_set, check_admissible,
                                    check_eigenvector, lift_eigenvector, partition_vector, verify_kappa_bookkeeping,
                                    verify_orbit_sum_identities, verify_orbit_tactical, verify_special_set)


class TestAdmissibility(unittest.TestCase):

    def test_admissible(self):
        for q in (5, 9, 17, 29, 81):
            check_admissible(q)

    def test_rejected(self):
        for q in (7, 11, 13, 25):
            with self.assertRaises(InvalidQ):
                check_admissible(q)


class TestSpecialSet(unittest.TestCase):

    def test_size(self):
        for q in (5, 9):
            S = construction(q)['S']
            self.assertEqual(S.size, q + 1)
            self.assertEqual(S.a1_position, 0)

    def test_position(self):
        S = construction(5)['S']
        self.assertEqual(S.position(S.a1), 0)
        with self.assertRaises(KeyError):
            S.position(-7)

    def test_bad_a1(self):
        """α 的范数不为 1，不能作 a₁"""
        with self.assertRaises(BadFlag):
            build_special_set(tower(5), a1_log=1)

    def test_explicit_a1(self):
        t = tower(5)
        S = construction(5)['S']
        other = build_special_set(t, a1_log=int(t.log(int(S.elements[2]))))
        self.assertEqual(other.a1_position, 2)

    def test_partition_covers_S(self):
        for q in (5, 9):
            part = construction(q)['partition']
            self.assertEqual(len(part.x1) + len(part.x2), q + 1)
            self.assertTrue(part.in_x1[construction(q)['S'].a1_position])
            self.assertTrue(np.all(np.diag(part.signs) == 0))

    def test_special_set_report(self):
        for q in (5, 9):
            c = construction(q)
            self.assertTrue(verify_special_set(tower(q), c['S'], c['partition']).passed)


class TestMatrices(unittest.TestCase):

    def test_shapes(self):
        m = construction(5)['matrices']
        self.assertEqual(m.blocks.shape, (4, 6, 6))
        self.assertEqual(m.B.shape, (24, 24))
        self.assertIsNone(m.tactical)

    def test_identities(self):
        for q in (5, 9):
            c = construction(q)
            reports = verify_orbit_sum_identities(tower(q), c['S'], c['partition'], c['matrices'])
            reports.append(verify_kappa_bookkeeping(tower(q), c['S'], c['matrices']))
            self.assertTrue(all_passed(reports), [r.to_dict() for r in reports if not r.passed])

    def test_H(self):
        """H = q·[χ₂(2T(a_i a_j))] - I，v 为特征值 q²-1 的特征向量"""
        for q in (5, 9):
            c = construction(q)
            H = build_H(c['matrices'], c['partition'], q)
            self.assertTrue(np.array_equal(H, q * c['partition'].signs - np.eye(q + 1, dtype=np.int64)))
            v = partition_vector(c['partition'])
            self.assertTrue(np.array_equal(H @ v, (q * q - 1) * v))

    def test_lift(self):
        v = np.array([1, -1])
        re, im = lift_eigenvector(v, 1)
        self.assertEqual(re.tolist(), [1, -1, 0, 0, -1, 1, 0, 0])
        self.assertEqual(im.tolist(), [0, 0, 1, -1, 0, 0, -1, 1])

    def test_lifted_eigenvectors(self):
        c = construction(9)
        w1, w2 = lift_eigenvector(partition_vector(c['partition']), 1)
        B = c['matrices'].B
        check_eigenvector(B, w1, 80, 'w1')
        check_eigenvector(B, w2, 80, 'w2')
        with self.assertRaises(LiftFailure):
            check_eigenvector(B, w1, 79, 'w1')

    def test_tactical(self):
        for q in (5, 9):
            model, orbits = quadric(q)
            rep = verify_orbit_tactical(model, orbits, construction(q)['matrices'])
            self.assertTrue(rep.passed, rep.to_dict())
            self.assertEqual(rep.scope, 'exhaustive')

    def test_tactical_inside_builder(self):
        model, orbits = quadric(5)
        m = build_orbit_sum_matrices(tower(5), construction(5)['S'], model, orbits)
        self.assertTrue(m.tactical.passed)


class TestTightSets(unittest.TestCase):

    def test_sizes(self):
        """x(q²+q+1) 个点，x = (q²-1)/2"""
        for q, x, size in ((5, 12, 372), (9, 40, 3640)):
            sets = construction(q)['sets']
            self.assertEqual(sorted(sets), ['T1', 'T1prime', 'T2', 'T2prime'])
            for ts in sets.values():
                self.assertEqual(ts.parameter_x, x)
                self.assertEqual(ts.size, size)
                self.assertEqual(len(ts.orbit_keys), 2 * (q + 1))

    def test_complementary_pairs(self):
        model, _ = quadric(5)
        sets = construction(5)['sets']
        plane = model.in_pi1 | model.in_pi2
        for a, b in (('T1', 'T2'), ('T1prime', 'T2prime')):
            ma, mb = sets[a].mask(model.num_points), sets[b].mask(model.num_points)
            self.assertFalse(np.any(ma & mb))
            self.assertTrue(np.all(ma | mb | plane))

    def test_plus_sign_swaps_families(self):
        """ω 取 α^(q²+q+1) 时 T₁ 与另一约定下的 T₁′ 相同"""
        plus = construction(5, 'plus')['sets']
        minus = construction(5)['sets']
        self.assertTrue(np.array_equal(plus['T1'].points, minus['T1prime'].points))
        self.assertEqual(plus['T1'].sign_convention, 'plus')

    def test_to_dict(self):
        model, _ = quadric(5)
        c = construction(5)
        d = c['sets']['T1'].to_dict(model, c['S'])
        self.assertEqual(d['parameter_x'], 12)
        self.assertEqual(len(d['points']), 372)
        self.assertEqual(len(d['orbit_keys']), 12)


if __name__ == '__main__':
    unittest.main()
