# -*- coding: utf-8 -*-
"""Q⁺(5,q) 模型、轨道与 Plücker 标架的测试"""

import unittest

import numpy as np

from tests.fixtures import quadric, tower
from utils.check_report import all_passed
from utils.errors import InvalidQ
from utils.field_tower import build_tower
from utils.klein_quadric import (IsometryMap, QuadricModel, QuadricPoint, compute_orbits, find_plucker_frame,
                                 orbits_from_permutations, perp_sizes, verify_plucker_frame, verify_quadric_model)


class TestQuadricModel(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.model, cls.orbits = quadric(5)

    def test_point_counts(self):
        """(q²+1)(q²+q+1) 个点"""
        self.assertEqual(self.model.num_points, 806)
        self.assertEqual(quadric(9)[0].num_points, 7462)

    def test_generators_are_planes(self):
        self.assertEqual(int(self.model.in_pi1.sum()), 31)
        self.assertEqual(int(self.model.in_pi2.sum()), 31)
        self.assertFalse(np.any(self.model.in_pi1 & self.model.in_pi2))

    def test_points_on_quadric(self):
        self.assertTrue(np.all(self.model.quadratic_form(self.model.u, self.model.v) == 0))

    def test_point_id_round_trip(self):
        for i in (0, 1, 100, 805):
            p = self.model.point(i)
            self.assertEqual(self.model.point_id(p.u, p.v), i)

    def test_perp_size(self):
        """|p^⊥ ∩ Q| = q³+2q²+q+1"""
        self.assertEqual(len(self.model.collinear_with(0)), 181)
        sizes = perp_sizes(self.model, np.arange(0, 806, 50))
        self.assertTrue(np.all(sizes == 181))

    def test_is_collinear_symmetric(self):
        p, r = self.model.point(3), self.model.point(400)
        self.assertEqual(self.model.is_collinear(p, r), self.model.is_collinear(r, p))
        self.assertTrue(self.model.is_collinear(p, p))

    def test_rejects_q_one_mod_three(self):
        with self.assertRaises(InvalidQ):
            QuadricModel(build_tower(7, 1))


class TestIsometries(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.model, _ = quadric(5)

    def test_unknown_tag(self):
        with self.assertRaises(ValueError):
            IsometryMap('x')

    def test_permutations(self):
        for g in (IsometryMap('c'), IsometryMap('z'), IsometryMap('e'), IsometryMap('o'), IsometryMap('scale', 1)):
            perm = self.model.permutation(g)
            self.assertEqual(len(np.unique(perm)), self.model.num_points, g.name)

    def test_o_swaps_generators(self):
        o = self.model.permutation(IsometryMap('o'))
        self.assertTrue(np.all(self.model.in_pi2[o[self.model.in_pi1]]))
        self.assertTrue(np.all(self.model.in_pi1[o[self.model.in_pi2]]))

    def test_apply_isometry_matches_permutation(self):
        c = self.model.permutation(IsometryMap('c'))
        for i in (5, 77, 600):
            image = self.model.apply_isometry(IsometryMap('c'), self.model.point(i))
            self.assertEqual(self.model.point_id(image.u, image.v), c[i])

    def test_preserves_collinearity(self):
        z = self.model.permutation(IsometryMap('z'))
        rows = np.arange(0, 806, 40)
        cols = np.arange(806)
        before = self.model.collinear_matrix(rows, cols)
        after = self.model.collinear_matrix(z[rows], z[cols])
        self.assertTrue(np.array_equal(before, after))


class TestOrbits(unittest.TestCase):

    def test_full_group_q5(self):
        """2 + 4(q+1) 个轨道"""
        _, orbits = quadric(5)
        self.assertEqual(orbits.num_orbits, 26)
        self.assertEqual(len(orbits.keys), 24)
        self.assertEqual(orbits.sizes[orbits.pi1_orbit], 31)

    def test_full_group_q9(self):
        _, orbits = quadric(9)
        self.assertEqual(orbits.num_orbits, 42)
        self.assertEqual(sorted(set(orbits.sizes.tolist())), [91, 182])

    def test_c_only(self):
        model, _ = quadric(5)
        table = compute_orbits(model, 'c_only')
        self.assertEqual(table.num_orbits, 26)
        self.assertTrue(np.all(table.sizes == 31))

    def test_unknown_group(self):
        model, _ = quadric(5)
        with self.assertRaises(ValueError):
            compute_orbits(model, 'nope')

    def test_orbits_from_permutations(self):
        """两个对合生成的简单例子"""
        g1 = np.array([1, 0, 2, 3, 4])
        g2 = np.array([0, 2, 1, 3, 4])
        labels = orbits_from_permutations(5, [g1, g2])
        self.assertEqual(labels.tolist(), [0, 0, 0, 3, 4])

    def test_members(self):
        _, orbits = quadric(5)
        key = orbits.keys[(0, 0)]
        self.assertEqual(len(orbits.members(key)), orbits.sizes[key])


class TestReports(unittest.TestCase):

    def test_quadric_model_reports(self):
        for q in (5, 9):
            reports = verify_quadric_model(quadric(q)[0])
            self.assertTrue(all_passed(reports), [r.to_dict() for r in reports if not r.passed])

    def test_plucker_frame(self):
        for q in (5, 9):
            frame = find_plucker_frame(tower(q))
            self.assertEqual(frame.M.shape, (6, 6))
            self.assertTrue(verify_plucker_frame(tower(q), frame).passed)

    def test_quadric_point_is_frozen(self):
        p = QuadricPoint(1, 2)
        with self.assertRaises(Exception):
            p.u = 3
        self.assertEqual(p.to_list(), [1, 2])


if __name__ == '__main__':
    unittest.main()
