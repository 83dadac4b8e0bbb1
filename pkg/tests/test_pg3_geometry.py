# -*- coding: utf-8 -*-
"""PG(3,q) 枚举、Klein 对应与展开的测试"""

import copy
import unittest

import numpy as np

from tests.fixtures import pg3, quadric, tower
from utils.check_report import all_passed
from utils.errors import BadTransform, NotIncident, NotOnQuadric
from utils.klein_quadric import IsometryMap, QuadricPoint
from utils.pg3_geometry import (build_regular_spread, induced_point_permutation, klein_map,
                                line_permutation, line_to_quadric_point, quadric_point_to_line,
                                random_collineation, verify_klein_map, verify_scene)


class TestScene(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.scene = pg3(5)['scene']

    def test_counts(self):
        self.assertEqual(self.scene.num_points, 156)
        self.assertEqual(self.scene.num_lines, 806)
        self.assertEqual(self.scene.line_points.shape, (806, 6))
        self.assertEqual(self.scene.point_lines.shape, (156, 31))

    def test_scene_report(self):
        self.assertTrue(verify_scene(self.scene).passed)
        self.assertTrue(verify_scene(pg3(9)['scene']).passed)

    def test_point_id_canonical(self):
        """非零倍数表示同一个点"""
        v = np.array([0, 1, 2, 3])
        doubled = self.scene.tower.f_mul_tbl[2, v]
        self.assertEqual(self.scene.point_id(v), self.scene.point_id(doubled))

    def test_plane_incidence(self):
        planes = self.scene.point_planes[0]
        self.assertEqual(len(planes), 31)
        self.assertTrue(all(self.scene.incident(0, int(pl)) for pl in planes))
        self.assertTrue(all(self.scene.incident(int(p), 7) for p in self.scene.plane_points[7]))

    def test_pencil(self):
        plane = int(self.scene.point_planes[3][0])
        self.assertEqual(len(self.scene.pencil(3, plane)), 6)

    def test_pencil_not_incident(self):
        p0 = self.scene.point_id([1, 0, 0, 0])
        with self.assertRaises(NotIncident):
            self.scene.pencil(p0, p0)

    def test_lines_meet(self):
        star = self.scene.star(10)
        self.assertTrue(np.all(self.scene.common_point(star[:5], star[5:10]) == 10))

    def test_line_ids_from_plucker(self):
        ids = self.scene.line_ids_from_plucker(self.scene.plucker[[0, 50, 805]])
        self.assertEqual(ids.tolist(), [0, 50, 805])
        with self.assertRaises(NotOnQuadric):
            self.scene.line_ids_from_plucker(np.array([[1, 0, 0, 1, 0, 0]]))

    def test_plucker_rows_canonical(self):
        """存储的 Plücker 行首个非零坐标为 1"""
        for q in (5, 9):
            pl = pg3(q)['scene'].plucker
            lead = pl[np.arange(len(pl)), np.argmax(pl != 0, axis=1)]
            self.assertTrue(np.all(lead == 1))

    def test_every_line_looks_itself_up(self):
        for q in (5, 9):
            scene = pg3(q)['scene']
            ids = scene.line_ids_from_plucker(scene.plucker)
            self.assertTrue(np.array_equal(ids, np.arange(scene.num_lines)))

    def test_lookup_ignores_scalar(self):
        """Plücker 向量乘非零标量仍查到同一条直线"""
        scaled = self.scene.tower.f_mul_tbl[3, self.scene.plucker]
        ids = self.scene.line_ids_from_plucker(scaled)
        self.assertTrue(np.array_equal(ids, np.arange(self.scene.num_lines)))

    def test_scene_report_flags_bad_keys(self):
        """查表键与存储的行不一致时，场景检验报告失败而不是抛异常"""
        broken = copy.copy(self.scene)
        keys = broken._keys(broken.tower.f_mul_tbl[2, broken.plucker])
        broken._plucker_order = np.argsort(keys)
        broken._plucker_sorted = keys[broken._plucker_order]
        rep = verify_scene(broken)
        self.assertFalse(rep.passed)
        self.assertTrue(all(w['kind'] == 'plucker lookup' for w in rep.failures))


class TestKleinMap(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.data = pg3(5)
        cls.model, _ = quadric(5)

    def test_reports(self):
        d = self.data
        reports = verify_klein_map(self.model, d['frame'], d['scene'], d['klein'])
        self.assertTrue(all_passed(reports), [r.to_dict() for r in reports if not r.passed])

    def test_klein_map_is_bijection(self):
        for q in (5, 9):
            model, _ = quadric(q)
            d = pg3(q)
            klein = klein_map(model, d['frame'], d['scene'])
            self.assertEqual(len(np.unique(klein)), model.num_points)
            self.assertTrue(np.array_equal(klein, d['klein']))

    def test_special_elements(self):
        d = self.data
        self.assertEqual(d['p0'], d['scene'].point_id([1, 0, 0, 0]))
        self.assertEqual(d['pi'], d['scene'].point_id([1, 0, 0, 0]))
        self.assertFalse(d['scene'].incident(d['p0'], d['pi']))

    def test_point_line_round_trip(self):
        d = self.data
        for i in (0, 37, 400, 805):
            line = quadric_point_to_line(self.model.point(i), self.model, d['frame'], d['scene'])
            self.assertEqual(line, d['klein'][i])
            self.assertEqual(line_to_quadric_point(line, self.model, d['frame'], d['scene']), i)

    def test_off_quadric(self):
        """T(1·1) = 3 ≠ 0"""
        d = self.data
        with self.assertRaises(NotOnQuadric):
            quadric_point_to_line(QuadricPoint(1, 1), self.model, d['frame'], d['scene'])

    def test_line_classes(self):
        classes = self.data['line_classes']
        self.assertEqual(sorted(classes), ['L1', 'L1prime', 'L2', 'L2prime'])
        self.assertEqual(classes['L1'].size, 372)
        self.assertFalse(np.any(classes['L1'].mask(806) & classes['L2'].mask(806)))
        self.assertEqual(classes['L1'].to_dict()['parameter_x'], 12)

    def test_induced_point_permutation(self):
        """c 固定 π₁ 与 π₂，故诱导的点置换固定 p₀"""
        d = self.data
        lp = line_permutation(self.model.permutation(IsometryMap('c')), d['klein'])
        self.assertEqual(len(np.unique(lp)), 806)
        pp = induced_point_permutation(d['scene'], lp)
        self.assertEqual(pp[d['p0']], d['p0'])
        self.assertTrue(np.array_equal(np.sort(lp[d['line_classes']['L1'].lines]),
                                       d['line_classes']['L1'].lines))


class TestSpreads(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.t = tower(5)
        cls.scene = pg3(5)['scene']

    def test_regular_spread(self):
        spread = build_regular_spread(self.t, self.scene)
        self.assertEqual(len(spread.lines), 26)
        self.assertEqual(len(np.unique(self.scene.line_points[spread.lines])), 156)

    def test_transformed_spread(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            A = random_collineation(self.t, rng)
            self.assertNotEqual(self.t.f_det(A), 0)
            spread = build_regular_spread(self.t, self.scene, A)
            self.assertEqual(len(spread.lines), 26)

    def test_singular_transform(self):
        with self.assertRaises(BadTransform):
            build_regular_spread(self.t, self.scene, np.zeros((4, 4), dtype=np.int64))


if __name__ == '__main__':
    unittest.main()
