# -*- coding: utf-8 -*-
"""紧集、Cameron–Liebler 线类、图样、可裂分解与稳定子群验证器的测试"""

import unittest

import numpy as np

from tests.fixtures import construction, pg3, quadric
from utils.check_report import all_passed
from utils.errors import BadFlag, InvalidQ, ResourceCap
from utils.verifier import (compute_pattern, compute_point_orbits, expected_tables, extract_a_values,
                            extract_affine_set, group_closure_order, run_negative_controls, sweep_affine_sets,
                            verify_a_values, verify_cameron_liebler, verify_eigenvector_criteria,
                            verify_pattern_props, verify_stabilizer, verify_star_line_counts,
                            verify_tactical_decomposition, verify_tight_set)


def _point_orbits(q):
    model, _ = quadric(q)
    d = pg3(q)
    return compute_point_orbits(model, d['scene'], d['klein'], d['p0'], d['pi'])


class TestTightSetVerifier(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.model, _ = quadric(5)
        cls.sets = construction(5)['sets']

    def test_all_four_sets(self):
        """q=5: 集外点看到 72 个，集内点看到 97 个"""
        for label, ts in self.sets.items():
            rep = verify_tight_set(self.model, ts.points, 12, label)
            self.assertTrue(rep.passed, rep.to_dict())
            self.assertEqual(rep.name, f'tight_set[{label}]')
            self.assertEqual(rep.details['off_counts'], [72])
            self.assertEqual(rep.details['on_counts'], [97])

    def test_wrong_parameter_fails(self):
        rep = verify_tight_set(self.model, self.sets['T1'].points, 11)
        self.assertFalse(rep.passed)

    def test_eigenvector_criteria(self):
        reports = verify_eigenvector_criteria(self.model, self.sets['T1'].points, 12, 'T1')
        self.assertEqual([r.name for r in reports], ['eigenvector[T1]', 'eigenvector_reduced[T1]'])
        self.assertTrue(all_passed(reports))
        self.assertNotEqual(reports[1].scope, 'not-applicable')

    def test_generator_is_one_tight(self):
        """π₁ 是 1-紧集；约化判据不适用"""
        plane = np.nonzero(self.model.in_pi1)[0]
        self.assertTrue(verify_tight_set(self.model, plane, 1, 'pi1').passed)
        reports = verify_eigenvector_criteria(self.model, plane, 1, 'pi1')
        self.assertTrue(reports[0].passed)
        self.assertEqual(reports[1].scope, 'not-applicable')

    def test_q9(self):
        model, _ = quadric(9)
        ts = construction(9)['sets']['T1']
        rep = verify_tight_set(model, ts.points, 40)
        self.assertTrue(rep.passed)
        self.assertEqual(rep.details['off_counts'], [400])


class TestCameronLiebler(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.data = pg3(5)

    def test_line_classes(self):
        """q=5: 每个展开恰有 12 条线属于 L"""
        for label, L in self.data['line_classes'].items():
            reports = verify_cameron_liebler(self.data['scene'], L, 12, spread_samples=20)
            self.assertTrue(all_passed(reports), [r.to_dict() for r in reports if not r.passed])
            lines, pencil, spreads = reports
            self.assertEqual(lines.details['off_counts'], [72])
            self.assertEqual(lines.details['on_counts'], [96])
            self.assertEqual(pencil.scope, 'exhaustive')
            self.assertEqual(spreads.details['intersections'], [12])

    def test_star_line_counts(self):
        d = self.data
        for L in d['line_classes'].values():
            self.assertTrue(verify_star_line_counts(d['scene'], L, d['p0'], d['pi']).passed)


class TestPatterns(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.data = pg3(5)

    def test_compute_pattern(self):
        scene = self.data['scene']
        L = self.data['line_classes']['L1']
        pat = compute_pattern(scene, L.mask(scene.num_lines), int(L.lines[0]))
        self.assertTrue(pat.in_class)
        self.assertEqual(pat.matrix.shape, (6, 6))
        self.assertEqual(int(pat.matrix.sum()), 12 * 6 + 24)
        self.assertEqual(pat.to_frame().shape, (6, 6))

    def test_pattern_properties(self):
        d = self.data
        L = d['line_classes']['L1']
        a = extract_a_values(d['scene'], L, _point_orbits(5))
        rep = verify_pattern_props(d['scene'], L, 12, p0=d['p0'], a_values=a)
        self.assertTrue(rep.passed, rep.to_dict())
        self.assertEqual(rep.scope, 'exhaustive')
        self.assertEqual(rep.details['p0_lines_checked'], 31)


class TestAValues(unittest.TestCase):

    def test_point_orbits(self):
        orbits = _point_orbits(5)
        self.assertEqual(orbits.sizes.tolist(), [1, 31, 31, 31, 31, 31])
        self.assertEqual(orbits.labels[orbits.p0], 0)

    def test_q5(self):
        a = extract_a_values(pg3(5)['scene'], pg3(5)['line_classes']['L1'], _point_orbits(5))
        self.assertEqual(a.values, (1, 2, 3, 4))
        self.assertTrue(verify_a_values(a, 5).passed)

    def test_q9(self):
        """q = 3^(2e) 时 a₁ = a₂ = (q-√q)/2"""
        a = extract_a_values(pg3(9)['scene'], pg3(9)['line_classes']['L1'], _point_orbits(9))
        self.assertEqual(a.values, (3, 3, 6, 6))
        self.assertTrue(verify_a_values(a, 9).passed)

    def test_bad_values(self):
        from utils.verifier import AValues
        self.assertFalse(verify_a_values(AValues((0, 2, 3, 5)), 5).passed)


class TestDecomposition(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.data = pg3(9)
        classes = cls.data['line_classes']
        cls.decomposition = verify_tactical_decomposition(cls.data['scene'], classes['L1'], classes['L2'],
                                                          cls.data['p0'], cls.data['pi'])

    def test_expected_tables(self):
        lpp, ppl = expected_tables(9)
        self.assertEqual(lpp.loc['P1'].tolist(), [1, 0, 30, 60])
        self.assertEqual(ppl.loc['P2'].tolist(), [4, 0, 6, 3])
        self.assertEqual(lpp.loc['π'].tolist(), [1, 10, 40, 40])

    def test_tables_need_square_power_of_three(self):
        for q in (5, 25, 3):
            with self.assertRaises(InvalidQ):
                expected_tables(q)

    def test_decomposition(self):
        rep = self.decomposition.report
        self.assertTrue(rep.passed, rep.to_dict())
        self.assertTrue(self.decomposition.lines_per_point.equals(self.decomposition.expected_lines_per_point))
        self.assertEqual(rep.details['class_sizes']['points'], [1, 91, 364, 364])

    def test_affine_sweep(self):
        d = self.data
        rep = sweep_affine_sets(d['scene'], self.decomposition, d['p0'], d['pi'])
        self.assertTrue(rep.passed, rep.to_dict())
        self.assertEqual(rep.details['types'], {'(3,6)': 728})
        self.assertTrue(set(rep.details['sizes']) <= {'36', '45'})

    def test_affine_witness_of_size_36_first(self):
        """报告中第一个见证平面给出大小 (q²-q)/2 = 36 的二交集"""
        d = self.data
        rep = sweep_affine_sets(d['scene'], self.decomposition, d['p0'], d['pi'])
        self.assertEqual(rep.details['expected_size'], 36)
        first = rep.details['witness_planes'][0]
        self.assertEqual((first['size'], first['type']), (36, '(3,6)'))
        aff = extract_affine_set(d['scene'], self.decomposition, first['plane'], d['p0'], d['pi'])
        self.assertEqual(aff.size, 36)
        self.assertEqual((aff.m, aff.n), (3, 6))

    def test_affine_bad_flag(self):
        d = self.data
        with self.assertRaises(BadFlag):
            extract_affine_set(d['scene'], self.decomposition, d['pi'], d['p0'], d['pi'])
        through_p0 = int(d['scene'].point_planes[d['p0']][0])
        with self.assertRaises(BadFlag):
            extract_affine_set(d['scene'], self.decomposition, through_p0, d['p0'], d['pi'])


class TestStabilizer(unittest.TestCase):

    def test_group_closure(self):
        """两个对换生成 S₃"""
        gens = [np.array([1, 0, 2]), np.array([0, 2, 1])]
        self.assertEqual(group_closure_order(gens, 100), 6)
        with self.assertRaises(ResourceCap):
            group_closure_order(gens, 3)

    def test_q5(self):
        model, orbits = quadric(5)
        rep = verify_stabilizer(model, construction(5)['sets'], orbits)
        self.assertTrue(rep.passed, rep.to_dict())
        self.assertEqual(rep.details['group_order'], 186)

    def test_q9(self):
        model, orbits = quadric(9)
        rep = verify_stabilizer(model, construction(9)['sets'], orbits)
        self.assertTrue(rep.passed, rep.to_dict())
        self.assertEqual(rep.details['group_order'], 1092)


class TestNegativeControls(unittest.TestCase):

    def test_random_sets_rejected(self):
        model, _ = quadric(5)
        rep = run_negative_controls(model, pg3(5)['scene'], 12, 372, seed=11)
        self.assertTrue(rep.passed, rep.to_dict())
        self.assertEqual(rep.name, 'negative_controls[points+lines]')

    def test_points_only(self):
        model, _ = quadric(5)
        rep = run_negative_controls(model, None, 12, 372)
        self.assertEqual(rep.name, 'negative_controls[points]')
        self.assertTrue(rep.passed)


if __name__ == '__main__':
    unittest.main()
