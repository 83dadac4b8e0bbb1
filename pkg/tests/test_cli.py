# -*- coding: utf-8 -*-
"""命令行参数校验、退出码与产物文件往返的测试"""

import json
import os
import tempfile
import unittest
from contextlib import redirect_stdout
from io import StringIO

from tightset_lab import JobConfig, estimate_memory, run, validate_config
from utils.artifact_handler import ArtifactHandler
from utils.errors import ArtifactFormatError, BadFlag, InvalidQ, NotPrime, ResourceCap


def _quiet_run(argv):
    buf = StringIO()
    with redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue()


class TestValidateConfig(unittest.TestCase):

    def test_q_factored(self):
        job = validate_config(JobConfig('construct', q=81))
        self.assertEqual((job.p, job.h), (3, 4))
        self.assertEqual(validate_config(JobConfig('construct', q=17)).p, 17)

    def test_p_and_h(self):
        job = validate_config(JobConfig('construct', p=3, h=2))
        self.assertEqual(job.q, 9)

    def test_inadmissible_q(self):
        for q in (7, 13):
            with self.assertRaises(InvalidQ):
                validate_config(JobConfig('construct', q=q))

    def test_charsums_accept_any_odd_q(self):
        self.assertEqual(validate_config(JobConfig('verify-charsums', q=7)).q, 7)

    def test_not_prime(self):
        with self.assertRaises(NotPrime):
            validate_config(JobConfig('construct', p=6, h=1))

    def test_inconsistent_flags(self):
        with self.assertRaises(BadFlag):
            validate_config(JobConfig('construct', q=9, p=5))

    def test_unknown_checks(self):
        with self.assertRaises(BadFlag):
            validate_config(JobConfig('construct', q=5, checks=['tight', 'bogus']))

    def test_missing_q(self):
        with self.assertRaises(BadFlag):
            validate_config(JobConfig('construct'))

    def test_memory_cap(self):
        with self.assertRaises(ResourceCap):
            validate_config(JobConfig('construct', q=5, mem_cap=10))
        self.assertGreater(estimate_memory(9), estimate_memory(5))

    def test_default_checks(self):
        job = validate_config(JobConfig('construct', q=5))
        self.assertIn('decomposition', job.checks)


class TestExitCodes(unittest.TestCase):

    def test_bad_argparse(self):
        code, _ = _quiet_run(['construct', '--q', 'five'])
        self.assertEqual(code, 2)

    def test_invalid_q(self):
        code, _ = _quiet_run(['construct', '--q', '7'])
        self.assertEqual(code, 2)

    def test_resource_cap(self):
        code, _ = _quiet_run(['construct', '--q', '5', '--mem-cap', '10'])
        self.assertEqual(code, 3)

    def test_missing_artifact(self):
        code, _ = _quiet_run(['verify', os.path.join(tempfile.gettempdir(), 'no_such_artifact.json')])
        self.assertEqual(code, 2)

    def test_json_error_output(self):
        code, out = _quiet_run(['construct', '--q', '13', '--json'])
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(out)['error'], 'InvalidQ')


class TestRoundTrip(unittest.TestCase):

    def test_construct_then_verify(self):
        """q=5 构造，写出产物，再从文件重新验证"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'tightsets_q5.json')
            code, _ = _quiet_run(['construct', '--q', '5', '--out', path])
            self.assertEqual(code, 0)
            data = ArtifactHandler().load_artifact(path)
            self.assertEqual(len(data['tight_sets']['T1']['points']), 372)
            self.assertEqual(data['line_classes']['L1']['size'], 372)
            self.assertTrue(all(v['pass'] for v in data['verdicts']))

            code, _ = _quiet_run(['verify', path])
            self.assertEqual(code, 0)

    def test_export_pg3(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'lines.json')
            code, _ = _quiet_run(['export-pg3', '--q', '5', '--out', path])
            self.assertEqual(code, 0)
            with open(path, encoding='utf-8') as f:
                data = json.load(f)
            self.assertEqual(data['scene']['lines'], 806)
            self.assertEqual(sorted(data['line_classes']), ['L1', 'L1prime', 'L2', 'L2prime'])

    def test_report_pattern_json(self):
        """默认直线过 p₀，图样为 (q+1)×(q+1)"""
        code, out = _quiet_run(['report-pattern', '--q', '5', '--json'])
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(len(data['pattern']), 6)
        self.assertEqual(data['a_values']['a'], [1, 2, 3, 4])

    def test_report_pattern_unknown_label(self):
        code, _ = _quiet_run(['report-pattern', '--q', '5', '--label', 'L9', '--checks', 'tight'])
        self.assertEqual(code, 2)

    def test_verify_charsums(self):
        code, out = _quiet_run(['verify-charsums', '--q', '5', '--json'])
        self.assertEqual(code, 0)
        names = [v['check'] for v in json.loads(out)['verdicts']]
        self.assertIn('kappa_one_minus', names)

    def test_report_decomposition_needs_square(self):
        code, _ = _quiet_run(['report-decomposition', '--q', '5'])
        self.assertEqual(code, 2)

    def test_corrupt_artifact(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'broken.json')
            with open(path, 'w', encoding='utf-8') as f:
                f.write('{"format_version": "1"}')
            with self.assertRaises(ArtifactFormatError):
                ArtifactHandler().load_artifact(path)
            code, _ = _quiet_run(['verify', path])
            self.assertEqual(code, 2)


if __name__ == '__main__':
    unittest.main()
