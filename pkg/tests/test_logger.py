# -*- coding: utf-8 -*-
"""日志配置：按子命令分文件、阶段标记"""

import logging
import logging.handlers
import os
import tempfile
import unittest

from utils.logger import log_stage, run_log_path, setup_logger, stage_filter


class TestLogger(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.name = f'TightSetLabTest.{self.id()}'

    def tearDown(self):
        logger = logging.getLogger(self.name)
        for h in list(logger.handlers):
            logger.removeHandler(h)
            h.close()
        self.tmp.cleanup()

    def _read(self, path):
        for h in logging.getLogger(self.name).handlers:
            h.flush()
        with open(path, encoding='utf-8') as f:
            return f.read()

    def test_run_log_path(self):
        self.assertTrue(run_log_path('construct').endswith('tightset_lab_construct.log'))
        self.assertTrue(run_log_path(None).endswith('tightset_lab.log'))

    def test_stage_tags(self):
        path = os.path.join(self.tmp.name, 'run.log')
        logger = setup_logger(self.name, log_file=path)
        logger.info("阶段外")
        with log_stage('pg3', 5):
            logger.info("阶段内")
            logging.getLogger(f'{self.name}.Pg3Scene').info("子记录器")
        text = self._read(path)
        self.assertIn('[- q=-] 阶段外', text)
        self.assertIn('[pg3 q=5] 阶段内', text)
        self.assertIn('[pg3 q=5] 子记录器', text)
        self.assertEqual((stage_filter.stage, stage_filter.q), ('-', '-'))

    def test_nested_stage_keeps_q(self):
        path = os.path.join(self.tmp.name, 'run.log')
        logger = setup_logger(self.name, log_file=path)
        with log_stage('bench', 9):
            with log_stage('tight'):
                logger.info("嵌套")
            logger.info("外层")
        text = self._read(path)
        self.assertIn('[tight q=9] 嵌套', text)
        self.assertIn('[bench q=9] 外层', text)

    def test_switch_run_file(self):
        first = os.path.join(self.tmp.name, 'a.log')
        second = os.path.join(self.tmp.name, 'b.log')
        logger = setup_logger(self.name, log_file=first)
        logger.info("一")
        self.assertIs(setup_logger(self.name, log_file=second), logger)
        logger.info("二")
        self.assertIn('一', self._read(first))
        self.assertNotIn('二', self._read(first))
        self.assertIn('二', self._read(second))
        file_handlers = [h for h in logger.handlers if isinstance(h, logging.handlers.RotatingFileHandler)]
        self.assertEqual(len(file_handlers), 1)


if __name__ == '__main__':
    unittest.main()
