# -*- coding: utf-8 -*-
"""
日志配置模块

每个子命令写自己的轮转日志 (logs/tightset_lab_<command>.log)，
每条记录带上当前流水线阶段与 q。
"""

import logging
import logging.handlers
import os
from contextlib import contextmanager
from typing import Optional

from config import LOG_CONFIG

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - [%(stage)s q=%(q)s] %(message)s'


class StageFilter(logging.Filter):
    """给每条记录加上 stage 与 q 字段"""

    def __init__(self):
        super().__init__()
        self.stage = '-'
        self.q = '-'

    def filter(self, record: logging.LogRecord) -> bool:
        record.stage = self.stage
        record.q = self.q
        return True


stage_filter = StageFilter()


@contextmanager
def log_stage(stage: str, q: Optional[int] = None):
    """在 with 块内把日志记录标记为某个阶段"""
    previous = (stage_filter.stage, stage_filter.q)
    stage_filter.stage = stage
    if q is not None:
        stage_filter.q = q
    try:
        yield
    finally:
        stage_filter.stage, stage_filter.q = previous


def run_log_path(command: Optional[str]) -> str:
    if not command:
        return LOG_CONFIG['log_file']
    return os.path.join(LOG_CONFIG['log_dir'], LOG_CONFIG['run_log_template'].format(command=command))


def _file_handler(logger: logging.Logger) -> Optional[logging.handlers.RotatingFileHandler]:
    for h in logger.handlers:
        if isinstance(h, logging.handlers.RotatingFileHandler):
            return h
    return None


def _attach_file(logger: logging.Logger, log_file: str, level: int, formatter: logging.Formatter):
    log_dir = os.path.dirname(log_file)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
    handler = logging.handlers.RotatingFileHandler(
        log_file,
        maxBytes=LOG_CONFIG['max_file_size'],
        backupCount=LOG_CONFIG['backup_count'],
        encoding='utf-8'
    )
    handler.setLevel(level)
    handler.setFormatter(formatter)
    handler.addFilter(stage_filter)
    logger.addHandler(handler)


def setup_logger(name: str = 'TightSetLab', log_file: Optional[str] = None, level: Optional[str] = None):
    """设置日志记录器

    控制台 handler 写 stderr (stdout 留给数据)。已配置过的记录器再次调用时，
    只有显式给出不同的 log_file 才会换掉文件 handler。
    """
    level_no = getattr(logging, (level or LOG_CONFIG['log_level']).upper())
    logger = logging.getLogger(name)
    logger.setLevel(level_no)
    formatter = logging.Formatter(LOG_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')

    if logger.handlers:
        current = _file_handler(logger)
        if log_file and (current is None or current.baseFilename != os.path.abspath(log_file)):
            if current is not None:
                logger.removeHandler(current)
                current.close()
            _attach_file(logger, log_file, level_no, formatter)
        return logger

    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.INFO)
    console_handler.setFormatter(formatter)
    console_handler.addFilter(stage_filter)
    logger.addHandler(console_handler)

    _attach_file(logger, log_file or LOG_CONFIG['log_file'], level_no, formatter)
    return logger
