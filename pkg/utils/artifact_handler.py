# -*- coding: utf-8 -*-
"""
构造结果的读写

产物文件是 UTF-8 JSON，键按字典序输出，不含耗时等随运行变化的字段。
"""

import json
import logging
import os
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from config import DATA_CONFIG, RUN_CONFIG
from utils.check_report import CheckReport, _plain
from utils.errors import ArtifactFormatError
from utils.klein_quadric import QuadricModel
from utils.pg3_geometry import LineClass, Pg3Scene

REQUIRED_KEYS = ('format_version', 'tower', 'tight_sets', 'line_classes', 'scene', 'verdicts')


class ArtifactHandler:
    """产物文件与报表"""

    def __init__(self, artifact_dir: Optional[str] = None):
        self.logger = logging.getLogger('TightSetLab.ArtifactHandler')
        self.artifact_dir = artifact_dir or DATA_CONFIG['artifact_dir']

    def _ensure_directory(self, path: str):
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)

    def artifact_path(self, q: int) -> str:
        return os.path.join(self.artifact_dir, DATA_CONFIG['artifact_name'].format(q=q))

    def build_artifact(self, tower_info: Dict, frame_info: Dict, model: QuadricModel, scene: Pg3Scene,
                       sets: Dict, line_classes: Dict[str, LineClass], reports: List[CheckReport],
                       special_set: Optional[Dict] = None, seed: Optional[int] = None) -> Dict:
        """汇总成可独立重新验证的字典；直线以 Plücker 坐标 (F 编码) 保存"""
        lines_block = {}
        for label, lc in line_classes.items():
            lines_block[label] = {
                'label': lc.label,
                'parameter_x': lc.parameter_x,
                'size': lc.size,
                'plucker': scene.plucker[lc.lines].tolist(),
            }
        return {
            'format_version': RUN_CONFIG['format_version'],
            'tower': tower_info,
            'frame': frame_info,
            'special_set': special_set or {},
            'tight_sets': {label: ts.to_dict(model) for label, ts in sets.items()},
            'line_classes': lines_block,
            'scene': scene.to_dict(),
            'seed': seed,
            'verdicts': [r.to_dict(include_timing=False) for r in reports],
        }

    def save_json(self, payload: Dict, path: str) -> str:
        self._ensure_directory(path)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(_plain(payload), f, ensure_ascii=False, indent=2, sort_keys=True)
            f.write('\n')
        return path

    def save_artifact(self, artifact: Dict, path: Optional[str] = None) -> str:
        path = self.save_json(artifact, path or self.artifact_path(artifact['tower']['q']))
        self.logger.info(f"💾 产物已保存: {path}")
        return path

    def load_artifact(self, path: str) -> Dict:
        if not os.path.exists(path):
            raise ArtifactFormatError(f"产物文件不存在: {path}", witness=path)
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ArtifactFormatError(f"产物文件不是合法 JSON: {e}", witness=path)
        missing = [k for k in REQUIRED_KEYS if k not in data]
        if missing:
            raise ArtifactFormatError(f"产物文件缺少字段: {missing}", witness=missing)
        if data['format_version'] != RUN_CONFIG['format_version']:
            raise ArtifactFormatError(f"不支持的格式版本: {data['format_version']}", witness=data['format_version'])
        return data

    @staticmethod
    def tight_set_points(model: QuadricModel, block: Dict) -> np.ndarray:
        coords = np.asarray(block['points'], dtype=np.int64).reshape(-1, 2)
        if len(coords) == 0:
            return np.zeros(0, dtype=np.int64)
        return np.sort(model.point_ids(coords[:, 0], coords[:, 1]))

    @staticmethod
    def line_class_lines(scene: Pg3Scene, block: Dict) -> LineClass:
        pl = np.asarray(block['plucker'], dtype=np.int64).reshape(-1, 6)
        lines = np.sort(scene.line_ids_from_plucker(pl)) if len(pl) else np.zeros(0, dtype=np.int64)
        return LineClass(block['label'], scene.q, int(block['parameter_x']), lines)

    @staticmethod
    def reports_frame(reports: List[CheckReport]) -> pd.DataFrame:
        rows = [{
            'check': r.name,
            'scope': r.scope,
            'checked': r.checked,
            'failures': r.failure_count,
            'pass': '✅' if r.passed else '❌',
            'elapsed_ms': r.elapsed_ms,
        } for r in reports]
        return pd.DataFrame(rows, columns=['check', 'scope', 'checked', 'failures', 'pass', 'elapsed_ms'])

    def save_tables(self, tables: Dict[str, pd.DataFrame], q: int) -> List[str]:
        if not DATA_CONFIG['save_tables_csv']:
            return []
        paths = []
        for name, df in tables.items():
            path = os.path.join(self.artifact_dir, f"{name}_q{q}.csv")
            self._ensure_directory(path)
            df.to_csv(path, encoding='utf-8')
            paths.append(path)
            self.logger.debug(f"表格已保存到CSV: {path}")
        return paths
