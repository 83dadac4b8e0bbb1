# -*- coding: utf-8 -*-
"""
校验报告
"""

import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Type

from config import VERIFY_CONFIG
from utils.errors import LabVerificationError, VerificationFailed


@dataclass
class CheckReport:
    """单个恒等式族 / 检验项的结果

    failures 只保留前 max_witnesses 个反例，failure_count 记录总数。
    """
    name: str
    q: int
    scope: str = 'exhaustive'
    domain_size: int = 0
    checked: int = 0
    failures: List[Any] = field(default_factory=list)
    failure_count: int = 0
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = 0.0
    error_class: Type[LabVerificationError] = VerificationFailed
    _started: float = field(default_factory=time.perf_counter, repr=False)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def add_failure(self, witness: Any):
        self.failure_count += 1
        if len(self.failures) < VERIFY_CONFIG['max_witnesses']:
            self.failures.append(witness)

    def add_failures(self, witnesses):
        for w in witnesses:
            self.add_failure(w)

    def expect(self, condition: bool, witness: Any):
        """计一次检验，条件不成立时记录反例"""
        self.checked += 1
        if not condition:
            self.add_failure(witness)

    def finish(self) -> 'CheckReport':
        self.elapsed_ms = round((time.perf_counter() - self._started) * 1000.0, 3)
        return self

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = {
            'check': self.name,
            'q': self.q,
            'scope': self.scope,
            'domain_size': int(self.domain_size),
            'checked': int(self.checked),
            'pass': self.passed,
            'failure_count': int(self.failure_count),
            'counterexamples': _plain(self.failures),
        }
        if self.details:
            data['details'] = _plain(self.details)
        if include_timing:
            data['elapsed_ms'] = self.elapsed_ms
        return data

    def raise_if_failed(self):
        if not self.passed:
            raise self.error_class(
                f"{self.name} 检验失败 ({self.failure_count} 个反例)",
                witness=_plain(self.failures),
            )


def all_passed(reports: List[CheckReport]) -> bool:
    return all(r.passed for r in reports)


def _plain(obj: Any) -> Any:
    """把 numpy 标量/数组转换成可 JSON 序列化的普通类型"""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, 'tolist'):
        return obj.tolist()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj
