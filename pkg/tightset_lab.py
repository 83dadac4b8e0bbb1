# -*- coding: utf-8 -*-
"""
Q⁺(5,q) 紧集与 PG(3,q) Cameron–Liebler 线类构造实验室主程序
"""

import argparse
import json
import os
import signal
import sys
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from config import FIELD_CONFIG, RUN_CONFIG, VERIFY_CONFIG
from utils.artifact_handler import ArtifactHandler
from utils.character_engine import CharacterEngine, verify_gauss_identities, verify_kappa_theorem
from utils.check_report import CheckReport, _plain, all_passed
from utils.errors import (ArtifactFormatError, BadFlag, InvalidQ, NotPrime, ResourceCap, TightSetLabError,
                          VerificationFailed)
from utils.field_tower import build_tower, factor_prime_power, is_prime, verify_cyclic_plane_model, \
    verify_field_identities
from utils.klein_quadric import (QuadricModel, compute_orbits, find_plucker_frame, verify_plucker_frame,
                                 verify_quadric_model)
from utils.logger import log_stage, run_log_path, setup_logger
from utils.pg3_geometry import (build_scene, klein_map, locate_special_elements, transfer_tight_set, verify_klein_map,
                                verify_scene)
from utils.tightset_builder import (TightSet, build_orbit_sum_matrices, build_sign_partition, build_special_set,
                                    build_tight_sets, check_admissible, verify_kappa_bookkeeping,
                                    verify_orbit_sum_identities, verify_special_set)
from utils.verifier import (compute_pattern, compute_point_orbits, extract_a_values, perp_profile,
                            run_negative_controls, sweep_affine_sets, verify_a_values, verify_cameron_liebler,
                            verify_eigenvector_criteria, verify_pattern_props, verify_stabilizer,
                            verify_star_line_counts, verify_tactical_decomposition, verify_tight_set)

COMMANDS = ('construct', 'verify', 'export-pg3', 'report-pattern', 'report-decomposition',
            'verify-charsums', 'bench')
CONSTRUCTION_COMMANDS = ('construct', 'export-pg3', 'report-pattern', 'report-decomposition', 'bench')
CHECK_FAMILIES = ('field', 'characters', 'quadric', 'matrices', 'tight', 'stabilizer', 'negative',
                  'klein', 'cl', 'pattern', 'decomposition')


@dataclass
class JobConfig:
    command: str
    q: Optional[int] = None
    p: Optional[int] = None
    h: Optional[int] = None
    sign: str = FIELD_CONFIG['omega_sign']
    a1: Optional[int] = None
    checks: Optional[List[str]] = None
    seed: int = VERIFY_CONFIG['seed']
    out: Optional[str] = None
    artifact: Optional[str] = None
    line: Optional[int] = None
    label: str = 'L1'
    bench_qs: List[int] = field(default_factory=lambda: list(RUN_CONFIG['bench_qs']))
    threads: Optional[int] = RUN_CONFIG['threads']
    json: bool = False
    mem_cap: Optional[int] = None


def estimate_memory(q: int) -> int:
    """主要数组的字节数估计：域表、二次曲面点、PG(3,q) 关联表"""
    field_bytes = 64 * q ** 3
    points = (q * q + 1) * (q * q + q + 1)
    return field_bytes + 8 * points * (24 + 6 * (q + 1))


def validate_config(job: JobConfig) -> JobConfig:
    """q 分解为 (p, h)，构造类命令检查 q ≡ 5, 9 (mod 12)，并应用各项上限"""
    if job.command not in COMMANDS:
        raise BadFlag(f"未知的子命令: {job.command}", witness=job.command)
    if job.sign not in ('plus', 'minus'):
        raise BadFlag(f"--sign 只能是 plus 或 minus: {job.sign}", witness=job.sign)
    if job.threads is not None and job.threads < 1:
        raise BadFlag(f"--threads 必须为正: {job.threads}", witness=job.threads)
    if job.seed < 0:
        raise BadFlag(f"--seed 必须非负: {job.seed}", witness=job.seed)
    checks = list(job.checks) if job.checks else list(CHECK_FAMILIES)
    unknown = [c for c in checks if c not in CHECK_FAMILIES]
    if unknown:
        raise BadFlag(f"未知的检验族: {unknown}", witness=unknown)

    q, p, h = job.q, job.p, job.h
    if q is not None:
        fp, fh = factor_prime_power(q)
        if (p is not None and p != fp) or (h is not None and h != fh):
            raise BadFlag(f"--q={q} 与 --p/--h 不一致", witness={'q': q, 'p': p, 'h': h})
        p, h = fp, fh
    elif p is not None:
        if not is_prime(p):
            raise NotPrime(f"p={p} 不是素数", witness=p)
        h = 1 if h is None else h
        if h < 1:
            raise BadFlag(f"--h 必须为正: {h}", witness=h)
        q = p ** h
    elif job.command not in ('verify', 'bench'):
        raise BadFlag("需要 --q 或 --p/--h")

    if q is not None:
        if job.command in CONSTRUCTION_COMMANDS:
            check_admissible(q)
        elif p == 2:
            raise InvalidQ(f"q={q} 是偶数", witness=q)
        if job.mem_cap is not None and estimate_memory(q) > job.mem_cap:
            raise ResourceCap(f"q={q} 估计需要 {estimate_memory(q)} 字节，超过 --mem-cap",
                              witness={'estimate': estimate_memory(q), 'cap': job.mem_cap})
    if job.command == 'verify' and not job.artifact:
        raise BadFlag("verify 需要产物文件路径")
    if job.command == 'bench':
        for bq in job.bench_qs:
            check_admissible(bq)
    return replace(job, q=q, p=p, h=h, checks=checks)


class TightSetLab:
    """紧集构造与验证流水线"""

    def __init__(self, job: JobConfig):
        self.logger = setup_logger(log_file=run_log_path(job.command))
        self.job = job
        self.handler = ArtifactHandler()
        self.executor: Optional[ThreadPoolExecutor] = None
        self.reports: List[CheckReport] = []
        self.is_running = False

    # ------------------------------------------------------------------
    # 生命周期
    # ------------------------------------------------------------------
    def start(self):
        workers = self.job.threads or os.cpu_count() or 1
        if workers > 1:
            self.executor = ThreadPoolExecutor(max_workers=workers)
        self.is_running = True

    def stop(self):
        self.is_running = False
        if self.executor is not None:
            self.executor.shutdown(wait=False, cancel_futures=True)
            self.executor = None
        self.logger.info("实验室已停止")

    def execute(self) -> int:
        self.start()
        try:
            handler = {
                'construct': self.cmd_construct,
                'verify': self.cmd_verify,
                'export-pg3': self.cmd_export_pg3,
                'report-pattern': self.cmd_report_pattern,
                'report-decomposition': self.cmd_report_decomposition,
                'verify-charsums': self.cmd_verify_charsums,
                'bench': self.cmd_bench,
            }[self.job.command]
            return handler()
        finally:
            self.stop()

    # ------------------------------------------------------------------
    # 流水线阶段
    # ------------------------------------------------------------------
    def _wants(self, family: str) -> bool:
        return family in self.job.checks

    def _record(self, reports):
        if isinstance(reports, CheckReport):
            reports = [reports]
        for r in reports:
            icon = '✅' if r.passed else '❌'
            self.logger.info(f"{icon} {r.name} [{r.scope}] checked={r.checked} failures={r.failure_count}")
            self.reports.append(r)
        return reports

    def _require(self, reports: List[CheckReport]):
        """紧集、特征向量判据与线类刻画必须一致通过，否则中止"""
        for r in reports:
            r.raise_if_failed()

    def build_field(self, q: int, p: int, h: int):
        self.logger.info(f"🔧 构造域塔 F_{q} ⊂ F_{q}³ (p={p}, h={h}, ω 符号={self.job.sign})")
        tower = build_tower(p, h, omega_sign=self.job.sign)
        if self._wants('field'):
            self._record(verify_field_identities(tower, seed=self.job.seed))
            self._record(verify_cyclic_plane_model(tower))
        return tower

    def build_quadric(self, tower):
        model = QuadricModel(tower)
        if self._wants('quadric'):
            self._record(verify_quadric_model(model, executor=self.executor, seed=self.job.seed))
        orbits = compute_orbits(model)
        self.logger.info(f"🔷 Q⁺(5,{tower.q}): {model.num_points} 点, {orbits.num_orbits} 个 G 轨道")
        return model, orbits

    def build_sets(self, tower, model, orbits):
        S = build_special_set(tower, self.job.a1)
        partition = build_sign_partition(tower, S)
        engine = CharacterEngine(tower)
        if self._wants('matrices'):
            self._record(verify_special_set(tower, S, partition))
            matrices = build_orbit_sum_matrices(tower, S, model, orbits, executor=self.executor, seed=self.job.seed)
            self._record(matrices.tactical)
            self._record(verify_orbit_sum_identities(tower, S, partition, matrices))
            self._record(verify_kappa_bookkeeping(tower, S, matrices, engine))
        else:
            matrices = build_orbit_sum_matrices(tower, S)
        sets = build_tight_sets(tower, model, orbits, S, partition, matrices)
        return S, sets

    def certify_tight_sets(self, model, sets: Dict[str, TightSet], orbits=None):
        for label, ts in sets.items():
            if self._wants('tight'):
                profile = perp_profile(model, ts.points, executor=self.executor)
                reports = [verify_tight_set(model, ts.points, ts.parameter_x, label, profile)]
                reports += verify_eigenvector_criteria(model, ts.points, ts.parameter_x, label, profile)
                self._require(self._record(reports))
        if self._wants('stabilizer') and orbits is not None:
            self._record(verify_stabilizer(model, sets, orbits))

    def build_pg3(self, tower, model):
        frame = find_plucker_frame(tower, seed=self.job.seed)
        scene = build_scene(tower, frame)
        if self._wants('klein'):
            self._record(verify_plucker_frame(tower, frame, seed=self.job.seed))
            self._require(self._record(verify_scene(scene)))
        klein = klein_map(model, frame, scene)
        if self._wants('klein'):
            self._record(verify_klein_map(model, frame, scene, klein, seed=self.job.seed))
        p0, pi = locate_special_elements(model, scene, klein)
        self.logger.info(f"🔶 PG(3,{tower.q}): {scene.num_points} 点, {scene.num_lines} 直线, "
                         f"p₀={scene.points[p0].tolist()}, π={scene.points[pi].tolist()}")
        return frame, scene, klein, p0, pi

    def certify_line_classes(self, scene, line_classes):
        if not self._wants('cl'):
            return
        for label, lc in line_classes.items():
            self._require(self._record(verify_cameron_liebler(scene, lc, lc.parameter_x, seed=self.job.seed)))

    def certify_structure(self, model, scene, klein, line_classes, p0, pi):
        L1 = line_classes['L1']
        a_values = None
        if self._wants('pattern'):
            orbits = compute_point_orbits(model, scene, klein, p0, pi)
            a_values = extract_a_values(scene, L1, orbits)
            self._record(verify_a_values(a_values, scene.q))
            self._record(verify_star_line_counts(scene, L1, p0, pi))
            self._record(verify_pattern_props(scene, L1, L1.parameter_x, p0, a_values, seed=self.job.seed))
        decomposition = None
        if self._wants('decomposition') and self._is_even_power_of_three(scene.q):
            decomposition = verify_tactical_decomposition(scene, L1, line_classes['L2'], p0, pi)
            self._record(decomposition.report)
            self._record(sweep_affine_sets(scene, decomposition, p0, pi))
        return a_values, decomposition

    @staticmethod
    def _is_even_power_of_three(q: int) -> bool:
        p, h = factor_prime_power(q)
        return p == 3 and h % 2 == 0

    def run_pipeline(self, q: int, p: int, h: int) -> Dict:
        started = time.perf_counter()
        with log_stage('field', q):
            tower = self.build_field(q, p, h)
            if self._wants('characters'):
                engine = CharacterEngine(tower)
                self._record(verify_gauss_identities(tower, engine, seed=self.job.seed))
                self._record(verify_kappa_theorem(tower, engine, executor=self.executor))
        with log_stage('quadric', q):
            model, orbits = self.build_quadric(tower)
        with log_stage('tight', q):
            S, sets = self.build_sets(tower, model, orbits)
            self.certify_tight_sets(model, sets, orbits)
            x = sets['T1'].parameter_x
            if self._wants('negative'):
                self._record(run_negative_controls(model, None, x, sets['T1'].size, seed=self.job.seed,
                                                   executor=self.executor))

        with log_stage('pg3', q):
            frame, scene, klein, p0, pi = self.build_pg3(tower, model)
            line_classes = {}
            for label, ts in sets.items():
                lc = transfer_tight_set(ts, klein)
                line_classes[lc.label] = lc
        with log_stage('cl', q):
            self.certify_line_classes(scene, line_classes)
            if self._wants('negative'):
                self._record(run_negative_controls(model, scene, x, sets['T1'].size, seed=self.job.seed,
                                                   executor=self.executor))
        with log_stage('structure', q):
            a_values, decomposition = self.certify_structure(model, scene, klein, line_classes, p0, pi)
        self.logger.info(f"⏱️ q={q} 流水线耗时 {time.perf_counter() - started:.2f}s")
        return {
            'tower': tower, 'model': model, 'orbits': orbits, 'S': S, 'sets': sets, 'frame': frame,
            'scene': scene, 'klein': klein, 'line_classes': line_classes, 'p0': p0, 'pi': pi,
            'a_values': a_values, 'decomposition': decomposition,
        }

    # ------------------------------------------------------------------
    # 输出
    # ------------------------------------------------------------------
    def _emit(self, payload, frames: Optional[Dict[str, pd.DataFrame]] = None):
        if self.job.json:
            print(json.dumps(_plain(payload), ensure_ascii=False, indent=2, sort_keys=True))
            return
        for title, df in (frames or {}).items():
            print(f"\n📊 {title}")
            print(df.to_string())

    def _verdict_frame(self) -> pd.DataFrame:
        return self.handler.reports_frame(self.reports)

    def _exit_code(self) -> int:
        return 0 if all_passed(self.reports) else VerificationFailed.exit_code

    # ------------------------------------------------------------------
    # 子命令
    # ------------------------------------------------------------------
    def cmd_construct(self) -> int:
        job = self.job
        result = self.run_pipeline(job.q, job.p, job.h)
        artifact = self.handler.build_artifact(
            result['tower'].to_dict(), result['frame'].to_dict(), result['model'], result['scene'],
            result['sets'], result['line_classes'], self.reports,
            special_set=result['S'].to_dict(), seed=job.seed)
        path = self.handler.save_artifact(artifact, job.out)
        frames = {f'q={job.q} 验证结果': self._verdict_frame()}
        if result['decomposition'] is not None:
            frames['每点过各类直线数'] = result['decomposition'].lines_per_point
            frames['每线含各类点数'] = result['decomposition'].points_per_line
        sizes = {label: ts.size for label, ts in result['sets'].items()}
        self._emit({'artifact': path, 'sizes': sizes, 'verdicts': [r.to_dict() for r in self.reports]}, frames)
        if not job.json:
            print(f"\n💾 产物: {path}")
            print(f"📦 紧集大小: {sizes}")
        return self._exit_code()

    def cmd_verify(self) -> int:
        job = self.job
        data = self.handler.load_artifact(job.artifact)
        info = data['tower']
        try:
            p, h, sign = int(info['p']), int(info['h']), info['omega_exponent_sign']
        except (KeyError, TypeError, ValueError) as e:
            raise ArtifactFormatError(f"tower 字段不完整: {e}", witness=info)
        seed = data.get('seed')
        self.job = replace(job, sign=sign, seed=job.seed if seed is None else int(seed))
        tower = build_tower(p, h, omega_sign=sign)
        if list(tower.irreducible_poly) != list(info.get('irreducible_poly', [])):
            raise ArtifactFormatError("不可约多项式与重建的域塔不一致", witness=info.get('irreducible_poly'))
        q = tower.q
        model = QuadricModel(tower)
        orbits = compute_orbits(model)

        sets = {}
        for label, block in sorted(data['tight_sets'].items()):
            points = self.handler.tight_set_points(model, block)
            sets[label] = TightSet(label, q, int(block['parameter_x']), points,
                                   sign_convention=block.get('sign_convention', sign),
                                   a1_index=block.get('a1_index'))
        self.certify_tight_sets(model, sets, orbits if set(sets) >= {'T1', 'T2', 'T1prime', 'T2prime'} else None)

        frame, scene, klein, p0, pi = self.build_pg3(tower, model)
        line_classes = {}
        drift = CheckReport('artifact_round_trip', q, error_class=ArtifactFormatError)
        for label, block in sorted(data['line_classes'].items()):
            lc = self.handler.line_class_lines(scene, block)
            line_classes[label] = lc
            source = sets.get(label.replace('L', 'T', 1))
            if source is not None:
                drift.expect(bool(np.array_equal(lc.lines, np.sort(klein[source.points]))),
                             {'line_class': label, 'klein_image': False})
        self.certify_line_classes(scene, line_classes)
        if 'L1' in line_classes and 'L2' in line_classes:
            self.certify_structure(model, scene, klein, line_classes, p0, pi)

        recomputed = {r.name: r.to_dict(include_timing=False) for r in self.reports}
        for stored in data['verdicts']:
            name = stored.get('check')
            if name in recomputed:
                drift.expect(recomputed[name] == stored, {'check': name})
        self._record(drift.finish())
        self._emit({'artifact': job.artifact, 'verdicts': [r.to_dict() for r in self.reports]},
                   {f'{job.artifact} 重新验证': self._verdict_frame()})
        return self._exit_code()

    def cmd_export_pg3(self) -> int:
        job = self.job
        self.job = replace(job, checks=[c for c in job.checks if c in ('tight', 'klein', 'cl')])
        result = self.run_pipeline(job.q, job.p, job.h)
        scene = result['scene']
        payload = {
            'format_version': RUN_CONFIG['format_version'],
            'q': job.q,
            'scene': scene.to_dict(),
            'line_classes': {label: {'label': lc.label, 'parameter_x': lc.parameter_x, 'size': lc.size,
                                     'plucker': scene.plucker[lc.lines].tolist()}
                             for label, lc in result['line_classes'].items()},
        }
        if job.out:
            self.handler.save_json(payload, job.out)
            if not job.json:
                print(f"💾 线类已导出: {job.out}")
        if job.json or not job.out:
            print(json.dumps(_plain(payload), ensure_ascii=False, indent=2, sort_keys=True))
        return self._exit_code()

    def cmd_report_pattern(self) -> int:
        job = self.job
        self.job = replace(job, checks=[c for c in job.checks if c not in ('decomposition', 'negative', 'characters')])
        result = self.run_pipeline(job.q, job.p, job.h)
        scene = result['scene']
        if job.label not in result['line_classes']:
            raise BadFlag(f"未知的线类: {job.label}", witness=sorted(result['line_classes']))
        lc = result['line_classes'][job.label]
        line = job.line if job.line is not None else int(scene.star(result['p0'])[0])
        if not 0 <= line < scene.num_lines:
            raise BadFlag(f"直线编号越界: {line}", witness=line)
        pattern = compute_pattern(scene, lc.mask(scene.num_lines), line)
        frames = {f'{job.label} 沿直线 {line} 的图样': pattern.to_frame()}
        if result['a_values'] is not None:
            frames['a 值'] = pd.DataFrame({'a': list(result['a_values'].values)})
        frames['验证结果'] = self._verdict_frame()
        self._emit({'line': line, 'in_class': pattern.in_class, 'pattern': pattern.matrix.tolist(),
                    'a_values': result['a_values'].to_dict() if result['a_values'] else None,
                    'verdicts': [r.to_dict() for r in self.reports]}, frames)
        return self._exit_code()

    def cmd_report_decomposition(self) -> int:
        job = self.job
        if not self._is_even_power_of_three(job.q):
            raise InvalidQ(f"可裂分解要求 q = 3^(2e)，而 q={job.q}", witness=job.q)
        self.job = replace(job, checks=sorted(set(job.checks) - {'characters', 'negative'}) + ['decomposition'])
        result = self.run_pipeline(job.q, job.p, job.h)
        dec = result['decomposition']
        frames = {
            '每点过各类直线数 (实测)': dec.lines_per_point,
            '每点过各类直线数 (理论)': dec.expected_lines_per_point,
            '每线含各类点数 (实测)': dec.points_per_line,
            '每线含各类点数 (理论)': dec.expected_points_per_line,
            '验证结果': self._verdict_frame(),
        }
        self.handler.save_tables({'lines_per_point': dec.lines_per_point,
                                  'points_per_line': dec.points_per_line}, job.q)
        self._emit({'lines_per_point': dec.lines_per_point.to_dict(orient='index'),
                    'points_per_line': dec.points_per_line.to_dict(orient='index'),
                    'verdicts': [r.to_dict() for r in self.reports]}, frames)
        return self._exit_code()

    def cmd_verify_charsums(self) -> int:
        job = self.job
        tower = build_tower(job.p, job.h, omega_sign=job.sign)
        engine = CharacterEngine(tower)
        self._record(verify_gauss_identities(tower, engine, seed=job.seed))
        self._record(verify_kappa_theorem(tower, engine, executor=self.executor))
        self._emit({'verdicts': [r.to_dict() for r in self.reports]},
                   {f'q={tower.q} 特征和恒等式': self._verdict_frame()})
        return self._exit_code()

    def cmd_bench(self) -> int:
        job = self.job
        qs = [job.q] if job.q is not None else job.bench_qs
        self.job = replace(job, checks=['tight', 'cl'])
        rows = []
        for q in qs:
            with log_stage('bench', q):
                p, h = factor_prime_power(q)
                started = time.perf_counter()
                tower = build_tower(p, h, omega_sign=job.sign)
                model, orbits = self.build_quadric(tower)
                _, sets = self.build_sets(tower, model, orbits)
                built = time.perf_counter()
                self.certify_tight_sets(model, {'T1': sets['T1']})
                certified = time.perf_counter()
                frame, scene, klein, p0, pi = self.build_pg3(tower, model)
                L1 = transfer_tight_set(sets['T1'], klein)
                self.certify_line_classes(scene, {'L1': L1})
                done = time.perf_counter()
                rows.append({'q': q, 'construct_s': round(built - started, 3),
                             'tight_set_s': round(certified - built, 3),
                             'pg3_and_cl_s': round(done - certified, 3), 'total_s': round(done - started, 3)})
                self.logger.info(f"⏱️ q={q}: 共 {done - started:.2f}s")
        df = pd.DataFrame(rows)
        self._emit({'bench': rows, 'verdicts': [r.to_dict() for r in self.reports]}, {'基准测试': df})
        return self._exit_code()


# ----------------------------------------------------------------------
# 命令行
# ----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--q', type=int, help='域的阶 q = p^h')
    common.add_argument('--p', type=int, help='特征 p')
    common.add_argument('--h', type=int, help='次数 h')
    common.add_argument('--sign', choices=['plus', 'minus'], default=FIELD_CONFIG['omega_sign'],
                        help='ω = α^(±(q²+q+1)) 的符号约定')
    common.add_argument('--a1', type=int, help='a₁ 的离散对数')
    common.add_argument('--threads', type=int, default=RUN_CONFIG['threads'], help='工作线程数')
    common.add_argument('--seed', type=int, default=VERIFY_CONFIG['seed'], help='抽样种子')
    common.add_argument('--out', help='输出路径')
    common.add_argument('--json', action='store_true', help='以 JSON 输出')
    common.add_argument('--checks', help='逗号分隔的检验族: ' + ','.join(CHECK_FAMILIES))
    common.add_argument('--mem-cap', type=int, dest='mem_cap', help='内存上限 (字节)')

    parser = argparse.ArgumentParser(prog='tightset_lab', description='Q⁺(5,q) 紧集与 Cameron–Liebler 线类实验室')
    sub = parser.add_subparsers(dest='command', required=True)
    sub.add_parser('construct', parents=[common], help='构造并验证，写出产物文件')
    verify = sub.add_parser('verify', parents=[common], help='重新验证产物文件')
    verify.add_argument('artifact', help='产物文件路径')
    sub.add_parser('export-pg3', parents=[common], help='导出 PG(3,q) 中的线类')
    pattern = sub.add_parser('report-pattern', parents=[common], help='输出某条直线的图样')
    pattern.add_argument('--line', type=int, help='直线编号 (默认取过 p₀ 的第一条)')
    pattern.add_argument('--label', default='L1', help='线类名')
    sub.add_parser('report-decomposition', parents=[common], help='输出可裂分解表 (q = 3^(2e))')
    sub.add_parser('verify-charsums', parents=[common], help='特征和恒等式')
    bench = sub.add_parser('bench', parents=[common], help='大 q 的计时')
    bench.add_argument('--qs', type=int, nargs='+', default=list(RUN_CONFIG['bench_qs']), help='要计时的 q')
    return parser


def job_from_args(args: argparse.Namespace) -> JobConfig:
    checks = [c.strip() for c in args.checks.split(',') if c.strip()] if args.checks else None
    return JobConfig(
        command=args.command, q=args.q, p=args.p, h=args.h, sign=args.sign, a1=args.a1, checks=checks,
        seed=args.seed, out=args.out, artifact=getattr(args, 'artifact', None), line=getattr(args, 'line', None),
        label=getattr(args, 'label', 'L1'), bench_qs=getattr(args, 'qs', list(RUN_CONFIG['bench_qs'])),
        threads=args.threads, json=args.json, mem_cap=args.mem_cap,
    )


lab: Optional[TightSetLab] = None


def run(argv: Optional[List[str]] = None) -> int:
    """解析参数并执行；返回退出码 (0 成功, 1 验证失败, 2 非法输入, 3 资源上限)"""
    global lab
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else BadFlag.exit_code
    logger = setup_logger(log_file=run_log_path(args.command))
    as_json = args.json
    try:
        job = validate_config(job_from_args(args))
        lab = TightSetLab(job)
        return lab.execute()
    except TightSetLabError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        if as_json:
            print(json.dumps(_plain(e.to_dict()), ensure_ascii=False, indent=2, sort_keys=True))
        return e.exit_code
    except Exception as e:
        logger.error(f"运行异常: {e}")
        logger.error(traceback.format_exc())
        return 1
    finally:
        lab = None


def signal_handler(signum, frame):
    """信号处理器"""
    print("\n收到停止信号，正在关闭...", file=sys.stderr)
    if lab is not None:
        lab.stop()
    sys.exit(1)


def main():
    signal.signal(signal.SIGINT, signal_handler)
    signal.signal(signal.SIGTERM, signal_handler)
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
