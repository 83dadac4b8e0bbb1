# -*- coding: utf-8 -*-
"""
独立验证

紧集定义、两个特征向量判据、Cameron–Liebler 刻画、图样 (pattern)、a 值、
可裂分解表、仿射两交集、稳定子群。所有判定都是精确整数计数。
"""

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import VERIFY_CONFIG
from utils.check_report import CheckReport
from utils.errors import (BadFlag, CriterionMismatch, InvalidQ, ModelViolation, NotConstantOnOrbit,
                          NotTactical, NotTwoIntersection, OrbitMismatch, PatternViolation, ResourceCap,
                          StabilizerViolation, VerificationFailed)
from utils.klein_quadric import IsometryMap, OrbitTable, QuadricModel, orbits_from_permutations
from utils.pg3_geometry import (LineClass, Pg3Scene, build_regular_spread, induced_point_permutation,
                                line_permutation, random_collineation)

POINT_CLASSES = ['{p}', 'π', 'P1', 'P2']
LINE_CLASSES = ['star(p)', 'line(π)', 'L1', 'L2']


@dataclass
class PatternMatrix:
    line: int
    matrix: np.ndarray            # 行：直线上的点，列：过直线的平面
    points: np.ndarray
    planes: np.ndarray
    in_class: bool

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.matrix,
                            index=[f"p{int(p)}" for p in self.points],
                            columns=[f"π{int(t)}" for t in self.planes])


@dataclass
class PointOrbits:
    labels: np.ndarray            # 点 → 轨道编号 (0 = {p₀}, 1 = π, 2..5 = 平面外)
    sizes: np.ndarray
    p0: int
    pi: int


@dataclass
class AValues:
    values: Tuple[int, int, int, int]
    by_orbit: Dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {'a': list(self.values), 'by_orbit': {str(k): v for k, v in self.by_orbit.items()}}


@dataclass
class DecompositionReport:
    point_class: np.ndarray
    line_class: np.ndarray
    lines_per_point: pd.DataFrame
    points_per_line: pd.DataFrame
    expected_lines_per_point: pd.DataFrame
    expected_points_per_line: pd.DataFrame
    report: CheckReport


@dataclass
class AffineSet:
    plane: int
    points: np.ndarray
    intersection_sizes: Dict[int, int]       # |ℓ ∩ K| ↦ 直线条数
    m: int
    n: int

    @property
    def size(self) -> int:
        return len(self.points)


# ----------------------------------------------------------------------
# 紧集与特征向量判据
# ----------------------------------------------------------------------
def perp_profile(model: QuadricModel, members: np.ndarray, executor=None) -> Dict[str, np.ndarray]:
    """对每个点 p 一次扫描得到 |p^⊥ ∩ T|、|p^⊥|、|p^⊥ ∩ (π₁∪π₂ 之外)|"""
    in_t = np.zeros(model.num_points, dtype=np.int64)
    in_t[members] = 1
    plane = (model.in_pi1 | model.in_pi2).astype(np.int64)
    classes = 2 * in_t + plane
    counts = model.collinear_class_counts(np.arange(model.num_points), classes, 4, executor=executor)
    return {
        'in_set': counts[:, 2] + counts[:, 3],
        'perp': counts.sum(axis=1),
        'perp_off': counts[:, 0] + counts[:, 2],
        'member': in_t,
    }


def verify_tight_set(model: QuadricModel, members: np.ndarray, x: int, label: str = 'T',
                     profile: Optional[Dict[str, np.ndarray]] = None, executor=None) -> CheckReport:
    """|p^⊥ ∩ T| = x(q+1) + q²·[p ∈ T]，对所有点"""
    q = model.q
    profile = profile or perp_profile(model, members, executor=executor)
    n_p = profile['in_set']
    c = profile['member']
    expected = x * (q + 1) + q * q * c
    rep = CheckReport(f'tight_set[{label}]', q, domain_size=model.num_points, error_class=VerificationFailed)
    rep.checked = model.num_points
    bad = np.nonzero(n_p != expected)[0]
    rep.add_failures({'point': int(p), 'count': int(n_p[p]), 'expected': int(expected[p])} for p in bad)
    rep.details['x'] = x
    rep.details['size'] = int(c.sum())
    rep.details['off_counts'] = sorted(set(n_p[c == 0].tolist()))
    rep.details['on_counts'] = sorted(set(n_p[c == 1].tolist()))
    return rep.finish()


def verify_eigenvector_criteria(model: QuadricModel, members: np.ndarray, x: int, label: str = 'T',
                                profile: Optional[Dict[str, np.ndarray]] = None,
                                executor=None) -> List[CheckReport]:
    """(c - x/(q²+1)·j)A = (q²-1)(c - x/(q²+1)·j)，以及避开 π₁∪π₂ 时的约化版本

    两边乘以分母后逐点累加，不构造邻接矩阵 A。
    """
    q = model.q
    profile = profile or perp_profile(model, members, executor=executor)
    n_p, c = profile['in_set'], profile['member']
    perp, perp_off = profile['perp'], profile['perp_off']
    reports = []

    rep = CheckReport(f'eigenvector[{label}]', q, domain_size=model.num_points, error_class=CriterionMismatch)
    degree = perp - 1
    rep.expect(bool(np.all(degree == q * (q + 1) ** 2)), {'jA_row_sums': sorted(set(degree.tolist()))})
    lhs = (q * q + 1) * (n_p - c) - x * degree
    rhs = (q * q - 1) * ((q * q + 1) * c - x)
    rep.checked += model.num_points
    rep.add_failures({'point': int(p), 'lhs': int(lhs[p]), 'rhs': int(rhs[p])} for p in np.nonzero(lhs != rhs)[0])
    reports.append(rep.finish())

    rep = CheckReport(f'eigenvector_reduced[{label}]', q, error_class=CriterionMismatch)
    off = ~(model.in_pi1 | model.in_pi2)
    if np.any(c[~off]):
        rep.scope = 'not-applicable'
        rep.details['reason'] = 'set meets π₁ ∪ π₂'
    else:
        lhs = (q * q - 1) * (n_p - c) - x * (perp_off - 1)
        rhs = (q * q - 1) * ((q * q - 1) * c - x)
        rep.domain_size = int(off.sum())
        rep.checked = int(off.sum())
        bad = np.nonzero(off & (lhs != rhs))[0]
        rep.add_failures({'point': int(p), 'lhs': int(lhs[p]), 'rhs': int(rhs[p])} for p in bad)
    reports.append(rep.finish())
    return reports


# ----------------------------------------------------------------------
# Cameron–Liebler 线类
# ----------------------------------------------------------------------
def star_counts(scene: Pg3Scene, line_mask: np.ndarray) -> np.ndarray:
    return line_mask[scene.point_lines].sum(axis=1)


def plane_counts(scene: Pg3Scene, line_mask: np.ndarray) -> np.ndarray:
    return line_mask[scene.plane_lines].sum(axis=1)


def pencil_counts(scene: Pg3Scene, line_mask: np.ndarray, points: np.ndarray, planes: np.ndarray) -> np.ndarray:
    """|pencil(r, τ) ∩ L|，对给定的关联点-平面对"""
    lines = np.nonzero(line_mask)[0]
    pairs = (scene.line_points[lines][:, :, None] * scene.num_points
             + scene.line_planes[lines][:, None, :]).ravel()
    keys, counts = np.unique(pairs, return_counts=True)
    wanted = points * scene.num_points + planes
    pos = np.minimum(np.searchsorted(keys, wanted), max(len(keys) - 1, 0))
    if len(keys) == 0:
        return np.zeros(len(wanted), dtype=np.int64)
    return np.where(keys[pos] == wanted, counts[pos], 0)


def verify_cameron_liebler(scene: Pg3Scene, L: LineClass, x: int, seed: Optional[int] = None,
                           spread_samples: Optional[int] = None) -> List[CheckReport]:
    q = scene.q
    seed = VERIFY_CONFIG['seed'] if seed is None else seed
    rng = np.random.default_rng(seed)
    mask = L.mask(scene.num_lines)
    stars = star_counts(scene, mask)
    planes = plane_counts(scene, mask)
    c = mask.astype(np.int64)
    reports = []

    # (ii) 每条直线 ℓ 与 L∖{ℓ} 中相交直线数
    rep = CheckReport(f'cl_line_counts[{L.label}]', q, domain_size=scene.num_lines, error_class=VerificationFailed)
    meets = stars[scene.line_points].sum(axis=1) - (q + 1) * c
    expected = x * (q + 1) + (q * q - 1) * c
    rep.checked = scene.num_lines
    rep.add_failures({'line': int(l), 'count': int(meets[l]), 'expected': int(expected[l])}
                     for l in np.nonzero(meets != expected)[0])
    rep.details['off_counts'] = sorted(set(meets[c == 0].tolist()))
    rep.details['on_counts'] = sorted(set(meets[c == 1].tolist()))
    reports.append(rep.finish())

    # (i) |star(r) ∩ L| + |line(τ) ∩ L| = x + (q+1)|pencil(r,τ) ∩ L|
    pp = scene.point_planes
    all_points = np.repeat(np.arange(scene.num_points), pp.shape[1])
    all_planes = pp.ravel()
    if len(all_points) <= VERIFY_CONFIG['pencil_sample']:
        pts, pls = all_points, all_planes
        scope = 'exhaustive'
    else:
        pick = np.sort(rng.choice(len(all_points), VERIFY_CONFIG['pencil_sample'], replace=False))
        pts, pls = all_points[pick], all_planes[pick]
        scope = f'sampled(seed={seed})'
    rep = CheckReport(f'cl_pencil_identity[{L.label}]', q, scope=scope, domain_size=len(all_points),
                      error_class=VerificationFailed)
    pencils = pencil_counts(scene, mask, pts, pls)
    bad = stars[pts] + planes[pls] != x + (q + 1) * pencils
    rep.checked = len(pts)
    rep.add_failures({'point': int(r), 'plane': int(t)} for r, t in zip(pts[bad], pls[bad]))
    reports.append(rep.finish())

    # 展开
    n = VERIFY_CONFIG['spread_samples'] if spread_samples is None else spread_samples
    rep = CheckReport(f'cl_spreads[{L.label}]', q, scope=f'regular + {n} random collineations(seed={seed})',
                      error_class=VerificationFailed)
    transforms = [None] + [random_collineation(scene.tower, rng) for _ in range(n)]
    hits = []
    for k, A in enumerate(transforms):
        spread = build_regular_spread(scene.tower, scene, A)
        hit = int(mask[spread.lines].sum())
        hits.append(hit)
        rep.expect(hit == x, {'spread': k, 'meets': hit})
    rep.domain_size = len(transforms)
    rep.details['intersections'] = sorted(set(hits))
    reports.append(rep.finish())
    return reports


# ----------------------------------------------------------------------
# 图样
# ----------------------------------------------------------------------
def compute_pattern(scene: Pg3Scene, line_mask: np.ndarray, line: int) -> PatternMatrix:
    """t_ij = 过 ℓ 上第 i 个点、在过 ℓ 的第 j 个平面内的 L∖{ℓ} 中直线数"""
    pts = scene.line_points[line]
    planes = scene.line_planes[line]
    through = scene.point_lines[pts]
    keep = line_mask[through] & (through != line)
    m_planes = scene.line_planes[through]
    which = (m_planes[:, :, :, None] == planes[None, None, None, :]).any(axis=2)
    matrix = (which & keep[:, :, None]).sum(axis=1).astype(np.int64)
    return PatternMatrix(int(line), matrix, pts, planes, bool(line_mask[line]))


def verify_pattern_props(scene: Pg3Scene, L: LineClass, x: int, p0: Optional[int] = None,
                         a_values: Optional['AValues'] = None, seed: Optional[int] = None) -> CheckReport:
    """(i) 0 ≤ t ≤ q  (ii) Σt  (iii) 行和 + 列和  (iv) Σt²；过 p₀ 的直线另查行结构"""
    q = scene.q
    seed = VERIFY_CONFIG['seed'] if seed is None else seed
    mask = L.mask(scene.num_lines)
    if scene.num_lines <= VERIFY_CONFIG['pattern_sample']:
        lines = np.arange(scene.num_lines)
        scope = 'exhaustive'
    else:
        rng = np.random.default_rng(seed)
        lines = np.sort(rng.choice(scene.num_lines, VERIFY_CONFIG['pattern_sample'], replace=False))
        if p0 is not None:
            lines = np.union1d(lines, scene.star(p0))
        scope = f'sampled(seed={seed})'
    rep = CheckReport(f'pattern[{L.label}]', q, scope=scope, domain_size=scene.num_lines,
                      error_class=PatternViolation)
    through_p0 = set(scene.star(p0).tolist()) if p0 is not None else set()
    expected_rows = None
    if a_values is not None:
        expected_rows = sorted([0, (q - 1) // 2] + [a for a in a_values.values for _ in range((q - 1) // 4)])

    for line in lines:
        pat = compute_pattern(scene, mask, int(line))
        t = pat.matrix
        cl = int(pat.in_class)
        rows, cols = t.sum(axis=1), t.sum(axis=0)
        checks = {
            'range': bool(np.all((t >= 0) & (t <= q))),
            'sum': int(t.sum()) == x * (q + 1) + cl * (q * q - 1),
            'row_col': bool(np.all(rows[:, None] + cols[None, :] == x + (q + 1) * t + (q - 1) * cl)),
            'squares': int((t * t).sum()) == (x - cl) ** 2 + q * (x - cl) + cl * q * q * (q + 1),
        }
        if int(line) in through_p0:
            constant = bool(np.all(t == t[:, :1]))
            checks['p0_rows_constant'] = constant
            if expected_rows is not None and constant:
                checks['p0_row_values'] = sorted(t[:, 0].tolist()) == expected_rows
        rep.checked += 1
        failed = [k for k, ok in checks.items() if not ok]
        if failed:
            rep.add_failure({'line': int(line), 'failed': failed})
    rep.details['p0_lines_checked'] = len(through_p0 & set(lines.tolist()))
    return rep.finish()


# ----------------------------------------------------------------------
# PG(3,q) 上的点轨道与 a 值
# ----------------------------------------------------------------------
def compute_point_orbits(model: QuadricModel, scene: Pg3Scene, klein: np.ndarray, p0: int, pi: int) -> PointOrbits:
    """c、z 经 Klein 对应诱导的直射变换下 PG(3,q) 的点轨道"""
    q = model.q
    P = q * q + q + 1
    gens = []
    for tag in ('c', 'z'):
        lp = line_permutation(model.permutation(IsometryMap(tag)), klein)
        gens.append(induced_point_permutation(scene, lp))
    raw = orbits_from_permutations(scene.num_points, gens)
    reps, inverse, sizes = np.unique(raw, return_inverse=True, return_counts=True)

    on_pi = np.zeros(scene.num_points, dtype=bool)
    on_pi[scene.plane_points[pi]] = True
    orbit_p0 = inverse[p0]
    orbit_pi = inverse[scene.plane_points[pi][0]]
    problems = []
    if sizes[orbit_p0] != 1:
        problems.append({'p0_orbit_size': int(sizes[orbit_p0])})
    if sizes[orbit_pi] != P or not np.array_equal(inverse == orbit_pi, on_pi):
        problems.append({'pi_orbit_size': int(sizes[orbit_pi])})
    others = [o for o in range(len(sizes)) if o not in (orbit_p0, orbit_pi)]
    if len(others) != 4 or any(sizes[o] != (q - 1) // 4 * P for o in others):
        problems.append({'off_orbit_sizes': [int(sizes[o]) for o in others]})
    if problems:
        raise OrbitMismatch("PG(3,q) 点轨道与预期不符", witness=problems)

    relabel = np.empty(len(sizes), dtype=np.int64)
    relabel[orbit_p0] = 0
    relabel[orbit_pi] = 1
    for k, o in enumerate(others):
        relabel[o] = 2 + k
    labels = relabel[inverse]
    return PointOrbits(labels, np.bincount(labels), p0, pi)


def extract_a_values(scene: Pg3Scene, L: LineClass, orbits: PointOrbits) -> AValues:
    q = scene.q
    stars = star_counts(scene, L.mask(scene.num_lines))
    by_orbit = {}
    for o in range(2, 6):
        vals = np.unique(stars[orbits.labels == o])
        if len(vals) != 1 or vals[0] % (q + 1):
            raise NotConstantOnOrbit(f"点星计数在轨道 {o} 上不是 q+1 的常数倍", witness={'orbit': o, 'values': vals.tolist()})
        by_orbit[o] = int(vals[0]) // (q + 1)
    values = tuple(sorted(by_orbit.values()))
    return AValues(values, by_orbit)


def verify_a_values(a: AValues, q: int) -> CheckReport:
    rep = CheckReport('a_values', q, error_class=NotConstantOnOrbit)
    a1, a2, a3, a4 = a.values
    rep.expect(a4 == q - a1, {'a4': a4, 'q-a1': q - a1})
    rep.expect(a3 == q - a2, {'a3': a3, 'q-a2': q - a2})
    rep.expect(a1 * (q - a1) + a2 * (q - a2) == q * (q - 1) // 2, {'a1': a1, 'a2': a2})
    # (q-√(2q-1))/2 ≤ a₁ ≤ (q-√q)/2 ≤ a₂ ≤ (q-1)/2，写成整数不等式
    rep.expect(q <= (q - 2 * a1) ** 2 <= 2 * q - 1 and q - 2 * a1 > 0, {'a1_bounds': a1})
    rep.expect((q - 2 * a2) ** 2 <= q and q - 2 * a2 >= 1, {'a2_bounds': a2})
    r = math.isqrt(q)
    if r * r == q and q % 3 == 0:
        rep.expect(a1 == a2 == (q - r) // 2, {'forced': (q - r) // 2})
    rep.details.update(a.to_dict())
    return rep.finish()


def verify_star_line_counts(scene: Pg3Scene, L: LineClass, p0: int, pi: int) -> CheckReport:
    """r ∈ π: |star(r) ∩ L| = (q²-1)/2；star(p₀)、line(π) 与 L 不交；τ ∋ p₀: |line(τ) ∩ L| = (q²-1)/2"""
    q = scene.q
    half = (q * q - 1) // 2
    mask = L.mask(scene.num_lines)
    stars = star_counts(scene, mask)
    planes = plane_counts(scene, mask)
    rep = CheckReport(f'star_line_counts[{L.label}]', q, error_class=VerificationFailed)
    on_pi = scene.plane_points[pi]
    rep.checked += len(on_pi)
    rep.add_failures({'point': int(r), 'star': int(stars[r])} for r in on_pi if stars[r] != half)
    rep.expect(stars[p0] == 0, {'star(p0)': int(stars[p0])})
    rep.expect(planes[pi] == 0, {'line(pi)': int(planes[pi])})
    through = scene.point_planes[p0]
    rep.checked += len(through)
    rep.add_failures({'plane': int(t), 'line': int(planes[t])} for t in through if planes[t] != half)
    return rep.finish()


# ----------------------------------------------------------------------
# 可裂分解与仿射集
# ----------------------------------------------------------------------
def _square_root_of_power_of_three(q: int) -> int:
    r = math.isqrt(q)
    e = r
    while e % 3 == 0:
        e //= 3
    if r * r != q or e != 1 or r == 1:
        raise InvalidQ(f"q={q} 不是 3^(2e)", witness=q)
    return r


def expected_tables(q: int) -> Tuple[pd.DataFrame, pd.DataFrame]:
    s = _square_root_of_power_of_three(q)
    half = (q * q - 1) // 2
    lpp = [
        [q * q + q + 1, 0, 0, 0],
        [1, q + 1, half, half],
        [1, 0, (q + 1) * (q - s) // 2, (q + 1) * (q + s) // 2],
        [1, 0, (q + 1) * (q + s) // 2, (q + 1) * (q - s) // 2],
    ]
    ppl = [
        [1, 0, 0, 0],
        [1, q + 1, 1, 1],
        [(q - 1) // 2, 0, (q - s) // 2, (q + s) // 2],
        [(q - 1) // 2, 0, (q + s) // 2, (q - s) // 2],
    ]
    return (pd.DataFrame(lpp, index=POINT_CLASSES, columns=LINE_CLASSES),
            pd.DataFrame(ppl, index=POINT_CLASSES, columns=LINE_CLASSES))


def verify_tactical_decomposition(scene: Pg3Scene, L1: LineClass, L2: LineClass, p0: int, pi: int) -> DecompositionReport:
    q = scene.q
    s = _square_root_of_power_of_three(q)
    exp_lpp, exp_ppl = expected_tables(q)
    m1 = L1.mask(scene.num_lines)
    m2 = L2.mask(scene.num_lines)
    stars = star_counts(scene, m1)

    point_class = np.full(scene.num_points, -1, dtype=np.int64)
    point_class[scene.plane_points[pi]] = 1
    point_class[p0] = 0
    rest = point_class < 0
    point_class[rest & (stars == (q + 1) * (q - s) // 2)] = 2
    point_class[rest & (stars == (q + 1) * (q + s) // 2)] = 3

    line_class = np.full(scene.num_lines, -1, dtype=np.int64)
    line_class[scene.star(p0)] = 0
    line_class[scene.lines_in_plane(pi)] = 1
    line_class[m1] = 2
    line_class[m2] = 3

    rep = CheckReport('tactical_decomposition', q, domain_size=scene.num_points + scene.num_lines,
                      error_class=NotTactical)
    rep.expect(not np.any(point_class < 0), {'unclassified_points': int((point_class < 0).sum())})
    rep.expect(not np.any(line_class < 0), {'unclassified_lines': int((line_class < 0).sum())})
    rep.expect(int(np.count_nonzero(m1 & m2)) == 0, 'L1 ∩ L2 ≠ ∅')

    # 每个点按线类计数，每条线按点类计数
    per_point = np.stack([(line_class[scene.point_lines] == k).sum(axis=1) for k in range(4)], axis=1)
    per_line = np.stack([(point_class[scene.line_points] == k).sum(axis=1) for k in range(4)], axis=1)
    lpp = np.zeros((4, 4), dtype=np.int64)
    ppl = np.zeros((4, 4), dtype=np.int64)
    for k in range(4):
        rows = per_point[point_class == k]
        if len(rows):
            lpp[k] = rows[0]
            rep.checked += len(rows)
            for idx in np.nonzero(np.any(rows != rows[0], axis=1))[0][:VERIFY_CONFIG['max_witnesses']]:
                rep.add_failure({'point_class': POINT_CLASSES[k], 'point': int(np.nonzero(point_class == k)[0][idx])})
        cols = per_line[line_class == k]
        if len(cols):
            ppl[:, k] = cols[0]
            rep.checked += len(cols)
            for idx in np.nonzero(np.any(cols != cols[0], axis=1))[0][:VERIFY_CONFIG['max_witnesses']]:
                rep.add_failure({'line_class': LINE_CLASSES[k], 'line': int(np.nonzero(line_class == k)[0][idx])})

    lines_per_point = pd.DataFrame(lpp, index=POINT_CLASSES, columns=LINE_CLASSES)
    points_per_line = pd.DataFrame(ppl, index=POINT_CLASSES, columns=LINE_CLASSES)
    rep.expect(lines_per_point.equals(exp_lpp), {'lines_per_point': lpp.tolist()})
    rep.expect(points_per_line.equals(exp_ppl), {'points_per_line': ppl.tolist()})
    rep.details['class_sizes'] = {'points': np.bincount(point_class[point_class >= 0], minlength=4).tolist(),
                                  'lines': np.bincount(line_class[line_class >= 0], minlength=4).tolist()}
    return DecompositionReport(point_class, line_class, lines_per_point, points_per_line,
                               exp_lpp, exp_ppl, rep.finish())


def extract_affine_set(scene: Pg3Scene, decomposition: DecompositionReport, tau: int, p0: int, pi: int) -> AffineSet:
    """K = P₁ ∩ (τ ∖ π)，检查 τ 的每条仿射直线与 K 交于 m 或 n 个点"""
    q = scene.q
    if tau == pi or scene.incident(p0, tau):
        raise BadFlag(f"平面 {tau} 必须不同于 π 且不过 p₀", witness=tau)
    on_pi = np.zeros(scene.num_points, dtype=bool)
    on_pi[scene.plane_points[pi]] = True
    in_k = decomposition.point_class == 2
    pts = scene.plane_points[tau]
    K = pts[in_k[pts] & ~on_pi[pts]]

    lines = scene.lines_in_plane(tau)
    # τ ∩ π 这条直线不是仿射直线
    affine = lines[~np.all(on_pi[scene.line_points[lines]], axis=1)]
    meets = in_k[scene.line_points[affine]].sum(axis=1)
    values, counts = np.unique(meets, return_counts=True)
    sizes = {int(v): int(c) for v, c in zip(values, counts)}
    if len(values) != 2 or len(affine) != q * q + q:
        raise NotTwoIntersection(f"平面 {tau} 上的交数不是两种", witness={'plane': tau, 'sizes': sizes})
    m, n = int(values[0]), int(values[1])
    k = len(K)
    if k * k - k * (q * (n + m - 1) + n + m) + m * n * q * (q + 1) != 0:
        raise NotTwoIntersection("|K| 不满足 (m,n,k) 的二次关系", witness={'k': k, 'm': m, 'n': n})
    return AffineSet(int(tau), K, sizes, m, n)


def sweep_affine_sets(scene: Pg3Scene, decomposition: DecompositionReport, p0: int, pi: int) -> CheckReport:
    q = scene.q
    planes = [t for t in range(scene.num_points) if t != pi and not scene.incident(p0, t)]
    rep = CheckReport('affine_two_intersection', q, domain_size=len(planes), error_class=NotTwoIntersection)
    types, size_hist = {}, {}
    first_plane = {}
    for tau in planes:
        try:
            aff = extract_affine_set(scene, decomposition, tau, p0, pi)
        except NotTwoIntersection as e:
            rep.expect(False, e.witness)
            continue
        rep.checked += 1
        key = f"({aff.m},{aff.n})"
        types[key] = types.get(key, 0) + 1
        size_hist[aff.size] = size_hist.get(aff.size, 0) + 1
        first_plane.setdefault(aff.size, (tau, key))
    rep.expect(len(types) == 1, {'types': types})
    # 两个大小 (q²∓q)/2 互补，按大小升序给出各自的第一个见证平面
    expected_size = (q * q - q) // 2
    rep.expect(expected_size in first_plane, {'missing_size': expected_size})
    rep.details['types'] = types
    rep.details['sizes'] = {str(k): v for k, v in sorted(size_hist.items())}
    rep.details['expected_size'] = expected_size
    rep.details['witness_planes'] = [{'size': int(size), 'plane': int(tau), 'type': key}
                                     for size, (tau, key) in sorted(first_plane.items())]
    return rep.finish()


# ----------------------------------------------------------------------
# 稳定子群
# ----------------------------------------------------------------------
def group_closure_order(generators: Sequence[np.ndarray], cap: int) -> int:
    """置换生成的群的阶 (广度优先闭包)"""
    n = len(generators[0])
    identity = np.arange(n, dtype=np.int32)
    gens = [g.astype(np.int32) for g in generators]
    seen = {identity.tobytes()}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = s[g]
            key = h.tobytes()
            if key not in seen:
                if len(seen) >= cap:
                    raise ResourceCap(f"群的阶超过上限 {cap}", witness=cap)
                seen.add(key)
                queue.append(h)
    return len(seen)


def verify_stabilizer(model: QuadricModel, sets: Dict[str, 'object'], orbits: Optional[OrbitTable] = None,
                      cap: Optional[int] = None) -> CheckReport:
    q = model.q
    P = q * q + q + 1
    rep = CheckReport('stabilizer', q, error_class=StabilizerViolation)
    N = model.num_points
    masks = {label: ts.mask(N) for label, ts in sets.items()}
    perms = {tag: model.permutation(IsometryMap(tag)) for tag in ('c', 'z', 'e', 'o')}

    for tag, perm in perms.items():
        for label in ('T1', 'T2'):
            rep.expect(bool(np.all(masks[label][perm[sets[label].points]])), {'map': tag, 'set': label})
    omega2 = model.permutation(IsometryMap('scale', 2))
    omega1 = model.permutation(IsometryMap('scale', 1))
    rep.expect(bool(np.array_equal(np.sort(omega2[sets['T1'].points]), sets['T2'].points)), '(x,ω²y): T1 ↛ T2')
    rep.expect(bool(np.array_equal(np.sort(omega2[sets['T2'].points]), sets['T1'].points)), '(x,ω²y): T2 ↛ T1')
    rep.expect(bool(np.array_equal(np.sort(omega1[sets['T1prime'].points]), sets['T1'].points)), '(x,ωy): T1′ ↛ T1')
    rep.expect(bool(np.array_equal(np.sort(omega1[sets['T2prime'].points]), sets['T2'].points)), '(x,ωy): T2′ ↛ T2')
    rep.expect(bool(np.all(model.in_pi2[perms['o'][model.in_pi1]])), 'o does not swap π₁ and π₂')

    if orbits is not None:
        e = perms['e']
        image_orbit = orbits.orbit_of[e]
        for o in range(orbits.num_orbits):
            targets = np.unique(image_orbit[orbits.orbit_of == o])
            rep.expect(len(targets) == 1, {'e_splits_orbit': o})

    if q <= VERIFY_CONFIG['exhaustive_max_q']:
        order = group_closure_order(list(perms.values()), cap or VERIFY_CONFIG['group_order_cap'])
        expected = 3 * (q - 1) // 2 * P
        rep.expect(order == expected, {'order': order, 'expected': expected})
        rep.details['group_order'] = order
    else:
        rep.scope = 'maps exhaustive, group order skipped'
    return rep.finish()


# ----------------------------------------------------------------------
# 反例对照
# ----------------------------------------------------------------------
def run_negative_controls(model: QuadricModel, scene: Optional[Pg3Scene], x: int, size: int,
                          seed: Optional[int] = None, executor=None) -> CheckReport:
    """同样大小的随机点集 / 直线集必须被各个验证器拒绝"""
    q = model.q
    seed = VERIFY_CONFIG['seed'] if seed is None else seed
    rng = np.random.default_rng(seed)
    name = 'negative_controls[points+lines]' if scene is not None else 'negative_controls[points]'
    rep = CheckReport(name, q, scope=f'seed={seed}', error_class=VerificationFailed)
    points = np.sort(rng.choice(model.num_points, size, replace=False))
    profile = perp_profile(model, points, executor=executor)
    tight = verify_tight_set(model, points, x, label='random', profile=profile)
    eigen = verify_eigenvector_criteria(model, points, x, label='random', profile=profile)
    rep.expect(not tight.passed, 'random point set passed the tight-set check')
    rep.expect(not eigen[0].passed, 'random point set passed the eigenvector criterion')
    if scene is not None:
        lines = LineClass('random', q, x, np.sort(rng.choice(scene.num_lines, size, replace=False)))
        cl = verify_cameron_liebler(scene, lines, x, seed=seed, spread_samples=0)
        rep.expect(not cl[0].passed, 'random line set passed the line-count check')
    return rep.finish()
